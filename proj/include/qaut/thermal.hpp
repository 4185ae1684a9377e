#pragma once

#include <cstdint>

#include "qaut/lattice.hpp"

namespace qaut {

/// Ground-state probability of one spin at thermal equilibrium,
/// p = 1/(1 + e^{-x}) with x = (Zeeman splitting)/(kB T). Requires finite
/// x >= 0; overflow-safe for any magnitude.
double spin_ground_prob(double x);

/// ln p, computed as -log1p(e^{-x}) so large x stays exact.
double log_spin_ground_prob(double x);

/// Probability that all Q spins of one automaton start in |0>, p^Q with
/// independent identical spins, evaluated in log space.
double perfect_init_prob(const LatticeSpec& spec, double x);
double perfect_init_prob_q(double x, std::int64_t q);
double perfect_init_prob_from_p(double p, std::int64_t q);

/// Smallest x with perfect_init_prob_q(x, q) >= 1/2, solved by bisection
/// to 1e-12 in x.
double init_threshold_x(std::int64_t q);

/// Same threshold from the closed form: p* = 2^{-1/q}, x* = ln(p*/(1-p*)).
double init_threshold_x_closed_form(std::int64_t q);

struct EnsembleYield {
    double expected_count = 0;  // automata expected to be perfectly initialized
    double threshold_x = 0;     // x at which half the ensemble initializes
};

EnsembleYield ensemble_yield(std::int64_t num_automata, const LatticeSpec& spec, double x);

}  // namespace qaut
