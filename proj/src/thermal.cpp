#include "qaut/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace qaut {

namespace {

void check_x(double x) {
    if (!std::isfinite(x) || x < 0) {
        throw std::invalid_argument("splitting ratio x must be finite and non-negative");
    }
}

}  // namespace

double spin_ground_prob(double x) {
    check_x(x);
    return 1.0 / (1.0 + std::exp(-x));
}

double log_spin_ground_prob(double x) {
    check_x(x);
    return -std::log1p(std::exp(-x));
}

double perfect_init_prob_q(double x, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("spin count must be positive");
    return std::exp(static_cast<double>(q) * log_spin_ground_prob(x));
}

double perfect_init_prob_from_p(double p, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("spin count must be positive");
    if (!(p > 0) || p > 1) throw std::invalid_argument("probability must lie in (0, 1]");
    return std::exp(static_cast<double>(q) * std::log(p));
}

double perfect_init_prob(const LatticeSpec& spec, double x) {
    return perfect_init_prob_q(x, total_spins(spec));
}

double init_threshold_x(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("spin count must be positive");
    if (perfect_init_prob_q(0.0, q) >= 0.5) return 0.0;  // q == 1
    double lo = 0.0;
    double hi = 1.0;
    while (perfect_init_prob_q(hi, q) < 0.5) hi *= 2;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (perfect_init_prob_q(mid, q) < 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double init_threshold_x_closed_form(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("spin count must be positive");
    // p* = 2^{-1/q}; x* = ln(p*) - ln(1 - p*) with 1 - p* via expm1 so
    // large q loses no precision.
    const double log_p = -std::log(2.0) / static_cast<double>(q);
    const double one_minus_p = -std::expm1(log_p);
    return log_p - std::log(one_minus_p);
}

EnsembleYield ensemble_yield(std::int64_t num_automata, const LatticeSpec& spec, double x) {
    if (num_automata < 1) throw std::invalid_argument("ensemble needs at least one automaton");
    EnsembleYield yield;
    yield.expected_count = static_cast<double>(num_automata) * perfect_init_prob(spec, x);
    yield.threshold_x = init_threshold_x(total_spins(spec));
    return yield;
}

}  // namespace qaut
