#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qaut/compiler.hpp"
#include "qaut/isa.hpp"

namespace qaut {

/// Dense state over all physical spins. Bit 0 (least significant) is the
/// donor D; bit 1+site_index covers lattice sites in lexicographic (i,j,k)
/// order, so the home A site is bit 1.
struct StateVector {
    int num_bits = 0;
    std::vector<Complex> amps;

    static StateVector zero_state(int num_bits);
    double squared_norm() const;

    friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// Measurement sampling source: one 53-bit uniform draw per measurement,
/// in instruction order, from the standard-pinned mt19937_64 sequence so
/// records are reproducible across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

constexpr int kDonorBit = 0;
int site_bit(const LatticeSpec& spec, const Coord3& site);
int cell_bit(const LatticeSpec& spec, const Cell& cell);

/// Spin-count cap for dense simulation: QAUT_MAX_SPINS env override,
/// else 24.
int default_max_spins();

struct RunOptions {
    bool keep_state = true;
    int max_spins = default_max_spins();
    /// Called after each instruction has been applied.
    std::function<void(std::size_t instr_index, const StateVector& state)> after_instruction;
};

struct RunResult {
    std::optional<StateVector> final_state;
    std::vector<int> records;  // indexed by record_index
    std::uint64_t rng_seed = 0;
};

/// Apply one instruction's exact unitary (or projective measurement) in
/// place. Swap-type instructions move amplitudes without arithmetic.
/// MeasureD requires rng and records.
void apply_instruction(StateVector& state, const Instruction& instr, const LatticeSpec& spec,
                       Rng* rng = nullptr, std::vector<int>* records = nullptr);

/// Execute a program from the all-zero state (every spin relaxed to |0>).
RunResult run(const Program& program, std::uint64_t seed, const RunOptions& options = {});

struct OracleResult {
    StateVector state;              // bit q = logical qubit q
    std::vector<int> records;       // in measurement appearance order
};

/// Direct state-vector simulation of the logical circuit; the brute-force
/// referee for compiled programs. Shares nothing with the machine path
/// except the gate definitions, and consumes measurement draws with the
/// same discipline (one uniform per measurement, in op order).
OracleResult oracle_run(const CircuitIR& ir, std::uint64_t seed,
                        int max_qubits = default_max_spins());

/// Conduit-purity violation: some spin outside the occupied logical cells
/// carries probability mass.
class ConduitError : public InvariantError {
  public:
    ConduitError(const SiteId& site, double mass)
        : InvariantError("conduit purity violated at " + site.to_string() +
                         ": excitation mass " + std::to_string(mass)),
          site(site),
          mass(mass) {}

    SiteId site;
    double mass;
};

/// Bit mask of spins allowed to be excited between ops: the A sites of
/// occupied logical cells.
std::uint64_t logical_bits_mask(const Program& program);

/// Probability mass on configurations exciting any bit outside `allowed`.
double mass_outside_mask(const StateVector& state, std::uint64_t allowed);

/// Check conduit purity (mass outside the logical cells <= tol), then
/// reindex amplitudes onto the logical register (bit q = logical qubit q).
/// Throws ConduitError naming the worst offending spin.
StateVector extract_logical(const StateVector& state, const Program& program,
                            double tol = 1e-12);

/// |<a|b>|^2 — global-phase insensitive.
double fidelity(const StateVector& a, const StateVector& b);

struct VerifyReport {
    double min_fidelity = 1.0;
    std::vector<double> fidelities;           // one per trial
    int record_shots = 0;                     // 0 when the circuit has no measurements
    double record_match_fraction = 1.0;       // per-shot compiled == oracle records
    std::map<std::string, int> compiled_record_counts;
    std::map<std::string, int> oracle_record_counts;
};

/// Compile the circuit and compare against the oracle: fidelity of the
/// measurement-stripped circuit per trial, plus seeded record-distribution
/// comparison when measurements are present (per-shot seeds seed + shot).
VerifyReport verify(const CircuitIR& ir, const LatticeSpec& spec, const PlacementPolicy& policy,
                    int trials, std::uint64_t seed);

}  // namespace qaut
