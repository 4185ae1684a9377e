#include "qaut/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace qaut {

namespace {

void apply_bit_pair_swaps(StateVector& state, const std::vector<std::pair<int, int>>& bit_pairs) {
    const std::uint64_t n = state.amps.size();
    for (std::uint64_t b = 0; b < n; ++b) {
        std::uint64_t b2 = b;
        for (auto [i, j] : bit_pairs) {
            std::uint64_t x = ((b2 >> i) ^ (b2 >> j)) & 1u;
            b2 ^= (x << i) | (x << j);
        }
        if (b2 > b) std::swap(state.amps[b], state.amps[b2]);
    }
}

void apply_unitary_1q(StateVector& state, int bit, const Mat2& u) {
    const std::uint64_t stride = 1ull << bit;
    const std::uint64_t n = state.amps.size();
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
        for (std::uint64_t off = 0; off < stride; ++off) {
            const std::uint64_t i0 = base + off;
            const std::uint64_t i1 = i0 + stride;
            const Complex a0 = state.amps[i0];
            const Complex a1 = state.amps[i1];
            state.amps[i0] = u.at(0, 0) * a0 + u.at(0, 1) * a1;
            state.amps[i1] = u.at(1, 0) * a0 + u.at(1, 1) * a1;
        }
    }
}

void apply_cnot_bits(StateVector& state, int control, int target) {
    const std::uint64_t n = state.amps.size();
    const std::uint64_t cmask = 1ull << control;
    const std::uint64_t tmask = 1ull << target;
    for (std::uint64_t b = 0; b < n; ++b) {
        if ((b & cmask) && !(b & tmask)) {
            std::swap(state.amps[b], state.amps[b | tmask]);
        }
    }
}

void apply_cz_bits(StateVector& state, int bit_a, int bit_b) {
    const std::uint64_t mask = (1ull << bit_a) | (1ull << bit_b);
    const std::uint64_t n = state.amps.size();
    for (std::uint64_t b = 0; b < n; ++b) {
        if ((b & mask) == mask) state.amps[b] = -state.amps[b];
    }
}

/// One uniform draw decides the outcome; the state is projected and
/// renormalized in place.
int measure_bit(StateVector& state, int bit, Rng& rng) {
    const std::uint64_t mask = 1ull << bit;
    const std::uint64_t n = state.amps.size();
    double p1 = 0;
    for (std::uint64_t b = 0; b < n; ++b) {
        if (b & mask) p1 += std::norm(state.amps[b]);
    }
    const double u = rng.uniform();
    const int outcome = u < p1 ? 1 : 0;
    const double keep_prob = outcome ? p1 : 1 - p1;
    const double scale = 1.0 / std::sqrt(keep_prob);
    for (std::uint64_t b = 0; b < n; ++b) {
        if (((b & mask) != 0) == (outcome != 0)) {
            state.amps[b] *= scale;
        } else {
            state.amps[b] = 0;
        }
    }
    return outcome;
}

}  // namespace

StateVector StateVector::zero_state(int num_bits) {
    StateVector st;
    st.num_bits = num_bits;
    st.amps.assign(1ull << num_bits, Complex(0, 0));
    st.amps[0] = Complex(1, 0);
    return st;
}

double StateVector::squared_norm() const {
    double total = 0;
    for (const Complex& a : amps) total += std::norm(a);
    return total;
}

int site_bit(const LatticeSpec& spec, const Coord3& site) {
    return 1 + static_cast<int>(site_index(spec, site));
}

int cell_bit(const LatticeSpec& spec, const Cell& cell) {
    return site_bit(spec, cell_site(cell));
}

int default_max_spins() {
    if (const char* env = std::getenv("QAUT_MAX_SPINS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 62) return static_cast<int>(v);
    }
    return 24;
}

void apply_instruction(StateVector& state, const Instruction& instr, const LatticeSpec& spec,
                       Rng* rng, std::vector<int>* records) {
    const int home_bit = 1;  // site (0,0,0)
    if (const auto* g = std::get_if<GlobalSwapInstr>(&instr)) {
        std::vector<std::pair<int, int>> bit_pairs;
        for (const auto& [p, q] : stage_pairs(spec, g->axis, g->pair)) {
            bit_pairs.emplace_back(site_bit(spec, p), site_bit(spec, q));
        }
        apply_bit_pair_swaps(state, bit_pairs);
    } else if (const auto* l = std::get_if<Local1QInstr>(&instr)) {
        int bit = l->target == LocalTarget::D ? kDonorBit : home_bit;
        apply_unitary_1q(state, bit, matrix_from_euler(l->rotation));
    } else if (const auto* c = std::get_if<CondDAInstr>(&instr)) {
        switch (c->kind) {
            case CondKind::CnotDControlsA: apply_cnot_bits(state, kDonorBit, home_bit); break;
            case CondKind::CnotAControlsD: apply_cnot_bits(state, home_bit, kDonorBit); break;
            case CondKind::CZ: apply_cz_bits(state, kDonorBit, home_bit); break;
        }
    } else if (std::holds_alternative<SwapDAInstr>(instr)) {
        apply_bit_pair_swaps(state, {{kDonorBit, home_bit}});
    } else {
        const auto& m = std::get<MeasureDInstr>(instr);
        if (!rng || !records) {
            throw InvariantError("measurement requires a sampling source");
        }
        int outcome = measure_bit(state, kDonorBit, *rng);
        (*records)[static_cast<std::size_t>(m.record_index)] = outcome;
    }
}

RunResult run(const Program& program, std::uint64_t seed, const RunOptions& options) {
    validate_program(program);
    const std::int64_t q = program.spec.total_spins();
    if (q > options.max_spins) {
        throw SizeError("program needs " + std::to_string(q) + " spins; cap is " +
                        std::to_string(options.max_spins) + " (set QAUT_MAX_SPINS to raise it)");
    }

    StateVector state = StateVector::zero_state(static_cast<int>(q));
    Rng rng(seed);
    RunResult result;
    result.rng_seed = seed;
    result.records.assign(static_cast<std::size_t>(program.measurement_count), 0);

    for (std::size_t i = 0; i < program.instructions.size(); ++i) {
        apply_instruction(state, program.instructions[i], program.spec, &rng, &result.records);
        if (options.after_instruction) options.after_instruction(i, state);
    }
    if (options.keep_state) result.final_state = std::move(state);
    return result;
}

OracleResult oracle_run(const CircuitIR& ir, std::uint64_t seed, int max_qubits) {
    ir.validate();
    if (ir.num_qubits > max_qubits) {
        throw SizeError("circuit needs " + std::to_string(ir.num_qubits) + " qubits; cap is " +
                        std::to_string(max_qubits));
    }

    OracleResult result;
    result.state = StateVector::zero_state(ir.num_qubits);
    Rng rng(seed);

    for (const auto& op : ir.ops) {
        if (const auto* g1 = std::get_if<OneQOp>(&op)) {
            apply_unitary_1q(result.state, g1->target, gate_matrix(*g1));
        } else if (const auto* g2 = std::get_if<TwoQOp>(&op)) {
            if (g2->gate == Gate2Q::CNOT) {
                apply_cnot_bits(result.state, g2->control, g2->target);
            } else {
                apply_cz_bits(result.state, g2->control, g2->target);
            }
        } else {
            int outcome = measure_bit(result.state, std::get<MeasureOp>(op).target, rng);
            result.records.push_back(outcome);
        }
    }
    return result;
}

std::uint64_t logical_bits_mask(const Program& program) {
    std::uint64_t mask = 0;
    for (const auto& [qubit, cell] : program.qubit_map) {
        mask |= 1ull << cell_bit(program.spec, cell);
    }
    return mask;
}

double mass_outside_mask(const StateVector& state, std::uint64_t allowed) {
    double mass = 0;
    for (std::uint64_t b = 0; b < state.amps.size(); ++b) {
        if (b & ~allowed) mass += std::norm(state.amps[b]);
    }
    return mass;
}

StateVector extract_logical(const StateVector& state, const Program& program, double tol) {
    validate_program(program);
    if (state.num_bits != program.spec.total_spins()) {
        throw std::invalid_argument("state dimension does not match the program's lattice");
    }
    const std::uint64_t allowed = logical_bits_mask(program);
    const double outside = mass_outside_mask(state, allowed);
    if (outside > tol) {
        // find the worst offending spin for the diagnostic
        int worst_bit = kDonorBit;
        double worst_mass = -1;
        for (int bit = 0; bit < state.num_bits; ++bit) {
            if (allowed & (1ull << bit)) continue;
            double m = 0;
            const std::uint64_t mask = 1ull << bit;
            for (std::uint64_t b = 0; b < state.amps.size(); ++b) {
                if (b & mask) m += std::norm(state.amps[b]);
            }
            if (m > worst_mass) {
                worst_mass = m;
                worst_bit = bit;
            }
        }
        SiteId site = worst_bit == kDonorBit
                          ? SiteId::donor()
                          : SiteId::at(site_at_index(program.spec, worst_bit - 1));
        throw ConduitError(site, worst_mass);
    }

    const int nq = static_cast<int>(program.qubit_map.size());
    std::vector<int> bits(static_cast<std::size_t>(nq));
    for (const auto& [qubit, cell] : program.qubit_map) {
        if (qubit >= nq) throw InvariantError("qubit map indices are not contiguous");
        bits[static_cast<std::size_t>(qubit)] = cell_bit(program.spec, cell);
    }

    StateVector logical;
    logical.num_bits = nq;
    logical.amps.assign(1ull << nq, Complex(0, 0));
    for (std::uint64_t l = 0; l < logical.amps.size(); ++l) {
        std::uint64_t phys = 0;
        for (int qb = 0; qb < nq; ++qb) {
            if (l & (1ull << qb)) phys |= 1ull << bits[static_cast<std::size_t>(qb)];
        }
        logical.amps[l] = state.amps[phys];
    }
    return logical;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_bits != b.num_bits || a.amps.size() != b.amps.size()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Complex overlap(0, 0);
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        overlap += std::conj(a.amps[i]) * b.amps[i];
    }
    return std::norm(overlap);
}

namespace {

std::string record_key(const std::vector<int>& records) {
    std::string key;
    key.reserve(records.size());
    for (int r : records) key += static_cast<char>('0' + r);
    return key;
}

}  // namespace

VerifyReport verify(const CircuitIR& ir, const LatticeSpec& spec, const PlacementPolicy& policy,
                    int trials, std::uint64_t seed) {
    if (trials < 1) trials = 1;

    CircuitIR stripped = ir;
    stripped.ops.erase(std::remove_if(stripped.ops.begin(), stripped.ops.end(),
                                      [](const CircuitOp& op) {
                                          return std::holds_alternative<MeasureOp>(op);
                                      }),
                       stripped.ops.end());

    VerifyReport report;
    auto compiled = compile(stripped, spec, policy);
    auto oracle = oracle_run(stripped, seed);
    for (int t = 0; t < trials; ++t) {
        auto rr = run(compiled.program, seed + static_cast<std::uint64_t>(t));
        auto logical = extract_logical(*rr.final_state, compiled.program);
        double f = fidelity(logical, oracle.state);
        report.fidelities.push_back(f);
        report.min_fidelity = std::min(report.min_fidelity, f);
    }

    if (ir.measurement_count() > 0) {
        auto compiled_full = compile(ir, spec, policy);
        RunOptions opts;
        opts.keep_state = false;
        int matches = 0;
        for (int s = 0; s < trials; ++s) {
            std::uint64_t shot_seed = seed + static_cast<std::uint64_t>(s);
            auto rec_c = run(compiled_full.program, shot_seed, opts).records;
            auto rec_o = oracle_run(ir, shot_seed).records;
            if (rec_c == rec_o) ++matches;
            ++report.compiled_record_counts[record_key(rec_c)];
            ++report.oracle_record_counts[record_key(rec_o)];
        }
        report.record_shots = trials;
        report.record_match_fraction = static_cast<double>(matches) / trials;
    }
    return report;
}

}  // namespace qaut
