#include "qaut/isa.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qaut {

namespace {

constexpr double kUnitaryTol = 1e-9;

Complex polar1(double angle) {
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace

Mat2 matrix_from_euler(const EulerAngles& e) {
    double c = std::cos(e.beta / 2);
    double s = std::sin(e.beta / 2);
    Complex g = polar1(e.phase);
    Mat2 u;
    u.m = {g * polar1(-(e.alpha + e.gamma) / 2) * c, g * polar1(-(e.alpha - e.gamma) / 2) * -s,
           g * polar1((e.alpha - e.gamma) / 2) * s, g * polar1((e.alpha + e.gamma) / 2) * c};
    return u;
}

EulerAngles euler_from_matrix(const Mat2& u) {
    if (!is_unitary(u, kUnitaryTol)) {
        throw std::invalid_argument("matrix is not unitary");
    }
    Complex det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
    EulerAngles e;
    e.phase = std::arg(det) / 2;
    Complex inv_g = polar1(-e.phase);
    Complex v00 = inv_g * u.at(0, 0);
    Complex v10 = inv_g * u.at(1, 0);
    double c = std::abs(v00);
    double s = std::abs(v10);
    e.beta = 2 * std::atan2(s, c);
    constexpr double tiny = 1e-12;
    if (s <= tiny) {
        // diagonal: only alpha + gamma matters
        e.gamma = 0;
        e.alpha = -2 * std::arg(v00);
    } else if (c <= tiny) {
        // anti-diagonal: only alpha - gamma matters
        e.gamma = 0;
        e.alpha = 2 * std::arg(v10);
    } else {
        e.alpha = std::arg(v10) - std::arg(v00);
        e.gamma = -std::arg(v10) - std::arg(v00);
    }
    return e;
}

std::string local_target_name(LocalTarget t) {
    return t == LocalTarget::A0 ? "A0" : "D";
}

LocalTarget local_target_from_name(const std::string& name) {
    if (name == "A0") return LocalTarget::A0;
    if (name == "D") return LocalTarget::D;
    throw std::invalid_argument("unknown local target '" + name + "'");
}

std::string cond_kind_name(CondKind k) {
    switch (k) {
        case CondKind::CnotDControlsA: return "cnot_d_controls_a";
        case CondKind::CnotAControlsD: return "cnot_a_controls_d";
        case CondKind::CZ: return "cz";
    }
    throw std::invalid_argument("bad cond kind");
}

CondKind cond_kind_from_name(const std::string& name) {
    if (name == "cnot_d_controls_a") return CondKind::CnotDControlsA;
    if (name == "cnot_a_controls_d") return CondKind::CnotAControlsD;
    if (name == "cz") return CondKind::CZ;
    throw std::invalid_argument("unknown cond kind '" + name + "'");
}

std::vector<Instruction> macro_shift(Axis axis, int direction, const LatticeSpec& spec) {
    spec.validate();
    if (!spec.axis_active(axis)) {
        throw std::invalid_argument(std::string("axis ") + axis_name(axis) +
                                    " is degenerate and cannot be shifted");
    }
    if (direction == 1) {
        return {GlobalSwapInstr{axis, SpeciesPair::AB}, GlobalSwapInstr{axis, SpeciesPair::BC},
                GlobalSwapInstr{axis, SpeciesPair::CA}};
    }
    if (direction == -1) {
        return {GlobalSwapInstr{axis, SpeciesPair::CA}, GlobalSwapInstr{axis, SpeciesPair::BC},
                GlobalSwapInstr{axis, SpeciesPair::AB}};
    }
    throw std::invalid_argument("shift direction must be +1 or -1");
}

int pulse_set_count(const LatticeSpec& spec) {
    return detuned_sites(spec).empty() ? 1 : 2;
}

int pulse_events(const Instruction& instr, const LatticeSpec& spec) {
    return pulse_events(instr, spec, pulse_set_count(spec));
}

int pulse_events(const Instruction& instr, const LatticeSpec& spec, int pulse_sets) {
    spec.validate();
    if (pulse_sets < 1) throw std::invalid_argument("pulse set count must be positive");
    struct Visitor {
        int sets;
        int operator()(const GlobalSwapInstr&) const { return 3 * sets; }
        int operator()(const Local1QInstr&) const { return 1; }
        int operator()(const CondDAInstr&) const { return 1; }
        int operator()(const SwapDAInstr&) const { return 3; }
        int operator()(const MeasureDInstr&) const { return 0; }
    };
    return std::visit(Visitor{pulse_sets}, instr);
}

std::vector<std::pair<Coord3, Coord3>> stage_pairs(const LatticeSpec& spec, Axis axis,
                                                   SpeciesPair pair) {
    spec.validate();
    if (!spec.axis_active(axis)) {
        throw std::invalid_argument(std::string("axis ") + axis_name(axis) +
                                    " is degenerate and has no swap stages");
    }
    auto first = static_cast<Species>(static_cast<int>(pair));
    int ai = static_cast<int>(axis);
    int len = spec.axis_length(axis);
    std::vector<std::pair<Coord3, Coord3>> pairs;
    for (std::int64_t idx = 0; idx < spec.site_count(); ++idx) {
        Coord3 p = site_at_index(spec, idx);
        if (species_at(p) != first) continue;
        Coord3 q = p;
        q[ai] = (p[ai] + 1) % len;
        pairs.emplace_back(p, q);
    }
    return pairs;
}

std::string PulseChannel::name() const {
    switch (kind) {
        case Kind::GlobalPair:
            return std::string("global.") + axis_name(axis) + "." + species_pair_name(pair) +
                   (pulse_set == PulseSet::Detuned ? ".detuned" : ".standard");
        case Kind::LocalA0: return "local.A0";
        case Kind::LocalD: return "local.D";
        case Kind::CondDA: return "cond_da";
        case Kind::MeasureD: return "measure_d";
    }
    throw std::invalid_argument("bad channel kind");
}

std::vector<std::pair<PulseChannel, int>> pulse_billing(const Instruction& instr,
                                                        const LatticeSpec& spec, int pulse_sets) {
    spec.validate();
    if (pulse_sets < 1) throw std::invalid_argument("pulse set count must be positive");
    if (const auto* g = std::get_if<GlobalSwapInstr>(&instr)) {
        std::vector<std::pair<PulseChannel, int>> billing{
            {PulseChannel::global(g->axis, g->pair, PulseSet::Standard), 3}};
        if (pulse_sets >= 2) {
            // every extra set re-drives the same 3 CNOTs at detuned frequencies
            billing.emplace_back(PulseChannel::global(g->axis, g->pair, PulseSet::Detuned),
                                 3 * (pulse_sets - 1));
        }
        return billing;
    }
    if (const auto* l = std::get_if<Local1QInstr>(&instr)) {
        return {{l->target == LocalTarget::A0 ? PulseChannel::local_a0() : PulseChannel::local_d(),
                 1}};
    }
    if (std::holds_alternative<CondDAInstr>(instr)) return {{PulseChannel::cond_da(), 1}};
    if (std::holds_alternative<SwapDAInstr>(instr)) return {{PulseChannel::cond_da(), 3}};
    return {};  // measurement bills no pulses
}

void validate_program(const Program& program) {
    program.spec.validate();

    std::set<Cell> used_cells;
    for (const auto& [qubit, cell] : program.qubit_map) {
        if (qubit < 0) throw ProgramError(ProgramError::npos, "negative logical qubit index");
        if (!is_valid_cell(program.spec, cell)) {
            throw ProgramError(ProgramError::npos,
                               "qubit " + std::to_string(qubit) + " mapped to out-of-range cell");
        }
        if (cell == Cell{0, 0, 0}) {
            throw ProgramError(ProgramError::npos, "qubit " + std::to_string(qubit) +
                                                       " mapped to the reserved home cell");
        }
        if (!used_cells.insert(cell).second) {
            throw ProgramError(ProgramError::npos, "qubit map is not injective");
        }
    }

    std::set<int> records;
    std::size_t index = 0;
    for (const auto& instr : program.instructions) {
        if (const auto* g = std::get_if<GlobalSwapInstr>(&instr)) {
            if (!program.spec.axis_active(g->axis)) {
                throw ProgramError(index, std::string("global swap on degenerate axis ") +
                                              axis_name(g->axis));
            }
        } else if (const auto* l = std::get_if<Local1QInstr>(&instr)) {
            const EulerAngles& e = l->rotation;
            if (!std::isfinite(e.alpha) || !std::isfinite(e.beta) || !std::isfinite(e.gamma) ||
                !std::isfinite(e.phase)) {
                throw ProgramError(index, "non-finite rotation angles");
            }
        } else if (const auto* m = std::get_if<MeasureDInstr>(&instr)) {
            if (m->record_index < 0 || m->record_index >= program.measurement_count) {
                throw ProgramError(index, "measurement record index " +
                                              std::to_string(m->record_index) + " out of range");
            }
            if (!records.insert(m->record_index).second) {
                throw ProgramError(index, "measurement record index " +
                                              std::to_string(m->record_index) + " reused");
            }
        }
        ++index;
    }
    if (static_cast<int>(records.size()) != program.measurement_count) {
        throw ProgramError(ProgramError::npos,
                           "measurement_count does not match the measure instructions present");
    }
}

CostReport cost(const Program& program) {
    validate_program(program);
    int sets = pulse_set_count(program.spec);

    CostReport report;
    std::int64_t global_swaps = 0;
    for (const auto& instr : program.instructions) {
        report.pulse_events_total += pulse_events(instr, program.spec, sets);
        for (const auto& [channel, pulses] : pulse_billing(instr, program.spec, sets)) {
            report.per_channel[channel.name()] += pulses;
        }
        if (std::holds_alternative<GlobalSwapInstr>(instr)) {
            ++global_swaps;
            report.cnot_equivalents += 3;
        } else if (std::holds_alternative<CondDAInstr>(instr)) {
            report.cnot_equivalents += 1;
        } else if (std::holds_alternative<SwapDAInstr>(instr)) {
            report.cnot_equivalents += 3;
        } else if (std::holds_alternative<MeasureDInstr>(instr)) {
            ++report.measurement_events;
        }
    }
    report.macro_shift_count = global_swaps / 3;
    return report;
}

}  // namespace qaut
