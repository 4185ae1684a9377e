#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qaut/lattice.hpp"
#include "qaut/mat2.hpp"

namespace qaut {

/// Z-Y-Z rotation angles plus a global phase:
///   U = e^{i phase} * Rz(alpha) * Ry(beta) * Rz(gamma)
/// with Rz(t) = diag(e^{-it/2}, e^{it/2}). Any 2x2 unitary fits this form.
struct EulerAngles {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double phase = 0;

    bool is_zero() const { return alpha == 0 && beta == 0 && gamma == 0 && phase == 0; }
    friend bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

Mat2 matrix_from_euler(const EulerAngles& e);
EulerAngles euler_from_matrix(const Mat2& u);  // throws if u is not unitary

enum class LocalTarget { A0, D };
enum class CondKind { CnotDControlsA, CnotAControlsD, CZ };
enum class PulseSet { Standard, Detuned };

/// Resonant frequency channel a pulse is delivered on. Each axis/species
/// pair owns a distinct global channel per pulse set (the near-donor
/// region needs its own detuned set); the home A site, the donor, and the
/// donor-A0 conditional interaction have dedicated local channels.
struct PulseChannel {
    enum class Kind { GlobalPair, LocalA0, LocalD, CondDA, MeasureD };

    Kind kind = Kind::CondDA;
    Axis axis = Axis::X;                      // GlobalPair only
    SpeciesPair pair = SpeciesPair::AB;       // GlobalPair only
    PulseSet pulse_set = PulseSet::Standard;  // GlobalPair only

    static PulseChannel global(Axis a, SpeciesPair p, PulseSet s) {
        return {Kind::GlobalPair, a, p, s};
    }
    static PulseChannel local_a0() { return {Kind::LocalA0, Axis::X, SpeciesPair::AB, PulseSet::Standard}; }
    static PulseChannel local_d() { return {Kind::LocalD, Axis::X, SpeciesPair::AB, PulseSet::Standard}; }
    static PulseChannel cond_da() { return {Kind::CondDA, Axis::X, SpeciesPair::AB, PulseSet::Standard}; }
    static PulseChannel measure_d() { return {Kind::MeasureD, Axis::X, SpeciesPair::AB, PulseSet::Standard}; }

    std::string name() const;
    friend bool operator==(const PulseChannel&, const PulseChannel&) = default;
};

std::string local_target_name(LocalTarget t);
LocalTarget local_target_from_name(const std::string& name);
std::string cond_kind_name(CondKind k);
CondKind cond_kind_from_name(const std::string& name);

/// One simultaneous swap of every adjacent (S, S+1) species pair along an
/// axis, driven by one resonant frequency channel.
struct GlobalSwapInstr {
    Axis axis;
    SpeciesPair pair;
    friend bool operator==(const GlobalSwapInstr&, const GlobalSwapInstr&) = default;
};

/// Single-qubit rotation pulse at the home A site or at the donor.
struct Local1QInstr {
    LocalTarget target;
    EulerAngles rotation;
    friend bool operator==(const Local1QInstr&, const Local1QInstr&) = default;
};

/// Conditional gate between the donor and the home A site.
struct CondDAInstr {
    CondKind kind;
    friend bool operator==(const CondDAInstr&, const CondDAInstr&) = default;
};

/// State exchange between the donor and the home A site.
struct SwapDAInstr {
    friend bool operator==(const SwapDAInstr&, const SwapDAInstr&) = default;
};

/// Projective readout of the donor spin.
struct MeasureDInstr {
    int record_index = 0;
    friend bool operator==(const MeasureDInstr&, const MeasureDInstr&) = default;
};

using Instruction =
    std::variant<GlobalSwapInstr, Local1QInstr, CondDAInstr, SwapDAInstr, MeasureDInstr>;

/// Pulse-level program bound to a lattice. qubit_map places each logical
/// qubit in a storage cell; the home cell is reserved for staging.
struct Program {
    LatticeSpec spec;
    std::vector<Instruction> instructions;
    std::map<int, Cell> qubit_map;
    int measurement_count = 0;

    friend bool operator==(const Program&, const Program&) = default;
};

/// Throws ProgramError (with the offending instruction index) when the
/// program violates a stream invariant.
void validate_program(const Program& program);

/// The three swap stages that translate every cell content by one cell
/// along the axis: +1 emits AB,BC,CA; -1 emits the exact inverse CA,BC,AB.
std::vector<Instruction> macro_shift(Axis axis, int direction, const LatticeSpec& spec);

/// Number of pulse sets needed to drive a global stage: 2 when the donor
/// detunes any site (a standard set plus a near-donor set), else 1.
int pulse_set_count(const LatticeSpec& spec);

/// Pulse events billed for one instruction. Each swap costs 3 CNOT pulses;
/// global stages are multiplied by the pulse-set count; local pulses cost
/// 1; measurement is billed as an event, not a pulse.
int pulse_events(const Instruction& instr, const LatticeSpec& spec);
int pulse_events(const Instruction& instr, const LatticeSpec& spec, int pulse_sets);

/// Channels an instruction's pulses are billed to, with the pulse count on
/// each: a global stage bills 3 CNOT pulses per required pulse set; local
/// pulses bill 1; the donor-A0 swap bills its 3 CNOTs on the conditional
/// channel; measurement bills no pulses.
std::vector<std::pair<PulseChannel, int>> pulse_billing(const Instruction& instr,
                                                        const LatticeSpec& spec, int pulse_sets);

/// Site pairs swapped by one GlobalSwap stage: {p, p+e_axis} for every
/// site p of the pair's first species, wrapping cyclically. The pairs
/// partition all sites of the two species.
std::vector<std::pair<Coord3, Coord3>> stage_pairs(const LatticeSpec& spec, Axis axis,
                                                   SpeciesPair pair);

struct CostReport {
    std::int64_t pulse_events_total = 0;
    std::map<std::string, std::int64_t> per_channel;  // pulse counts by channel name
    std::int64_t macro_shift_count = 0;               // GlobalSwap count / 3
    std::int64_t cnot_equivalents = 0;                // CNOT-level ops, pulse-set duplication ignored
    std::int64_t measurement_events = 0;

    friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Validates the program and sums per-instruction pulse events. Per-channel
/// counts are keyed by PulseChannel::name().
CostReport cost(const Program& program);

}  // namespace qaut
