#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaut/circuit.hpp"
#include "qaut/isa.hpp"
#include "qaut/lattice.hpp"

namespace qaut {

/// Qubit placement: row-major over non-home cells in lexicographic order
/// by default, or an explicit map (must be injective and avoid the home
/// cell).
struct PlacementPolicy {
    std::optional<std::map<int, Cell>> explicit_map;
};

std::map<int, Cell> default_placement(const LatticeSpec& spec, int num_qubits);

/// Instruction range one circuit op lowered to.
struct OpSpan {
    std::size_t first = 0;
    std::size_t count = 0;
    std::string label;
};

struct CompileResult {
    Program program;
    std::vector<OpSpan> spans;       // one per circuit op, in order
    std::vector<Diagnostic> warnings;
};

/// Lower a logical circuit to the pulse-level instruction set. Every op is
/// lowered by shift-routing its operand(s) to the home site, operating at
/// A0/D, and restoring all positions; the frame is the identity and D is
/// in state zero at every op boundary. Deterministic: identical inputs
/// produce identical programs.
///
/// Throws InputError on capacity or placement violations.
CompileResult compile(const CircuitIR& ir, const LatticeSpec& spec,
                      const PlacementPolicy& policy = {}, bool elide_trivial = false);

/// Standalone lowerings, each entering and leaving the identity frame.

/// Route the qubit home, pulse at A0, route back.
std::vector<Instruction> lower_1q(const LatticeSpec& spec, const EulerAngles& rotation,
                                  const Cell& cell, bool elide_trivial = false);

/// Route X home, park it in D, route Y home, run the conditional gate
/// between D and A0, restore all positions, then swap X back out of D.
/// control_is_x selects the CNOT orientation so that the gate's control
/// is whichever operand resides in D (X) or at A0 (Y); CZ ignores it.
std::vector<Instruction> lower_2q(const LatticeSpec& spec, Gate2Q gate, const Cell& x_cell,
                                  const Cell& y_cell, bool control_is_x);

/// Route the qubit home, swap into D, measure D, swap the collapsed state
/// back, route back.
std::vector<Instruction> lower_measure(const LatticeSpec& spec, const Cell& cell,
                                       int record_index);

/// Prepare D, swap the state into A0, then shift it out to the target
/// cell. Assumes every other cell holds state zero (loads go through the
/// home conduit); the exit frame is the identity by relabeling.
std::vector<Instruction> lower_load(const LatticeSpec& spec, const EulerAngles& prep,
                                    const Cell& cell);

struct LoadRequest {
    Cell cell{0, 0, 0};
    EulerAngles prep;
};

/// Lower a sequence of loads, warning (not failing) when a cell is loaded
/// twice: the second load's precondition is violated but the stream still
/// runs.
std::pair<std::vector<Instruction>, std::vector<Diagnostic>> lower_load_sequence(
    const LatticeSpec& spec, const std::vector<LoadRequest>& loads);

}  // namespace qaut
