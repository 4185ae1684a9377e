#include "qaut/compiler.hpp"

#include <cstdlib>
#include <set>

namespace qaut {

namespace {

/// Builds an instruction stream while tracking the frame the shifts induce.
class Emitter {
  public:
    explicit Emitter(const LatticeSpec& spec) : spec_(spec) {}

    std::vector<Instruction>&& take() { return std::move(out_); }
    void reset_frame() { frame_ = Frame{}; }

    void append(Instruction instr) { out_.push_back(std::move(instr)); }

    /// Shift until the content of `cell` sits at the home cell; returns the
    /// displacement that was cancelled.
    std::array<int, 3> route_to_home(const Cell& cell) {
        auto steps = route_steps(cell, frame_, spec_);
        cancel_steps(steps);
        return steps;
    }

    /// Restore the identity frame in one combined route.
    void route_frame_to_identity() { route_to_home(Cell{0, 0, 0}); }

    /// Emit shifts whose net frame change is -steps, axis order x,y,z.
    void cancel_steps(const std::array<int, 3>& steps) {
        for (Axis a : kAxes) {
            int s = steps[static_cast<int>(a)];
            emit_shifts(a, s > 0 ? -1 : 1, std::abs(s));
        }
    }

    /// Exact instruction-level reversal of cancel_steps(steps).
    void emit_inverse(const std::array<int, 3>& steps) {
        for (int i = 2; i >= 0; --i) {
            int s = steps[i];
            emit_shifts(static_cast<Axis>(i), s > 0 ? 1 : -1, std::abs(s));
        }
    }

  private:
    void emit_shifts(Axis axis, int direction, int count) {
        for (int k = 0; k < count; ++k) {
            for (auto& instr : macro_shift(axis, direction, spec_)) {
                out_.push_back(instr);
            }
            frame_ = shift_frame(frame_, axis, direction, spec_);
        }
    }

    const LatticeSpec& spec_;
    std::vector<Instruction> out_;
    Frame frame_;
};

CondKind cond_kind_for(Gate2Q gate, bool control_is_x) {
    if (gate == Gate2Q::CZ) return CondKind::CZ;
    return control_is_x ? CondKind::CnotDControlsA : CondKind::CnotAControlsD;
}

void check_cell(const LatticeSpec& spec, const Cell& cell) {
    if (!is_valid_cell(spec, cell)) throw InputError("cell out of range for this lattice");
    if (cell == Cell{0, 0, 0}) throw InputError("the home cell stores no logical qubit");
}

}  // namespace

std::map<int, Cell> default_placement(const LatticeSpec& spec, int num_qubits) {
    spec.validate();
    if (num_qubits > spec.logical_capacity()) {
        throw InputError("capacity exceeded: circuit needs " + std::to_string(num_qubits) +
                         " qubits but the lattice provides " +
                         std::to_string(spec.logical_capacity()));
    }
    std::map<int, Cell> map;
    int next = 0;
    for (const Cell& cell : all_cells(spec)) {
        if (cell == Cell{0, 0, 0}) continue;  // home cell reserved
        if (next >= num_qubits) break;
        map[next++] = cell;
    }
    return map;
}

std::vector<Instruction> lower_1q(const LatticeSpec& spec, const EulerAngles& rotation,
                                  const Cell& cell, bool elide_trivial) {
    check_cell(spec, cell);
    Emitter e(spec);
    auto steps = e.route_to_home(cell);
    if (!(elide_trivial && rotation.is_zero())) {
        e.append(Local1QInstr{LocalTarget::A0, rotation});
    }
    e.emit_inverse(steps);
    return e.take();
}

std::vector<Instruction> lower_2q(const LatticeSpec& spec, Gate2Q gate, const Cell& x_cell,
                                  const Cell& y_cell, bool control_is_x) {
    check_cell(spec, x_cell);
    check_cell(spec, y_cell);
    if (x_cell == y_cell) throw InputError("two-qubit gate operands share a cell");

    Emitter e(spec);
    e.route_to_home(x_cell);              // (a) X to the home site
    e.append(SwapDAInstr{});              // (b) park X in D; A0 takes D's zero
    e.route_to_home(y_cell);              // (c) Y home, relative to the shifted frame
    e.append(CondDAInstr{cond_kind_for(gate, control_is_x)});  // (d)
    e.route_frame_to_identity();          // (e) everything back except X <-> D
    auto sx = e.route_to_home(x_cell);    // (f) X's (empty) cell back to home
    e.append(SwapDAInstr{});              // (g) retrieve X from D
    e.emit_inverse(sx);                   // (h)
    return e.take();
}

std::vector<Instruction> lower_measure(const LatticeSpec& spec, const Cell& cell,
                                       int record_index) {
    check_cell(spec, cell);
    Emitter e(spec);
    auto steps = e.route_to_home(cell);
    e.append(SwapDAInstr{});
    e.append(MeasureDInstr{record_index});
    e.append(SwapDAInstr{});  // return the collapsed state to A0, D back to zero
    e.emit_inverse(steps);
    return e.take();
}

std::vector<Instruction> lower_load(const LatticeSpec& spec, const EulerAngles& prep,
                                    const Cell& cell) {
    check_cell(spec, cell);
    Emitter e(spec);
    e.append(Local1QInstr{LocalTarget::D, prep});
    e.append(SwapDAInstr{});  // D returns to zero because A0 held zero
    // Ship the state from home out to the target cell: the inverse of the
    // route that would bring the cell home. Only zeros are displaced, so
    // the exit frame is the identity by relabeling.
    e.emit_inverse(route_steps(cell, Frame{}, spec));
    e.reset_frame();
    return e.take();
}

std::pair<std::vector<Instruction>, std::vector<Diagnostic>> lower_load_sequence(
    const LatticeSpec& spec, const std::vector<LoadRequest>& loads) {
    std::vector<Instruction> out;
    std::vector<Diagnostic> warnings;
    std::set<Cell> loaded;
    for (const auto& load : loads) {
        if (!loaded.insert(load.cell).second) {
            warnings.push_back(
                {0, "cell (" + std::to_string(load.cell[0]) + "," + std::to_string(load.cell[1]) +
                        "," + std::to_string(load.cell[2]) +
                        ") loaded twice; the earlier state is overwritten"});
        }
        auto instrs = lower_load(spec, load.prep, load.cell);
        out.insert(out.end(), instrs.begin(), instrs.end());
    }
    return {std::move(out), std::move(warnings)};
}

CompileResult compile(const CircuitIR& ir, const LatticeSpec& spec, const PlacementPolicy& policy,
                      bool elide_trivial) {
    ir.validate();
    spec.validate();

    std::map<int, Cell> qubit_map;
    if (policy.explicit_map) {
        qubit_map = *policy.explicit_map;
        for (int q = 0; q < ir.num_qubits; ++q) {
            auto it = qubit_map.find(q);
            if (it == qubit_map.end()) {
                throw InputError("placement map does not cover qubit " + std::to_string(q));
            }
            check_cell(spec, it->second);
        }
        std::set<Cell> cells;
        for (const auto& [q, cell] : qubit_map) {
            if (!cells.insert(cell).second) throw InputError("placement map is not injective");
        }
        if (static_cast<std::int64_t>(qubit_map.size()) > spec.logical_capacity()) {
            throw InputError("placement map exceeds lattice capacity");
        }
    } else {
        qubit_map = default_placement(spec, ir.num_qubits);
    }

    CompileResult result;
    result.program.spec = spec;
    result.program.qubit_map = qubit_map;

    auto& instrs = result.program.instructions;
    int next_record = 0;
    for (const auto& op : ir.ops) {
        OpSpan span;
        span.first = instrs.size();
        std::vector<Instruction> lowered;
        if (const auto* g1 = std::get_if<OneQOp>(&op)) {
            EulerAngles rot = euler_from_matrix(gate_matrix(*g1));
            lowered = lower_1q(spec, rot, qubit_map.at(g1->target), elide_trivial);
            span.label = gate1q_name(g1->gate) + " q" + std::to_string(g1->target);
        } else if (const auto* g2 = std::get_if<TwoQOp>(&op)) {
            lowered = lower_2q(spec, g2->gate, qubit_map.at(g2->control), qubit_map.at(g2->target),
                               /*control_is_x=*/true);
            span.label = gate2q_name(g2->gate) + " q" + std::to_string(g2->control) + " q" +
                         std::to_string(g2->target);
        } else {
            const auto& m = std::get<MeasureOp>(op);
            lowered = lower_measure(spec, qubit_map.at(m.target), next_record);
            span.label = "measure q" + std::to_string(m.target) + " -> r" +
                         std::to_string(next_record);
            ++next_record;
        }
        instrs.insert(instrs.end(), lowered.begin(), lowered.end());
        span.count = instrs.size() - span.first;
        result.spans.push_back(std::move(span));
    }
    result.program.measurement_count = next_record;
    validate_program(result.program);
    return result;
}

}  // namespace qaut
