#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qaut/errors.hpp"
#include "qaut/mat2.hpp"

namespace qaut {

enum class Gate1Q { H, X, Y, Z, S, T, RX, RY, RZ, U3 };
enum class Gate2Q { CNOT, CZ };

/// Number of angle parameters a one-qubit gate carries (0, 1 or 3).
int gate1q_param_count(Gate1Q gate);
std::string gate1q_name(Gate1Q gate);
std::string gate2q_name(Gate2Q gate);

struct OneQOp {
    Gate1Q gate;
    int target = 0;
    std::vector<double> params;  // radians, size == gate1q_param_count(gate)

    friend bool operator==(const OneQOp&, const OneQOp&) = default;
};

struct TwoQOp {
    Gate2Q gate;
    int control = 0;
    int target = 0;

    friend bool operator==(const TwoQOp&, const TwoQOp&) = default;
};

struct MeasureOp {
    int target = 0;

    friend bool operator==(const MeasureOp&, const MeasureOp&) = default;
};

using CircuitOp = std::variant<OneQOp, TwoQOp, MeasureOp>;

/// Logical circuit: gates and measurements on logical qubit indices.
struct CircuitIR {
    int num_qubits = 1;
    std::vector<CircuitOp> ops;

    int measurement_count() const;
    void validate() const;  // throws InputError listing every violation

    friend bool operator==(const CircuitIR&, const CircuitIR&) = default;
};

struct ParseResult {
    std::optional<CircuitIR> ir;  // set iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return ir.has_value(); }
};

/// Parse the line-based circuit text format:
///
///   qubits N          header, required first significant line
///   h 0               fixed gates: h x y z s t  (one qubit index)
///   rx 0 1.5707       rx/ry/rz: qubit index then one angle in radians
///   u3 0 a b c        u3: qubit index then three angles
///   cnot 0 1          cnot/cz: control then target
///   measure 0
///
/// '#' starts a comment; blank lines are skipped; CRLF is accepted.
/// All diagnostics are collected in one pass rather than failing fast.
ParseResult parse_qct(std::string_view text);

/// Canonical text form: LF line endings, no comments, angles rendered with
/// 17 significant digits so parse(emit(ir)) reproduces ir bit for bit.
std::string emit_qct(const CircuitIR& ir);

/// Unitary matrix of a one-qubit gate (textbook definitions).
Mat2 gate_matrix(const OneQOp& op);

}  // namespace qaut
