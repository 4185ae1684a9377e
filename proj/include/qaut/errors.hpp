#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaut {

/// A user-facing message tied to a 1-based source line (0 = no line).
struct Diagnostic {
    int line = 0;
    std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags);

/// Invalid input that carries a diagnostic list (parse or compile failure).
class InputError : public std::runtime_error {
  public:
    explicit InputError(std::vector<Diagnostic> diags)
        : std::runtime_error(format_diagnostics(diags)), diagnostics(std::move(diags)) {}
    explicit InputError(std::string message, int line = 0)
        : InputError(std::vector<Diagnostic>{{line, std::move(message)}}) {}

    std::vector<Diagnostic> diagnostics;
};

/// A program that violates an instruction-stream invariant; carries the
/// index of the offending instruction (npos for program-level faults).
class ProgramError : public std::runtime_error {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ProgramError(std::size_t instruction_index, const std::string& message)
        : std::runtime_error(instruction_index == npos
                                 ? message
                                 : "instruction " + std::to_string(instruction_index) + ": " + message),
          index(instruction_index) {}

    std::size_t index;
};

/// Resource-limit violation (state too large to simulate).
class SizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Internal invariant violation: indicates a bug, not a user mistake.
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qaut
