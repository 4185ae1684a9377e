#include "qaut/circuit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace qaut {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GateInfo {
    Gate1Q gate;
    int params;
};

const std::map<std::string, GateInfo, std::less<>>& gate1q_table() {
    static const std::map<std::string, GateInfo, std::less<>> table{
        {"h", {Gate1Q::H, 0}},   {"x", {Gate1Q::X, 0}},   {"y", {Gate1Q::Y, 0}},
        {"z", {Gate1Q::Z, 0}},   {"s", {Gate1Q::S, 0}},   {"t", {Gate1Q::T, 0}},
        {"rx", {Gate1Q::RX, 1}}, {"ry", {Gate1Q::RY, 1}}, {"rz", {Gate1Q::RZ, 1}},
        {"u3", {Gate1Q::U3, 3}},
    };
    return table;
}

std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool parse_int(std::string_view tok, int& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_double(std::string_view tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParseResult run() {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t eol = text_.find('\n', pos);
            std::string_view line = text_.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                                    : eol - pos);
            pos = eol == std::string_view::npos ? text_.size() + 1 : eol + 1;
            ++line_no;

            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            auto toks = tokenize(line);
            if (toks.empty()) continue;
            handle_line(line_no, toks);
        }
        if (!saw_header_) {
            error(first_op_line_ ? first_op_line_ : line_no, "missing 'qubits N' header");
        }
        ParseResult result;
        result.diagnostics = std::move(diags_);
        if (result.diagnostics.empty()) result.ir = std::move(ir_);
        return result;
    }

  private:
    void handle_line(int line, const std::vector<std::string_view>& toks) {
        std::string name(toks[0]);
        if (name == "qubits") {
            if (saw_header_) {
                error(line, "duplicate 'qubits' header");
                return;
            }
            if (first_op_line_) {
                error(line, "'qubits' header must precede every op");
                return;
            }
            saw_header_ = true;
            if (toks.size() != 2) {
                error(line, "'qubits' expects exactly one argument");
                return;
            }
            int n = 0;
            if (!parse_int(toks[1], n)) {
                error(line, "invalid qubit count '" + std::string(toks[1]) + "'");
                return;
            }
            if (n < 1) {
                error(line, "qubit count must be at least 1");
                return;
            }
            ir_.num_qubits = n;
            header_ok_ = true;
            return;
        }

        if (!first_op_line_) first_op_line_ = line;

        if (auto it = gate1q_table().find(name); it != gate1q_table().end()) {
            handle_1q(line, it->second, toks);
            return;
        }
        if (name == "cnot" || name == "cz") {
            handle_2q(line, name == "cnot" ? Gate2Q::CNOT : Gate2Q::CZ, toks);
            return;
        }
        if (name == "measure") {
            if (toks.size() != 2) {
                error(line, "'measure' expects exactly one qubit argument");
                return;
            }
            int q = 0;
            if (!parse_qubit(line, toks[1], q)) return;
            ir_.ops.push_back(MeasureOp{q});
            return;
        }
        error(line, "unknown gate '" + name + "'");
    }

    void handle_1q(int line, GateInfo info, const std::vector<std::string_view>& toks) {
        std::size_t want = 2 + static_cast<std::size_t>(info.params);
        if (toks.size() != want) {
            error(line, "'" + std::string(toks[0]) + "' expects one qubit argument and " +
                            std::to_string(info.params) + " angle parameter(s)");
            return;
        }
        int q = 0;
        if (!parse_qubit(line, toks[1], q)) return;
        OneQOp op{info.gate, q, {}};
        for (int p = 0; p < info.params; ++p) {
            double v = 0;
            if (!parse_double(toks[2 + static_cast<std::size_t>(p)], v)) {
                error(line, "invalid angle '" + std::string(toks[2 + static_cast<std::size_t>(p)]) + "'");
                return;
            }
            op.params.push_back(v);
        }
        ir_.ops.push_back(std::move(op));
    }

    void handle_2q(int line, Gate2Q gate, const std::vector<std::string_view>& toks) {
        if (toks.size() != 3) {
            error(line, "'" + std::string(toks[0]) + "' expects two qubit arguments");
            return;
        }
        int c = 0, t = 0;
        bool ok_c = parse_qubit(line, toks[1], c);
        bool ok_t = parse_qubit(line, toks[2], t);
        if (!ok_c || !ok_t) return;
        if (c == t) {
            error(line, "control equals target");
            return;
        }
        ir_.ops.push_back(TwoQOp{gate, c, t});
    }

    bool parse_qubit(int line, std::string_view tok, int& out) {
        if (!parse_int(tok, out) || out < 0) {
            error(line, "invalid qubit index '" + std::string(tok) + "'");
            return false;
        }
        if (header_ok_ && out >= ir_.num_qubits) {
            error(line, "qubit index " + std::to_string(out) + " out of range (num_qubits=" +
                            std::to_string(ir_.num_qubits) + ")");
            return false;
        }
        return true;
    }

    void error(int line, std::string message) { diags_.push_back({line, std::move(message)}); }

    std::string_view text_;
    CircuitIR ir_;
    std::vector<Diagnostic> diags_;
    bool saw_header_ = false;
    bool header_ok_ = false;
    int first_op_line_ = 0;
};

}  // namespace

int gate1q_param_count(Gate1Q gate) {
    switch (gate) {
        case Gate1Q::RX:
        case Gate1Q::RY:
        case Gate1Q::RZ: return 1;
        case Gate1Q::U3: return 3;
        default: return 0;
    }
}

std::string gate1q_name(Gate1Q gate) {
    switch (gate) {
        case Gate1Q::H: return "h";
        case Gate1Q::X: return "x";
        case Gate1Q::Y: return "y";
        case Gate1Q::Z: return "z";
        case Gate1Q::S: return "s";
        case Gate1Q::T: return "t";
        case Gate1Q::RX: return "rx";
        case Gate1Q::RY: return "ry";
        case Gate1Q::RZ: return "rz";
        case Gate1Q::U3: return "u3";
    }
    throw std::invalid_argument("bad gate");
}

std::string gate2q_name(Gate2Q gate) {
    return gate == Gate2Q::CNOT ? "cnot" : "cz";
}

int CircuitIR::measurement_count() const {
    int n = 0;
    for (const auto& op : ops) {
        if (std::holds_alternative<MeasureOp>(op)) ++n;
    }
    return n;
}

void CircuitIR::validate() const {
    std::vector<Diagnostic> diags;
    if (num_qubits < 1) diags.push_back({0, "num_qubits must be at least 1"});
    int index = 0;
    for (const auto& op : ops) {
        ++index;
        auto check_qubit = [&](int q) {
            if (q < 0 || q >= num_qubits) {
                diags.push_back({0, "op " + std::to_string(index - 1) + ": qubit index " +
                                        std::to_string(q) + " out of range"});
            }
        };
        if (const auto* g1 = std::get_if<OneQOp>(&op)) {
            check_qubit(g1->target);
            if (static_cast<int>(g1->params.size()) != gate1q_param_count(g1->gate)) {
                diags.push_back({0, "op " + std::to_string(index - 1) + ": wrong parameter count"});
            }
            for (double p : g1->params) {
                if (!std::isfinite(p)) {
                    diags.push_back({0, "op " + std::to_string(index - 1) + ": non-finite angle"});
                }
            }
        } else if (const auto* g2 = std::get_if<TwoQOp>(&op)) {
            check_qubit(g2->control);
            check_qubit(g2->target);
            if (g2->control == g2->target) {
                diags.push_back({0, "op " + std::to_string(index - 1) + ": control equals target"});
            }
        } else {
            check_qubit(std::get<MeasureOp>(op).target);
        }
    }
    if (!diags.empty()) throw InputError(std::move(diags));
}

ParseResult parse_qct(std::string_view text) {
    return Parser(text).run();
}

std::string emit_qct(const CircuitIR& ir) {
    std::string out = "qubits " + std::to_string(ir.num_qubits) + "\n";
    for (const auto& op : ir.ops) {
        if (const auto* g1 = std::get_if<OneQOp>(&op)) {
            out += gate1q_name(g1->gate) + " " + std::to_string(g1->target);
            for (double p : g1->params) out += " " + render_double(p);
        } else if (const auto* g2 = std::get_if<TwoQOp>(&op)) {
            out += gate2q_name(g2->gate) + " " + std::to_string(g2->control) + " " +
                   std::to_string(g2->target);
        } else {
            out += "measure " + std::to_string(std::get<MeasureOp>(op).target);
        }
        out += "\n";
    }
    return out;
}

Mat2 gate_matrix(const OneQOp& op) {
    const Complex i(0, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Mat2 u;
    switch (op.gate) {
        case Gate1Q::H:
            u.m = {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
            break;
        case Gate1Q::X:
            u.m = {Complex(0), Complex(1), Complex(1), Complex(0)};
            break;
        case Gate1Q::Y:
            u.m = {Complex(0), -i, i, Complex(0)};
            break;
        case Gate1Q::Z:
            u.m = {Complex(1), Complex(0), Complex(0), Complex(-1)};
            break;
        case Gate1Q::S:
            u.m = {Complex(1), Complex(0), Complex(0), i};
            break;
        case Gate1Q::T:
            u.m = {Complex(1), Complex(0), Complex(0), std::exp(i * (kPi / 4))};
            break;
        case Gate1Q::RX: {
            double h = op.params.at(0) / 2;
            u.m = {Complex(std::cos(h)), -i * std::sin(h), -i * std::sin(h), Complex(std::cos(h))};
            break;
        }
        case Gate1Q::RY: {
            double h = op.params.at(0) / 2;
            u.m = {Complex(std::cos(h)), Complex(-std::sin(h)), Complex(std::sin(h)),
                   Complex(std::cos(h))};
            break;
        }
        case Gate1Q::RZ: {
            double h = op.params.at(0) / 2;
            u.m = {std::exp(-i * h), Complex(0), Complex(0), std::exp(i * h)};
            break;
        }
        case Gate1Q::U3: {
            double theta = op.params.at(0), phi = op.params.at(1), lambda = op.params.at(2);
            double h = theta / 2;
            u.m = {Complex(std::cos(h)), -std::exp(i * lambda) * std::sin(h),
                   std::exp(i * phi) * std::sin(h), std::exp(i * (phi + lambda)) * std::cos(h)};
            break;
        }
    }
    return u;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    for (std::size_t k = 0; k < diags.size(); ++k) {
        if (k) os << "\n";
        if (diags[k].line > 0) os << "line " << diags[k].line << ": ";
        os << diags[k].message;
    }
    return os.str();
}

}  // namespace qaut
