// qaut — compile logical circuits for the donor-port spin-lattice machine,
// simulate the resulting pulse programs, and report costs and thermal yield.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qaut/compiler.hpp"
#include "qaut/serialize.hpp"
#include "qaut/simulator.hpp"
#include "qaut/thermal.hpp"

namespace {

using qaut::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;      // parse/compile diagnostics, bad files
constexpr int kExitResource = 3;   // state too large
constexpr int kExitInternal = 4;   // invariant violation: a bug, not user error

struct GlobalFlags {
    std::string units = "4,1,1";
    int detune_radius = 1;
    bool json_diagnostics = false;
    bool pretty = false;
};

qaut::LatticeSpec spec_from_flags(const GlobalFlags& flags) {
    qaut::LatticeSpec spec;
    spec.detune_radius = flags.detune_radius;
    std::istringstream in(flags.units);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i >= 3) throw qaut::InputError("--units expects Nx,Ny,Nz");
        try {
            spec.units[static_cast<std::size_t>(i++)] = std::stoi(part);
        } catch (...) {
            throw qaut::InputError("--units: '" + part + "' is not an integer");
        }
    }
    if (i != 3) throw qaut::InputError("--units expects Nx,Ny,Nz");
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw qaut::InputError(e.what());
    }
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qaut::InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qaut::InputError("cannot write '" + path + "'");
    out << content;
}

void emit_json(const Json& j, const std::string& out_path, bool pretty) {
    std::string text = pretty ? j.dump(2) : j.dump();
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

void report_diagnostics(const std::vector<qaut::Diagnostic>& diags, bool as_json,
                        const char* severity) {
    if (as_json) {
        Json list = Json::array();
        for (const auto& d : diags) {
            list.push_back(Json{{"line", d.line}, {"message", d.message}, {"severity", severity}});
        }
        std::cerr << list.dump() << "\n";
    } else {
        for (const auto& d : diags) {
            std::cerr << severity << ": ";
            if (d.line > 0) std::cerr << "line " << d.line << ": ";
            std::cerr << d.message << "\n";
        }
    }
}

qaut::CircuitIR load_circuit(const std::string& path, bool json_diags) {
    auto parsed = qaut::parse_qct(read_file(path));
    if (!parsed.ok()) {
        report_diagnostics(parsed.diagnostics, json_diags, "error");
        throw qaut::InputError("circuit '" + path + "' has " +
                               std::to_string(parsed.diagnostics.size()) + " error(s)");
    }
    return *parsed.ir;
}

qaut::Program load_program(const std::string& path) {
    return qaut::program_from_json(qaut::parse_json_text(read_file(path), "program '" + path + "'"));
}

void dump_state_binary(const qaut::StateVector& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qaut::InputError("cannot write '" + path + "'");
    for (const qaut::Complex& a : state.amps) {
        double re = a.real(), im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof(re));
        out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
}

int cmd_compile(const GlobalFlags& flags, const std::string& circuit_path,
                const std::string& out_path, bool elide_trivial) {
    auto spec = spec_from_flags(flags);
    auto ir = load_circuit(circuit_path, flags.json_diagnostics);
    auto compiled = qaut::compile(ir, spec, {}, elide_trivial);
    if (!compiled.warnings.empty()) {
        report_diagnostics(compiled.warnings, flags.json_diagnostics, "warning");
    }
    emit_json(qaut::to_json(compiled.program), out_path, flags.pretty);
    return kExitOk;
}

int cmd_run(const GlobalFlags& flags, const std::string& program_path, std::uint64_t seed,
            int shots, bool emit_state, const std::string& dump_path,
            const std::string& out_path) {
    auto program = load_program(program_path);
    if (shots < 1) throw qaut::InputError("--shots must be at least 1");

    Json shot_list = Json::array();
    qaut::RunOptions opts;
    opts.keep_state = emit_state || !dump_path.empty();
    for (int s = 0; s < shots; ++s) {
        std::uint64_t shot_seed = seed + static_cast<std::uint64_t>(s);
        auto result = qaut::run(program, shot_seed, opts);
        Json shot = qaut::to_json(result, emit_state);
        shot_list.push_back(std::move(shot));
        if (!dump_path.empty() && s == shots - 1) {
            dump_state_binary(*result.final_state, dump_path);
        }
    }
    emit_json(Json{{"rng_seed", seed}, {"shots", shot_list}}, out_path, flags.pretty);
    return kExitOk;
}

int cmd_verify(const GlobalFlags& flags, const std::string& circuit_path, int trials,
               std::uint64_t seed, const std::string& out_path) {
    auto spec = spec_from_flags(flags);
    auto ir = load_circuit(circuit_path, flags.json_diagnostics);
    auto report = qaut::verify(ir, spec, {}, trials, seed);
    char line[64];
    std::snprintf(line, sizeof(line), "fidelity %.9f\n", report.min_fidelity);
    std::cerr << line;
    emit_json(qaut::to_json(report), out_path, flags.pretty);
    return kExitOk;
}

int cmd_cost(const GlobalFlags& flags, const std::string& program_path,
             const std::string& out_path) {
    auto program = load_program(program_path);
    emit_json(qaut::to_json(qaut::cost(program)), out_path, flags.pretty);
    return kExitOk;
}

int cmd_thermal(const GlobalFlags& flags, const std::string& grid, std::int64_t automata,
                const std::string& out_path) {
    auto spec = spec_from_flags(flags);

    double start = 0, stop = 0, step = 0;
    {
        std::istringstream in(grid);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
            throw qaut::InputError("--x-grid expects start:stop:step");
        }
        try {
            start = std::stod(a);
            stop = std::stod(b);
            step = std::stod(c);
        } catch (...) {
            throw qaut::InputError("--x-grid expects numeric start:stop:step");
        }
    }
    if (!(step > 0) || stop < start || start < 0) {
        throw qaut::InputError("--x-grid needs 0 <= start <= stop and step > 0");
    }

    Json points = Json::array();
    for (double x = start; x <= stop + 1e-9; x += step) {
        Json point{{"x", x},
                   {"p", qaut::spin_ground_prob(x)},
                   {"perfect_init_prob", qaut::perfect_init_prob(spec, x)}};
        if (automata > 0) {
            point["expected_perfect"] =
                static_cast<double>(automata) * qaut::perfect_init_prob(spec, x);
        }
        points.push_back(std::move(point));
    }
    Json j{{"units", spec.units},
           {"total_spins", qaut::total_spins(spec)},
           {"points", points}};
    if (automata > 0) {
        j["num_automata"] = automata;
        j["threshold_x"] = qaut::init_threshold_x(qaut::total_spins(spec));
    }
    emit_json(j, out_path, flags.pretty);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-level toolchain for the donor-port spin-lattice quantum machine"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::string circuit_path, program_path, out_path, dump_path;
    std::uint64_t seed = 0;
    int shots = 1, trials = 1;
    bool elide_trivial = false, emit_state = false;
    std::string x_grid = "0:12:0.5";
    std::int64_t automata = 0;

    auto add_lattice_flags = [&](CLI::App* cmd) {
        cmd->add_option("--units", flags.units, "lattice ABC-units per axis, Nx,Ny,Nz");
        cmd->add_option("--detune-radius", flags.detune_radius,
                        "radius (in sites) of the near-donor detuned region");
    };
    auto add_common_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--json", flags.json_diagnostics, "machine-readable diagnostics on stderr");
        cmd->add_flag("--pretty", flags.pretty, "indent JSON output");
        cmd->add_option("--out", out_path, "write output JSON to a file instead of stdout");
    };

    auto* compile_cmd = app.add_subcommand("compile", "lower a .qct circuit to a pulse program");
    compile_cmd->add_option("circuit", circuit_path, "input .qct file")->required();
    add_lattice_flags(compile_cmd);
    add_common_flags(compile_cmd);
    compile_cmd->add_flag("--elide-trivial", elide_trivial, "drop zero-rotation local pulses");

    auto* run_cmd = app.add_subcommand("run", "execute a pulse program on the ideal simulator");
    run_cmd->add_option("program", program_path, "program JSON file")->required();
    run_cmd->add_option("--seed", seed, "measurement sampling seed (default 0)");
    run_cmd->add_option("--shots", shots, "number of seeded shots (seed + shot index)");
    run_cmd->add_flag("--emit-state", emit_state, "include final amplitudes in the JSON");
    run_cmd->add_option("--dump-state", dump_path,
                        "write final amplitudes of the last shot as little-endian (re,im) float64 pairs");
    add_common_flags(run_cmd);

    auto* verify_cmd =
        app.add_subcommand("verify", "compile a circuit and check it against the direct oracle");
    verify_cmd->add_option("circuit", circuit_path, "input .qct file")->required();
    verify_cmd->add_option("--trials", trials, "fidelity trials / record-comparison shots");
    verify_cmd->add_option("--seed", seed, "base seed");
    add_lattice_flags(verify_cmd);
    add_common_flags(verify_cmd);

    auto* cost_cmd = app.add_subcommand("cost", "pulse-cost report for a program");
    cost_cmd->add_option("program", program_path, "program JSON file")->required();
    add_common_flags(cost_cmd);

    auto* thermal_cmd =
        app.add_subcommand("thermal", "initialization yield over a grid of x = dE/(kB T)");
    thermal_cmd->add_option("--x-grid", x_grid, "grid as start:stop:step (default 0:12:0.5)");
    thermal_cmd->add_option("--automata", automata, "ensemble size for expected perfect counts");
    add_lattice_flags(thermal_cmd);
    add_common_flags(thermal_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (compile_cmd->parsed()) return cmd_compile(flags, circuit_path, out_path, elide_trivial);
        if (run_cmd->parsed())
            return cmd_run(flags, program_path, seed, shots, emit_state, dump_path, out_path);
        if (verify_cmd->parsed()) return cmd_verify(flags, circuit_path, trials, seed, out_path);
        if (cost_cmd->parsed()) return cmd_cost(flags, program_path, out_path);
        if (thermal_cmd->parsed()) return cmd_thermal(flags, x_grid, automata, out_path);
    } catch (const qaut::InputError& e) {
        if (!flags.json_diagnostics) std::cerr << "error: " << e.what() << "\n";
        else report_diagnostics(e.diagnostics, true, "error");
        return kExitInput;
    } catch (const qaut::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
