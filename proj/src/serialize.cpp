#include "qaut/serialize.hpp"

namespace qaut {

namespace {

int require_int(const Json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw InputError(what + ": missing integer field '" + key + "'");
    }
    return j[key].get<int>();
}

std::string require_string(const Json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw InputError(what + ": missing string field '" + key + "'");
    }
    return j[key].get<std::string>();
}

}  // namespace

Json to_json(const LatticeSpec& spec) {
    return Json{{"units", spec.units}, {"detune_radius", spec.detune_radius}};
}

LatticeSpec lattice_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("units") || !j["units"].is_array() ||
        j["units"].size() != 3) {
        throw InputError("lattice spec: expected {\"units\":[Nx,Ny,Nz],...}");
    }
    LatticeSpec spec;
    for (int i = 0; i < 3; ++i) {
        if (!j["units"][static_cast<std::size_t>(i)].is_number_integer()) {
            throw InputError("lattice spec: units must be integers");
        }
        spec.units[static_cast<std::size_t>(i)] = j["units"][static_cast<std::size_t>(i)].get<int>();
    }
    if (j.contains("detune_radius")) {
        if (!j["detune_radius"].is_number_integer()) {
            throw InputError("lattice spec: detune_radius must be an integer");
        }
        spec.detune_radius = j["detune_radius"].get<int>();
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("lattice spec: ") + e.what());
    }
    return spec;
}

Json to_json(const Instruction& instr) {
    if (const auto* g = std::get_if<GlobalSwapInstr>(&instr)) {
        return Json{{"op", "global_swap"},
                    {"axis", std::string(1, axis_name(g->axis))},
                    {"pair", species_pair_name(g->pair)}};
    }
    if (const auto* l = std::get_if<Local1QInstr>(&instr)) {
        return Json{{"op", "local_1q"},
                    {"target", local_target_name(l->target)},
                    {"euler", {l->rotation.alpha, l->rotation.beta, l->rotation.gamma}},
                    {"phase", l->rotation.phase}};
    }
    if (const auto* c = std::get_if<CondDAInstr>(&instr)) {
        return Json{{"op", "cond_da"}, {"kind", cond_kind_name(c->kind)}};
    }
    if (std::holds_alternative<SwapDAInstr>(instr)) {
        return Json{{"op", "swap_da"}};
    }
    const auto& m = std::get<MeasureDInstr>(instr);
    return Json{{"op", "measure_d"}, {"record", m.record_index}};
}

Instruction instruction_from_json(const Json& j) {
    const std::string what = "instruction";
    std::string op = require_string(j, "op", what);
    try {
        if (op == "global_swap") {
            return GlobalSwapInstr{axis_from_name(require_string(j, "axis", what)),
                                   species_pair_from_name(require_string(j, "pair", what))};
        }
        if (op == "local_1q") {
            if (!j.contains("euler") || !j["euler"].is_array() || j["euler"].size() != 3) {
                throw InputError("instruction: 'euler' must be a 3-element array");
            }
            EulerAngles e;
            e.alpha = j["euler"][0].get<double>();
            e.beta = j["euler"][1].get<double>();
            e.gamma = j["euler"][2].get<double>();
            e.phase = j.contains("phase") ? j["phase"].get<double>() : 0.0;
            return Local1QInstr{local_target_from_name(require_string(j, "target", what)), e};
        }
        if (op == "cond_da") {
            return CondDAInstr{cond_kind_from_name(require_string(j, "kind", what))};
        }
        if (op == "swap_da") return SwapDAInstr{};
        if (op == "measure_d") return MeasureDInstr{require_int(j, "record", what)};
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("instruction: ") + e.what());
    }
    throw InputError("instruction: unknown op '" + op + "'");
}

Json to_json(const Program& program) {
    Json map = Json::object();
    for (const auto& [qubit, cell] : program.qubit_map) {
        map[std::to_string(qubit)] = cell;
    }
    Json instrs = Json::array();
    for (const auto& instr : program.instructions) instrs.push_back(to_json(instr));
    return Json{{"spec", to_json(program.spec)}, {"qubit_map", map}, {"instructions", instrs}};
}

Program program_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("program: expected a JSON object");
    Program program;
    if (!j.contains("spec")) throw InputError("program: missing 'spec'");
    program.spec = lattice_spec_from_json(j["spec"]);

    if (!j.contains("qubit_map") || !j["qubit_map"].is_object()) {
        throw InputError("program: missing 'qubit_map' object");
    }
    for (const auto& [key, value] : j["qubit_map"].items()) {
        int qubit = 0;
        try {
            qubit = std::stoi(key);
        } catch (...) {
            throw InputError("program: qubit_map key '" + key + "' is not an integer");
        }
        if (!value.is_array() || value.size() != 3) {
            throw InputError("program: qubit_map values must be 3-element cell coordinates");
        }
        Cell cell{value[0].get<int>(), value[1].get<int>(), value[2].get<int>()};
        program.qubit_map[qubit] = cell;
    }

    if (!j.contains("instructions") || !j["instructions"].is_array()) {
        throw InputError("program: missing 'instructions' array");
    }
    for (const auto& ij : j["instructions"]) {
        program.instructions.push_back(instruction_from_json(ij));
    }
    program.measurement_count = 0;
    for (const auto& instr : program.instructions) {
        if (std::holds_alternative<MeasureDInstr>(instr)) ++program.measurement_count;
    }
    try {
        validate_program(program);
    } catch (const ProgramError& e) {
        throw InputError(std::string("program: ") + e.what());
    }
    return program;
}

Json to_json(const CostReport& report) {
    // flat object: channel names (dotted) sit beside the scalar fields
    Json j{{"pulse_events_total", report.pulse_events_total},
           {"macro_shift_count", report.macro_shift_count},
           {"cnot_equivalents", report.cnot_equivalents},
           {"measurement_events", report.measurement_events}};
    for (const auto& [name, count] : report.per_channel) j[name] = count;
    return j;
}

Json to_json(const RunResult& result, bool include_state) {
    Json j{{"rng_seed", result.rng_seed}, {"records", result.records}};
    if (include_state && result.final_state) {
        Json amps = Json::array();
        for (const Complex& a : result.final_state->amps) {
            amps.push_back(Json::array({a.real(), a.imag()}));
        }
        j["amplitudes"] = std::move(amps);
    }
    return j;
}

Json to_json(const VerifyReport& report) {
    Json j{{"min_fidelity", report.min_fidelity}, {"fidelities", report.fidelities}};
    if (report.record_shots > 0) {
        j["record_shots"] = report.record_shots;
        j["record_match_fraction"] = report.record_match_fraction;
        Json cc = Json::object(), oc = Json::object();
        for (const auto& [k, v] : report.compiled_record_counts) cc[k] = v;
        for (const auto& [k, v] : report.oracle_record_counts) oc[k] = v;
        j["compiled_record_counts"] = cc;
        j["oracle_record_counts"] = oc;
    }
    return j;
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

}  // namespace qaut
