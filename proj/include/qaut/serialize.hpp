#pragma once

#include <string>

#include "json.hpp"
#include "qaut/isa.hpp"
#include "qaut/lattice.hpp"
#include "qaut/simulator.hpp"

namespace qaut {

using Json = nlohmann::json;

// {"units":[Nx,Ny,Nz],"detune_radius":r}
Json to_json(const LatticeSpec& spec);
LatticeSpec lattice_spec_from_json(const Json& j);

Json to_json(const Instruction& instr);
Instruction instruction_from_json(const Json& j);

// {"spec":...,"qubit_map":{"0":[i,j,k],...},"instructions":[...]}
Json to_json(const Program& program);
Program program_from_json(const Json& j);

Json to_json(const CostReport& report);

Json to_json(const RunResult& result, bool include_state);

Json to_json(const VerifyReport& report);

/// Parse text into JSON, mapping syntax errors to InputError.
Json parse_json_text(const std::string& text, const std::string& what);

}  // namespace qaut
