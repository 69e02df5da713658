#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lep/lindblad.hpp"

namespace lep {

// Model files are JSON documents:
//
//   {
//     "name": "qubit",
//     "dim": 2,
//     "params": ["gamma_e", "gamma_f", "J"],
//     "hamiltonian": [["0", "J"], ["J", "0"]],
//     "jumps": [
//       {"rate": "gamma_e", "operator": [["1", "0"], ["0", "0"]], "kind": "loss"},
//       {"rate": "gamma_f", "operator": [["0", "1"], ["0", "0"]], "kind": "quantum_jump"}
//     ]
//   }
//
// Entries are expression strings; "kind" defaults to "lindblad".
ModelSpec model_from_json(const nlohmann::json& doc);
ModelSpec parse_model_text(std::string_view text);
ModelSpec load_model_file(const std::filesystem::path& path);

// Inverse of model_from_json, with canonical expression strings.
nlohmann::json model_to_json(const ModelSpec& model);

// "spin_half" / "qubit" select a built-in model; anything else is a path.
BuiltinModel resolve_model(const std::string& ref);

}  // namespace lep
