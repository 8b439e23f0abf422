// config.hpp — JSON model configuration (system + reservoir + initial state).
//
// Schema: {"n": int, "h_s": [[[re,im], ...], ...],
//          "reservoir": {"g": float, "gamma": float, "eps": float},
//          "initial": {"psi0": [re,im], "psi": [[re,im], ...]}}
// Complex numbers are always two-element [re, im] arrays.
#pragma once

#include <string>

#include "lbath/types.hpp"

namespace lbath {

struct ModelConfig {
  SystemSpec system;
  ReservoirSpec reservoir;
  InitialState initial;
};

// Parse/serialize the JSON document; both directions validate the records.
ModelConfig parse_model_config(const std::string& json_text);
std::string serialize_model_config(const ModelConfig& config);

// File variants; load throws ValidationError when the file is missing or malformed.
ModelConfig load_model_config(const std::string& path);
void save_model_config(const ModelConfig& config, const std::string& path);

}  // namespace lbath
