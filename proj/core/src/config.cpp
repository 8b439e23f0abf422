// config.cpp — JSON (de)serialization of model configurations.
#include "lbath/config.hpp"

#include <fstream>

#include <json.hpp>

namespace lbath {

namespace {

using nlohmann::json;

cplx parse_complex(const json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
    throw ValidationError("config: " + where + " must be a two-element [re, im] array");
  return {node[0].get<double>(), node[1].get<double>()};
}

json dump_complex(const cplx& z) { return json::array({z.real(), z.imag()}); }

const json& require(const json& node, const std::string& key, const std::string& where) {
  auto it = node.find(key);
  if (it == node.end()) throw ValidationError("config: missing \"" + key + "\" in " + where);
  return *it;
}

double require_number(const json& node, const std::string& key, const std::string& where) {
  const json& value = require(node, key, where);
  if (!value.is_number()) throw ValidationError("config: \"" + key + "\" in " + where + " must be a number");
  return value.get<double>();
}

}  // namespace

ModelConfig parse_model_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");

  const json& n_node = require(doc, "n", "top level");
  if (!n_node.is_number_integer() || n_node.get<int>() < 1)
    throw ValidationError("config: \"n\" must be a positive integer");
  const int n = n_node.get<int>();

  ModelConfig config;

  const json& hs = require(doc, "h_s", "top level");
  if (!hs.is_array() || static_cast<int>(hs.size()) != n)
    throw ValidationError("config: \"h_s\" must be an n x n array of [re, im] entries");
  config.system.h_s.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (!hs[i].is_array() || static_cast<int>(hs[i].size()) != n)
      throw ValidationError("config: \"h_s\" row " + std::to_string(i) + " must have n entries");
    for (int j = 0; j < n; ++j)
      config.system.h_s(i, j) = parse_complex(hs[i][j], "h_s[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }

  const json& res = require(doc, "reservoir", "top level");
  config.reservoir.g = require_number(res, "g", "\"reservoir\"");
  config.reservoir.gamma = require_number(res, "gamma", "\"reservoir\"");
  config.reservoir.eps = require_number(res, "eps", "\"reservoir\"");

  const json& init = require(doc, "initial", "top level");
  config.initial.psi0 = parse_complex(require(init, "psi0", "\"initial\""), "initial.psi0");
  const json& psi = require(init, "psi", "\"initial\"");
  if (!psi.is_array() || static_cast<int>(psi.size()) != n)
    throw ValidationError("config: \"initial.psi\" must have n entries");
  config.initial.psi.resize(n);
  for (int i = 0; i < n; ++i)
    config.initial.psi(i) = parse_complex(psi[i], "initial.psi[" + std::to_string(i) + "]");

  config.system.validate();
  config.reservoir.validate();
  config.initial.validate();
  return config;
}

std::string serialize_model_config(const ModelConfig& config) {
  config.system.validate();
  config.reservoir.validate();
  config.initial.validate();
  const int n = config.system.n();

  json hs = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(dump_complex(config.system.h_s(i, j)));
    hs.push_back(std::move(row));
  }
  json psi = json::array();
  for (int i = 0; i < n; ++i) psi.push_back(dump_complex(config.initial.psi(i)));

  json doc = {
      {"n", n},
      {"h_s", std::move(hs)},
      {"reservoir", {{"g", config.reservoir.g}, {"gamma", config.reservoir.gamma}, {"eps", config.reservoir.eps}}},
      {"initial", {{"psi0", dump_complex(config.initial.psi0)}, {"psi", std::move(psi)}}},
  };
  return doc.dump(2) + "\n";
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_model_config(text);
}

void save_model_config(const ModelConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("config: cannot write \"" + path + "\"");
  out << serialize_model_config(config);
}

}  // namespace lbath
