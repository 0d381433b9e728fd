#pragma once

// Scenario files, result serialization and the command line front end.
//
// A scenario file is a JSON object:
//   { "scenario": "<name>", "params": { ... }, "seed": N, "samples": N }
// Unknown keys are fatal and reported by name. Parameter sets, defaults and
// value constraints are listed in the README.
//
// CSV output is UTF-8 with LF line endings: a mandatory "quantity,value"
// header and one row per scalar; the double-slit profile follows after a
// blank line as a "theta,intensity" table. JSON output mirrors the full
// ScenarioResult. Identical seeded invocations produce identical bytes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "densim/scenarios.hpp"

namespace densim {

namespace io_detail {

using json = nlohmann::ordered_json;

inline double require_number(const json& j, const std::string& key) {
  if (!j.is_number())
    throw InvalidParam("parameter '" + key + "' must be a number");
  return j.get<double>();
}

inline long require_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer())
    throw InvalidParam("parameter '" + key + "' must be an integer");
  return j.get<long>();
}

inline bool require_boolean(const json& j, const std::string& key) {
  if (!j.is_boolean())
    throw InvalidParam("parameter '" + key + "' must be a boolean");
  return j.get<bool>();
}

inline std::string require_string(const json& j, const std::string& key) {
  if (!j.is_string())
    throw InvalidParam("parameter '" + key + "' must be a string");
  return j.get<std::string>();
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key))
      throw InvalidParam("unknown key '" + key + "' in " + where);
}

inline ScenarioParams parse_params(const std::string& kind, const json& params) {
  if (!params.is_object())
    throw InvalidParam("'params' must be an object");
  if (kind == "mach_zehnder") {
    reject_unknown_keys(params, {"phase", "blocked_arm"}, "mach_zehnder params");
    MachZehnderParams p;
    if (params.contains("phase")) p.phase = require_number(params["phase"], "phase");
    if (params.contains("blocked_arm"))
      p.blocked_arm = static_cast<int>(require_integer(params["blocked_arm"], "blocked_arm"));
    return p;
  }
  if (kind == "bomb_test") {
    reject_unknown_keys(params, {"phase", "bomb", "block_both"}, "bomb_test params");
    BombTestParams p;
    if (params.contains("phase")) p.phase = require_number(params["phase"], "phase");
    if (params.contains("bomb")) p.bomb = require_boolean(params["bomb"], "bomb");
    if (params.contains("block_both"))
      p.block_both = require_boolean(params["block_both"], "block_both");
    return p;
  }
  if (kind == "double_slit") {
    reject_unknown_keys(
        params, {"n_screen", "d_over_lambda", "open_slits", "which_path_marking"},
        "double_slit params");
    DoubleSlitParams p;
    if (params.contains("n_screen"))
      p.n_screen = static_cast<int>(require_integer(params["n_screen"], "n_screen"));
    if (params.contains("d_over_lambda"))
      p.d_over_lambda = require_number(params["d_over_lambda"], "d_over_lambda");
    if (params.contains("open_slits")) {
      const std::string s = require_string(params["open_slits"], "open_slits");
      if (s == "left") p.open_slits = OpenSlits::Left;
      else if (s == "right") p.open_slits = OpenSlits::Right;
      else if (s == "both") p.open_slits = OpenSlits::Both;
      else throw InvalidParam("parameter 'open_slits' must be left, right or both");
    }
    if (params.contains("which_path_marking"))
      p.which_path_marking =
          require_boolean(params["which_path_marking"], "which_path_marking");
    return p;
  }
  if (kind == "cat") {
    reject_unknown_keys(params, {"decay_per_step", "steps"}, "cat params");
    CatParams p;
    if (params.contains("decay_per_step"))
      p.decay_per_step = require_number(params["decay_per_step"], "decay_per_step");
    if (params.contains("steps")) p.steps = require_integer(params["steps"], "steps");
    return p;
  }
  if (kind == "chsh") {
    reject_unknown_keys(params,
                        {"a", "a_prime", "b", "b_prime", "state", "theta1", "theta2",
                         "diag_p00", "diag_p01", "diag_p10", "diag_p11"},
                        "chsh params");
    ChshParams p;
    if (params.contains("a")) p.a = require_number(params["a"], "a");
    if (params.contains("a_prime")) p.a_prime = require_number(params["a_prime"], "a_prime");
    if (params.contains("b")) p.b = require_number(params["b"], "b");
    if (params.contains("b_prime")) p.b_prime = require_number(params["b_prime"], "b_prime");
    if (params.contains("state")) {
      const std::string s = require_string(params["state"], "state");
      if (s == "singlet") p.state = ChshState::Singlet;
      else if (s == "product") p.state = ChshState::Product;
      else if (s == "diagonal_classical") p.state = ChshState::DiagonalClassical;
      else throw InvalidParam(
          "parameter 'state' must be singlet, product or diagonal_classical");
    }
    if (params.contains("theta1")) p.theta1 = require_number(params["theta1"], "theta1");
    if (params.contains("theta2")) p.theta2 = require_number(params["theta2"], "theta2");
    const char* diag_keys[4] = {"diag_p00", "diag_p01", "diag_p10", "diag_p11"};
    for (int k = 0; k < 4; ++k)
      if (params.contains(diag_keys[k]))
        p.diag_probs[static_cast<std::size_t>(k)] =
            require_number(params[diag_keys[k]], diag_keys[k]);
    return p;
  }
  throw UnknownScenario("unknown scenario '" + kind + "'");
}

}  // namespace io_detail

inline ScenarioConfig parse_scenario_json(const std::string& text) {
  io_detail::json doc;
  try {
    doc = io_detail::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario file must contain a JSON object");
  io_detail::reject_unknown_keys(doc, {"scenario", "params", "seed", "samples"},
                                 "scenario file");
  if (!doc.contains("scenario"))
    throw InvalidParam("missing required key 'scenario'");
  const std::string kind = io_detail::require_string(doc["scenario"], "scenario");

  ScenarioConfig config;
  config.params = io_detail::parse_params(
      kind, doc.contains("params") ? doc["params"] : io_detail::json::object());
  if (doc.contains("seed")) {
    const long seed = io_detail::require_integer(doc["seed"], "seed");
    if (seed < 0) throw InvalidParam("parameter 'seed' must be nonnegative");
    config.seed = RngSeed{static_cast<std::uint64_t>(seed)};
  }
  if (doc.contains("samples")) {
    const long samples = io_detail::require_integer(doc["samples"], "samples");
    if (samples < 0) throw InvalidParam("parameter 'samples' must be nonnegative");
    config.samples = samples;
  }
  // Validate parameter constraints eagerly so bad files fail on parse.
  try {
    std::visit([](const auto& p) { validate(p); }, config.params);
  } catch (const InvalidConfig& e) {
    throw InvalidParam(e.what());
  }
  return config;
}

inline ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

inline std::string to_csv(const ScenarioResult& result) {
  std::string out = "quantity,value\n";
  for (const auto& [name, value] : result.analytic)
    out += name + "," + detail::format_real(value) + "\n";
  for (const auto& [name, value] : result.empirical)
    out += name + "," + detail::format_real(value) + "\n";
  if (!result.profile.empty()) {
    const bool with_empirical = !result.empirical_profile.empty();
    out += "\ntheta,intensity";
    if (with_empirical) out += ",empirical";
    out += "\n";
    for (std::size_t k = 0; k < result.profile.size(); ++k) {
      out += detail::format_real(result.profile[k].first) + "," +
             detail::format_real(result.profile[k].second);
      if (with_empirical) out += "," + detail::format_real(result.empirical_profile[k]);
      out += "\n";
    }
  }
  return out;
}

inline std::string to_json_string(const ScenarioResult& result) {
  io_detail::json j;
  j["scenario"] = result.kind;
  j["analytic"] = io_detail::json::object();
  for (const auto& [name, value] : result.analytic) j["analytic"][name] = value;
  if (result.empirical.empty()) {
    j["empirical"] = nullptr;
  } else {
    j["empirical"] = io_detail::json::object();
    for (const auto& [name, value] : result.empirical) j["empirical"][name] = value;
  }
  if (!result.profile.empty()) {
    j["profile"] = io_detail::json::array();
    const bool with_empirical = !result.empirical_profile.empty();
    for (std::size_t k = 0; k < result.profile.size(); ++k) {
      io_detail::json row = {result.profile[k].first, result.profile[k].second};
      if (with_empirical) row.push_back(result.empirical_profile[k]);
      j["profile"].push_back(std::move(row));
    }
  }
  j["metadata"] = io_detail::json::object();
  for (const auto& [name, value] : result.metadata) j["metadata"][name] = value;
  return j.dump(2) + "\n";
}

}  // namespace densim
