#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "densim/cli.hpp"
#include "densim/scenario_io.hpp"

using namespace densim;

namespace {

const std::filesystem::path kSourceDir = DENSIM_SOURCE_DIR;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

}  // namespace

TEST_CASE("parse_scenario_json accepts a minimal file") {
  const ScenarioConfig config = parse_scenario_json(
      R"({"scenario":"mach_zehnder","params":{"phase":0.0},"seed":42,"samples":0})");
  REQUIRE(config.kind() == ScenarioKind::MachZehnder);
  REQUIRE(config.seed.value == 42);
  REQUIRE(config.samples == 0);
  REQUIRE(std::get<MachZehnderParams>(config.params).phase == 0.0);
  REQUIRE(std::get<MachZehnderParams>(config.params).blocked_arm == -1);
}

TEST_CASE("parse_scenario_json rejects unknown scenarios") {
  REQUIRE_THROWS_AS(parse_scenario_json(R"({"scenario":"warp_drive"})"),
                    UnknownScenario);
}

TEST_CASE("parse_scenario_json rejects out-of-range parameters") {
  REQUIRE_THROWS_AS(
      parse_scenario_json(
          R"({"scenario":"cat","params":{"decay_per_step":1.5,"steps":3}})"),
      InvalidParam);
}

TEST_CASE("parse_scenario_json names unknown keys") {
  try {
    parse_scenario_json(R"({"scenario":"cat","params":{"decay":0.1}})");
    FAIL("expected InvalidParam");
  } catch (const InvalidParam& e) {
    REQUIRE(std::string(e.what()).find("decay") != std::string::npos);
  }
  try {
    parse_scenario_json(R"({"scenario":"cat","bogus":1})");
    FAIL("expected InvalidParam");
  } catch (const InvalidParam& e) {
    REQUIRE(std::string(e.what()).find("bogus") != std::string::npos);
  }
}

TEST_CASE("parse_scenario_json rejects malformed JSON and wrong types") {
  REQUIRE_THROWS_AS(parse_scenario_json("{not json"), ParseError);
  REQUIRE_THROWS_AS(parse_scenario_json(R"([1, 2, 3])"), ParseError);
  REQUIRE_THROWS_AS(
      parse_scenario_json(R"({"scenario":"cat","params":{"steps":2.5}})"),
      InvalidParam);
  REQUIRE_THROWS_AS(
      parse_scenario_json(R"({"scenario":"mach_zehnder","seed":-1})"),
      InvalidParam);
  REQUIRE_THROWS_AS(
      parse_scenario_json(
          R"({"scenario":"double_slit","params":{"open_slits":"sideways"}})"),
      InvalidParam);
}

TEST_CASE("parse_scenario_file reports missing files") {
  REQUIRE_THROWS_AS(parse_scenario_file("/nonexistent/path.json"), FileNotFound);
}

TEST_CASE("every bundled scenario file parses and runs") {
  for (const std::string& name : scenario_names()) {
    const std::filesystem::path file = kSourceDir / "scenarios" / (name + ".json");
    const ScenarioConfig config = parse_scenario_file(file.string());
    const ScenarioResult result = run_scenario(config);
    REQUIRE(result.kind == name);
  }
}

TEST_CASE("csv output is deterministic and matches the goldens") {
  for (const std::string& name : scenario_names()) {
    const std::filesystem::path file = kSourceDir / "scenarios" / (name + ".json");
    const ScenarioConfig config = parse_scenario_file(file.string());
    const std::string once = to_csv(run_scenario(config));
    const std::string twice = to_csv(run_scenario(config));
    REQUIRE(once == twice);
    const std::string golden =
        slurp(kSourceDir / "tests" / "golden" / (name + ".csv"));
    REQUIRE(once == golden);
  }
}

TEST_CASE("csv layout: scalars table, blank line, profile table") {
  const ScenarioResult cat = run_cat(CatParams{0.1, 10});
  const std::string csv = to_csv(cat);
  REQUIRE(csv.rfind("quantity,value\n", 0) == 0);
  REQUIRE(csv.find("p_alive,") != std::string::npos);
  REQUIRE(csv.find('\r') == std::string::npos);

  const ScenarioResult slit =
      run_double_slit(DoubleSlitParams{21, 2.0, OpenSlits::Both, false});
  const std::string slit_csv = to_csv(slit);
  REQUIRE(slit_csv.find("\n\ntheta,intensity\n") != std::string::npos);
}

TEST_CASE("json output mirrors the result") {
  const ScenarioConfig config = parse_scenario_json(
      R"({"scenario":"cat","params":{"decay_per_step":0.5,"steps":2},"seed":9,"samples":50})");
  const std::string text = to_json_string(run_scenario(config));
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j["scenario"] == "cat");
  REQUIRE(j["analytic"]["p_alive"].get<double>() == Approx(0.25).margin(1e-12));
  REQUIRE(j["metadata"]["seed"] == "9");
  REQUIRE(j["metadata"]["samples"] == "50");
  REQUIRE(j["empirical"].contains("empirical_p_alive"));
}

TEST_CASE("run_cli: list-scenarios and validate") {
  REQUIRE(run_cli({"list-scenarios"}) == 0);
  const std::filesystem::path good = temp_file("densim_good.json");
  write_file(good, R"({"scenario":"cat","params":{"decay_per_step":0.1,"steps":3}})");
  REQUIRE(run_cli({"validate", good.string()}) == 0);
  const std::filesystem::path bad = temp_file("densim_bad.json");
  write_file(bad, R"({"scenario":"warp_drive"})");
  REQUIRE(run_cli({"validate", bad.string()}) == 1);
  REQUIRE(run_cli({"validate", "/no/such/file.json"}) == 1);
  REQUIRE(run_cli({"frobnicate"}) == 1);
}

TEST_CASE("run_cli writes byte-identical files for identical invocations") {
  const std::filesystem::path config = temp_file("densim_chsh.json");
  write_file(config, R"({"scenario":"chsh","seed":5,"samples":200})");
  const std::filesystem::path out1 = temp_file("densim_out1.csv");
  const std::filesystem::path out2 = temp_file("densim_out2.csv");
  REQUIRE(run_cli({"run", config.string(), "--out", out1.string()}) == 0);
  REQUIRE(run_cli({"run", config.string(), "--out", out2.string()}) == 0);
  REQUIRE(slurp(out1) == slurp(out2));
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST_CASE("run_cli: --seed and --samples override the file and are echoed") {
  const std::filesystem::path config = temp_file("densim_cat_override.json");
  write_file(config,
             R"({"scenario":"cat","params":{"decay_per_step":0.2,"steps":4},"seed":1,"samples":10})");
  const std::filesystem::path out = temp_file("densim_cat_override.json.out");
  REQUIRE(run_cli({"run", config.string(), "--format", "json", "--seed", "77",
                   "--samples", "64", "--out", out.string()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j["metadata"]["seed"] == "77");
  REQUIRE(j["metadata"]["samples"] == "64");
  std::filesystem::remove(out);
}

TEST_CASE("run_cli resolves relative outputs against DENSIM_OUT_DIR") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "densim_outdir_test";
  std::filesystem::create_directories(dir);
  setenv("DENSIM_OUT_DIR", dir.c_str(), 1);
  const std::filesystem::path config = temp_file("densim_env.json");
  write_file(config, R"({"scenario":"mach_zehnder"})");
  REQUIRE(run_cli({"run", config.string(), "--out", "env_result.csv"}) == 0);
  unsetenv("DENSIM_OUT_DIR");
  REQUIRE(std::filesystem::exists(dir / "env_result.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_cli maps missing run files to exit 1") {
  REQUIRE(run_cli({"run", "/no/such/file.json"}) == 1);
}

TEST_CASE("run_cli maps unwritable outputs to exit 2") {
  const std::filesystem::path config = temp_file("densim_unwritable.json");
  write_file(config, R"({"scenario":"mach_zehnder"})");
  const std::filesystem::path dir_target = std::filesystem::temp_directory_path();
  REQUIRE(run_cli({"run", config.string(), "--out", dir_target.string()}) == 2);
}
