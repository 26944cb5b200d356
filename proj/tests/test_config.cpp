#include "etnet/config.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"

using namespace etnet;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path repo_config(const char* name) {
  return std::filesystem::path(ETNET_SOURCE_DIR) / "configs" / name;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "etnet_config_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("shipped configs parse to the built-in parameter sets") {
  const ParsedConfig one = parse_config_file(repo_config("example1.json"));
  CHECK(one.model.size() == 5);
  CHECK(one.model.cost.coupling()(0, 0) == doctest::Approx(3.919));
  CHECK(one.trigger.gamma == doctest::Approx(0.3));
  CHECK(one.trigger.compulsory_period == doctest::Approx(0.03));
  REQUIRE(one.x0.has_value());
  CHECK((*one.x0)[0] == doctest::Approx(0.728));

  const ParsedConfig two = parse_config_file(repo_config("example2.json"));
  CHECK(two.model.size() == 3);
  CHECK(two.model.cost.coupling()(1, 2) == doctest::Approx(3.0));
  CHECK(two.trigger.gamma == doctest::Approx(0.5));
}

TEST_CASE("validation errors name the field and constraint") {
  const std::string bad_c = R"({
    "model": {"n": 1, "d": [1], "lambda": [1], "theta": [0],
              "cost": {"c4": 0, "c3": 0, "W": [[0]], "b": [0]}},
    "trigger": {"gamma": 0.1, "c": 2.5, "T": 1.0}
  })";
  try {
    parse_config_text(bad_c, "inline");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("trigger.c") != std::string::npos);
    CHECK(what.find("(0,2)") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected") {
  const std::string with_unknown = R"({
    "model": {"n": 1, "d": [1], "lambda": [1], "theta": [0],
              "cost": {"c4": 0, "c3": 0, "W": [[0]], "b": [0]}},
    "trigger": {"gamma": 0.1, "T": 1.0, "mistyped_key": 3}
  })";
  try {
    parse_config_text(with_unknown, "inline");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mistyped_key") != std::string::npos);
  }
}

TEST_CASE("parse errors carry the line number") {
  const std::string broken = "{\n  \"model\": {\n  oops\n}";
  try {
    parse_config_text(broken, "broken.json");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("broken.json:3") != std::string::npos);
  }
}

TEST_CASE("dimension constraints are validated") {
  const std::string bad_dim = R"({
    "model": {"n": 2, "d": [1, 1], "lambda": [1, 1], "theta": [0, 0],
              "cost": {"c4": 0, "c3": 0, "W": [[0, 0], [0, 0]], "b": [0, 0]}},
    "trigger": {"gamma": 0.1, "T": 1.0},
    "experiment": {"x0": [1, 2, 3]}
  })";
  CHECK_THROWS_AS(parse_config_text(bad_dim, "inline"), ConfigError);
}

TEST_CASE("round trip is the identity on parsed structures") {
  for (const char* name : {"example1.json", "example2.json"}) {
    const ParsedConfig once = parse_config_file(repo_config(name));
    const ParsedConfig twice = parse_config_text(emit_config(once), "emitted");
    CHECK(emit_config(once) == emit_config(twice));
    CHECK(config_hash(once) == config_hash(twice));
  }
}

TEST_CASE("config hash is stable and sensitive") {
  const ParsedConfig one = parse_config_file(repo_config("example1.json"));
  const ParsedConfig two = parse_config_file(repo_config("example2.json"));
  CHECK(config_hash(one) == config_hash(one));
  CHECK(config_hash(one) != config_hash(two));
}

TEST_CASE("output files embed provenance and are byte-identical per seed") {
  const auto dir = temp_dir();
  const OutputMeta meta{0x1234abcd5678ef90ULL, 77, 1};

  std::vector<EventRecord> events;
  events.push_back({2, 0.125, Cause::autonomy, Vec{0.1, -0.2, 0.3}, -0.75});
  events.push_back({0, 0.25, Cause::compulsory, Vec{0.2, -0.1, 0.4}, 0.5});

  const auto path_a = dir / "events_a.csv";
  const auto path_b = dir / "events_b.csv";
  write_event_log(path_a, events, meta, OutputFormat::csv);
  write_event_log(path_b, events, meta, OutputFormat::csv);
  const std::string a = read_file(path_a);
  CHECK(a == read_file(path_b));
  CHECK(a.find("config_hash=1234abcd5678ef90") != std::string::npos);
  CHECK(a.find("seed=77") != std::string::npos);
  CHECK(a.find("autonomy") != std::string::npos);

  const auto path_json = dir / "events.json";
  write_event_log(path_json, events, meta, OutputFormat::json);
  const std::string j = read_file(path_json);
  CHECK(j.find("\"config_hash\": \"1234abcd5678ef90\"") != std::string::npos);
}

TEST_CASE("empty sweeps still produce headed files") {
  const auto dir = temp_dir();
  const OutputMeta meta{1, 2, 1};
  write_stat_rows(dir / "empty_sweep", {}, meta);
  const std::string csv = read_file(dir / "empty_sweep.csv");
  CHECK(csv.find("gamma,eta_sim,eta,N,T_first") != std::string::npos);
  CHECK(csv.rfind('\n') == csv.size() - 1);
  write_lambda_rows(dir / "empty_lambda", {}, meta);
  CHECK(read_file(dir / "empty_lambda.csv").find("lambda,trial") != std::string::npos);
}

TEST_CASE("floats serialize with 17 significant digits") {
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
}
