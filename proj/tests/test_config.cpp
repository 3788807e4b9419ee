#include <doctest.h>

#include <cstdlib>
#include <string>

#include "reebflow/config.hpp"

using namespace reebflow;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty text gives defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.n == 1);
  CHECK(c.flow.dt0 == 0.01);
  CHECK(c.flow.grad_tol == 1e-8);
  CHECK(c.quad.rule == "gauss");
  CHECK(c == RunConfig{});
  CHECK(parse_config("# only a comment\n\n   \n") == RunConfig{});
}

TEST_CASE("simple keys") {
  CHECK(parse_config("quad.mc_seed = 42").quad.mc_seed == 42u);
  const RunConfig c = parse_config(
      "n = 2   # dimension\n"
      "flow.start = 0.2, 0.8, 2.0\n"
      "soliton.sweep = 1:2:5\n"
      "output.dir = out dir\n");
  CHECK(c.n == 2);
  CHECK(c.flow_start == std::vector<double>{0.2, 0.8, 2.0});
  CHECK(c.sweep.steps == 5);
  CHECK(c.sweep.ratios().back() == 2.0);
  CHECK(c.output_dir == "out dir");
}

TEST_CASE("errors name the key and line") {
  const std::string e1 = error_of("flow.dt0 = -1");
  CHECK(e1.find("flow.dt0") != std::string::npos);
  CHECK(e1.find("line 1") != std::string::npos);
  const std::string e2 = error_of("n = 1\n\nflow.bogus = 3\n");
  CHECK(e2.find("flow.bogus") != std::string::npos);
  CHECK(e2.find("line 3") != std::string::npos);
  CHECK(e2.find("unknown") != std::string::npos);
  CHECK(error_of("quad.points = 12x").find("malformed") != std::string::npos);
  CHECK(error_of("flow.grad_tol = 1e-8.5").find("flow.grad_tol") != std::string::npos);
  CHECK(error_of("n = 9").find("out of range") != std::string::npos);
  CHECK(error_of("quad.rule = simpson").find("quad.rule") != std::string::npos);
  CHECK(error_of("just words").find("line 1") != std::string::npos);
  CHECK(error_of("soliton.weights = 1").find("soliton.weights") != std::string::npos);
  CHECK(error_of("soliton.sweep = 1:x:3").find("soliton.sweep") != std::string::npos);
  CHECK(error_of("flow.start = 1, -1").find("flow.start") != std::string::npos);
  CHECK(error_of("n = 2\nflow.start = 1,1").find("flow.start") != std::string::npos);
  CHECK(error_of("verbosity = 4").find("verbosity") != std::string::npos);
}

TEST_CASE("serialization round trips") {
  RunConfig c;
  c.n = 3;
  c.quad.points = 17;
  c.quad.mc_seed = 123456789012345ull;
  c.flow.dt0 = 0.1 + 0.2;
  c.flow.boundary_guard = 1e-5;
  c.flow_start = std::vector<double>{0.1, 0.7, 1.3, 1.9};
  c.soliton_weights = {1.0 / 3.0, 2.0};
  c.sweep = parse_sweep("1.5:3.25:7");
  c.soliton_grid_points = 101;
  c.output_dir = "/tmp/x";
  c.verbosity = 0;
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("environment seed override") {
  RunConfig c;
  setenv("REEBFLOW_SEED", "77", 1);
  apply_env_overrides(c);
  CHECK(c.quad.mc_seed == 77u);
  setenv("REEBFLOW_SEED", "nope", 1);
  try {
    apply_env_overrides(c);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("REEBFLOW_SEED") != std::string::npos);
  }
  unsetenv("REEBFLOW_SEED");
}

TEST_CASE("default starts") {
  RunConfig c;
  CHECK(default_start(c) == ReebVector{0.5, 1.5});
  c.n = 2;
  CHECK(default_start(c) == ReebVector{0.2, 0.8, 2.0});
  c.n = 3;
  CHECK(normalization_charge(default_start(c)) == doctest::Approx(4.0));
  c.flow_start = std::vector<double>{1.0, 1.0, 2.0, 4.0};
  CHECK(default_start(c)[3] == doctest::Approx(2.0));
}

TEST_CASE("sweep parsing") {
  CHECK(parse_sweep("1:4:20").ratios().size() == 20u);
  CHECK(parse_sweep("2:2:1").ratios() == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_sweep("4:1:3"), InvalidInput);
  CHECK_THROWS_AS(parse_sweep("1:4"), InvalidInput);
  CHECK_THROWS_AS(parse_sweep("0:4:3"), InvalidInput);
  CHECK_THROWS_AS(parse_sweep("1:4:0"), InvalidInput);
}
