#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "twolane/config.hpp"

using namespace twolane;

namespace {

const char* kMinimal = R"([model]
alpha = 2.85
p = 1
q = 0
lambda1 = 0.2
lambda2 = 0
v_max = 4
h_c = 7
d = 10

[ring]
n_vehicles = 100

[lane1]
baseline_headway = 7

[lane2]
baseline_headway = 7
)";

bool mentions(const ConfigError& e, const std::string& field) {
  for (const auto& i : e.issues()) {
    if (i.field == field) return true;
  }
  return false;
}

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError({});
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const auto m = parse_config(kMinimal);
  CHECK(m.model.l_v == 5.0);
  CHECK(m.sim.dt == 0.1);
  CHECK(m.sim.scheme == Scheme::rk4);
  CHECK(m.sim.mode == NeighborMode::nearest);
  CHECK(m.sim.gate == GateReading::evaluated);
  CHECK(m.sim.duration == 1000.0);
  CHECK(m.measure.profile_time == 950.0);
  CHECK(m.coefficients == CoefficientSensitivity::critical);
  CHECK(m.ring.lanes[0].deltas.empty());
  CHECK(m.output_dir == "out");
}

TEST_CASE("coupled manifest") {
  std::string text = kMinimal;
  text.replace(text.find("p = 1"), 5, "p = 0.8");
  text.replace(text.find("q = 0"), 5, "q = 0.2");
  text.replace(text.find("lambda1 = 0.2"), 13, "lambda1 = 0.16");
  text.replace(text.find("lambda2 = 0"), 11, "lambda2 = 0.04");
  text += "perturb = 46 49 -0.3\n";
  const auto m = parse_config(text);
  CHECK(m.model.alpha == 2.85);
  CHECK(m.model.p == 0.8);
  CHECK(m.model.q == 0.2);
  CHECK(m.model.lambda1 == 0.16);
  CHECK(m.model.lambda2 == 0.04);
  REQUIRE(m.ring.lanes[1].deltas.size() == 1);
  CHECK(m.ring.lanes[1].deltas[0] == HeadwayDelta{46, 49, -0.3});
}

TEST_CASE("named parameter sets inherit from [model]") {
  const auto m = parse_config(std::string(kMinimal) + "\n[model.coupled]\np = 0.8\nq = 0.2\n");
  REQUIRE(m.param_sets.size() == 1);
  CHECK(m.param_sets[0].name == "coupled");
  CHECK(m.param_sets[0].params.p == 0.8);
  CHECK(m.param_sets[0].params.alpha == 2.85);
}

TEST_CASE("errors are located") {
  std::string text = kMinimal;
  text.replace(text.find("baseline_headway = 7"), 20, "baseline_headway = 0");
  auto e = error_of(text);
  CHECK(mentions(e, "lane1.baseline_headway"));
  CHECK(std::string(e.what()).find("lane1.baseline_headway") != std::string::npos);

  e = error_of(std::string(kMinimal) + "[sim]\nsheme = euler\n");
  CHECK(mentions(e, "sim.sheme"));
  CHECK(e.issues()[0].line == 20);

  e = error_of(std::string(kMinimal) + "[simulation]\n");
  CHECK_FALSE(e.issues().empty());

  std::string neg = kMinimal;
  neg.replace(neg.find("q = 0"), 5, "q = -1");
  CHECK(mentions(error_of(neg), "model.q"));

  std::string missing = kMinimal;
  missing.erase(missing.find("v_max = 4\n"), 10);
  CHECK(mentions(error_of(missing), "model.v_max"));

  CHECK_FALSE(error_of(std::string(kMinimal) + "[ring]\nn_vehicles = 10\n").issues().empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "garbage line\n").issues().empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "[sim]\ndt = fast\n").issues().empty());
}

TEST_CASE("serialize then parse is the identity") {
  auto m = parse_config(std::string(kMinimal) + "\n[model.coupled]\np = 0.8\nq = 0.2\n");
  m.model.alpha = 2.8500000000000001;
  m.model.lambda1 = 0.1 + 0.2;
  m.ring.lanes[0].deltas.push_back({46, 49, -0.1});
  m.ring.lanes[0].deltas.push_back({10, 10, 0.05});
  m.sim.scheme = Scheme::euler;
  m.sim.gate = GateReading::closed;
  m.sim.mode = NeighborMode::paired;
  m.coefficients = CoefficientSensitivity::raw;
  m.soliton.times = {0.0, 12.5, 100.0};
  m.output_dir = "out/round trip";
  const auto text = serialize_config(m);
  const auto back = parse_config(text);
  CHECK(back == m);
  CHECK(serialize_config(back) == text);
}
