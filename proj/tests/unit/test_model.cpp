#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "twolane/model.hpp"

using namespace twolane;

namespace {

// Values from tests/oracles/closed_form_oracle.py (mpmath, 50 digits).
constexpr double kV7 = 1.9999966738878893;
constexpr double kV69 = 1.8006606846379777;
constexpr double kAccelExample = -0.56810756936224816;

double richardson(double h, int order, const ModelParams& p) {
  auto fd = [&](double s) {
    auto V = [&](double x) { return optimal_velocity(x, p); };
    switch (order) {
      case 1: return (V(h + s) - V(h - s)) / (2 * s);
      case 2: return (V(h + s) - 2 * V(h) + V(h - s)) / (s * s);
      default: return (V(h + 2 * s) - 2 * V(h + s) + 2 * V(h - s) - V(h - 2 * s)) / (2 * s * s * s);
    }
  };
  return (4 * fd(5e-3) - fd(1e-2)) / 3;
}

}  // namespace

TEST_CASE("optimal velocity reference values") {
  const ModelParams p;
  CHECK(std::abs(optimal_velocity(0.0, p)) < 1e-15);
  CHECK(optimal_velocity(7.0, p) == doctest::Approx(kV7).epsilon(1e-15));
  CHECK(optimal_velocity(6.9, p) == doctest::Approx(kV69).epsilon(1e-15));
  CHECK(optimal_velocity(1e6, p) == doctest::Approx(2.0 * (1.0 + std::tanh(7.0))).epsilon(1e-15));
}

TEST_CASE("optimal velocity is odd about h_c and increasing") {
  const ModelParams p;
  const double mid = optimal_velocity(p.h_c, p);
  double prev = optimal_velocity(-5.0, p);
  for (double x = 0.05; x < 14.0; x += 0.05) {
    CHECK(optimal_velocity(p.h_c + x, p) - mid ==
          doctest::Approx(mid - optimal_velocity(p.h_c - x, p)).epsilon(1e-12));
    const double v = optimal_velocity(-5.0 + 2 * x, p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("lateral gate") {
  const ModelParams p;
  CHECK(lateral_optimal_velocity(7.0, p) == doctest::Approx(kV7).epsilon(1e-15));
  CHECK(lateral_optimal_velocity(12.0, p) == 0.0);
  CHECK(lateral_optimal_velocity(4.999, p) == 0.0);
  CHECK(lateral_optimal_velocity(10.0, p) == 0.0);
  CHECK(lateral_optimal_velocity(5.0, p) == optimal_velocity(5.0, p));
  CHECK_FALSE(lateral_gate_open(std::numeric_limits<double>::quiet_NaN(), p));
  CHECK_FALSE(lateral_gate_open(std::numeric_limits<double>::infinity(), p));

  CHECK(lateral_velocity_difference({2.0, 7.0, 2.0, 7.0, 3.0}, p) == 1.0);
  CHECK(lateral_velocity_difference({2.0, 7.0, 2.0, 11.0, 3.0}, p) == 0.0);
  CHECK(lateral_velocity_difference({2.5, 7.0, 2.0, 7.0, 2.5}, p) == 0.0);
}

TEST_CASE("acceleration") {
  SUBCASE("steady state is a fixed point") {
    ModelParams p;
    p.p = 0.8;
    p.q = 0.2;
    p.lambda1 = 0.16;
    p.lambda2 = 0.04;
    const double v = p.p * optimal_velocity(7.0, p) + p.q * lateral_optimal_velocity(7.0, p);
    CHECK(acceleration({v, 7.0, v, 7.0, v}, p) == doctest::Approx(0.0).scale(1e-15));
  }
  SUBCASE("worked example") {
    const ModelParams p;
    const NeighborView view{kV7, 6.9, kV7, 6.9, kV7};
    CHECK(acceleration(view, p) == doctest::Approx(kAccelExample).epsilon(1e-14));
  }
  SUBCASE("reduces bit for bit to the single-lane law") {
    ModelParams p;
    p.lambda1 = 0.37;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> h(0.0, 20.0), v(0.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
      const NeighborView view{v(rng), h(rng), v(rng), h(rng), v(rng)};
      CHECK(acceleration(view, p) ==
            single_lane_acceleration(view.headway, view.v_self, view.v_lead, p));
    }
  }
}

TEST_CASE("OV derivatives") {
  const ModelParams p;
  CHECK(ov_derivative(7.0, 1, p) == 2.0);
  CHECK(ov_derivative(7.0, 2, p) == 0.0);
  CHECK(ov_derivative(7.0, 3, p) == -4.0);
  CHECK(ov_derivative(5.5, 1, p) == doctest::Approx(0.36141327784729706).epsilon(1e-14));
  CHECK(ov_derivative(5.5, 2, p) == doctest::Approx(0.65426519457509566).epsilon(1e-14));
  CHECK(ov_derivative(5.5, 3, p) == doctest::Approx(1.0537944391762056).epsilon(1e-14));
  CHECK(ov_derivative(8.25, 1, p) == doctest::Approx(0.56082973236086526).epsilon(1e-14));
  CHECK(ov_derivative(8.25, 2, p) == doctest::Approx(-0.95148537352694508).epsilon(1e-14));
  CHECK(ov_derivative(8.25, 3, p) == doctest::Approx(1.2997289633435818).epsilon(1e-14));

  CHECK_THROWS_AS(ov_derivative(7.0, 0, p), std::invalid_argument);
  CHECK_THROWS_AS(ov_derivative(7.0, 4, p), std::invalid_argument);

  std::mt19937_64 rng(20141101);
  std::uniform_real_distribution<double> dist(0.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double h = dist(rng);
    for (int order = 1; order <= 3; ++order) {
      CHECK(std::abs(ov_derivative(h, order, p) - richardson(h, order, p)) < 1e-6);
    }
  }
}

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK(validate(p).empty());
  p.q = 0.3;
  CHECK(validate(p).size() == 1);
  p.d = 4.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = ModelParams{};
  p.alpha = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = ModelParams{};
  p.q = -0.1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}
