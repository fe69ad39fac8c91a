#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "twolane/stability.hpp"

using namespace twolane;

namespace {

ModelParams coupled() {
  ModelParams p;
  p.p = 0.8;
  p.q = 0.2;
  p.lambda1 = 0.16;
  p.lambda2 = 0.04;
  return p;
}

}  // namespace

TEST_CASE("effective slope") {
  CHECK(effective_ov_slope({7.0, 2.85, true}, ModelParams{}) == 2.0);
  CHECK(effective_ov_slope({7.0, 2.85, true}, coupled()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(effective_ov_slope({7.0, 2.85, false}, coupled()) == doctest::Approx(1.6).epsilon(1e-15));
}

TEST_CASE("long-wave coefficients") {
  ModelParams p;
  p.lambda1 = 0.0;
  auto c = long_wave_coefficients({7.0, 4.0, true}, p);
  CHECK(c.z1 == 2.0);
  CHECK(c.z2 == 0.0);

  c = long_wave_coefficients({7.0, 3.6, true}, ModelParams{});
  CHECK(c.z2 == doctest::Approx(0.0).scale(1e-15));

  ModelParams flat;
  flat.lambda1 = 0.0;
  c = long_wave_coefficients({1e3, 2.0, true}, flat);
  CHECK(c.z1 == doctest::Approx(0.0).scale(1e-300));
  CHECK(c.z2 == doctest::Approx(0.0).scale(1e-300));

  CHECK_THROWS_AS(long_wave_coefficients({7.0, 0.0, true}, p), std::invalid_argument);
}

TEST_CASE("neutral sensitivity") {
  CHECK(neutral_sensitivity({7.0, 1.0, true}, ModelParams{}) == doctest::Approx(3.6).epsilon(1e-12));
  ModelParams p;
  p.lambda1 = 0.0;
  CHECK(neutral_sensitivity({7.0, 1.0, true}, p) == 4.0);
  CHECK(neutral_sensitivity({7.0, 1.0, false}, coupled()) == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(neutral_sensitivity({7.0, 1.0, true}, coupled()) == doctest::Approx(3.6).epsilon(1e-12));
}

TEST_CASE("classification") {
  const ModelParams p;
  CHECK(classify({7.0, 3.8, true}, p) == Stability::stable);
  CHECK(classify({7.0, 2.85, true}, p) == Stability::unstable);
  const double a_c = neutral_sensitivity({7.0, 1.0, true}, p);
  CHECK(classify({7.0, a_c, true}, p) == Stability::neutral);
  CHECK(to_string(Stability::unstable) == "unstable");

  const auto r = analyze({7.0, 2.85, true}, p);
  CHECK(r.z1 == 2.0);
  CHECK(r.z2 < 0.0);
  CHECK(r.classification == Stability::unstable);
}

TEST_CASE("z2 sign agrees with a - a_c on random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> h(0.0, 14.0), a(0.05, 6.0), lam(0.0, 0.3), w(0.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.p = w(rng);
    p.q = 1.0 - p.p;
    p.lambda1 = lam(rng);
    p.lambda2 = lam(rng);
    const OperatingPoint pt{h(rng), a(rng), i % 2 == 0};
    const auto r = analyze(pt, p);
    const int s_z2 = (r.z2 > 0) - (r.z2 < 0);
    const int s_da = (pt.a > r.a_c) - (pt.a < r.a_c);
    if (s_z2 != s_da) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("damping lowers the neutral curve monotonically") {
  ModelParams p;
  double prev = 1e9;
  for (double lam = 0.0; lam <= 0.5; lam += 0.05) {
    p.lambda1 = lam;
    const double a_c = neutral_sensitivity({7.0, 1.0, true}, p);
    CHECK(a_c < prev);
    prev = a_c;
  }
}

TEST_CASE("closing the gate removes the lateral slope") {
  const auto p = coupled();
  for (double h = 0.5; h < 14.0; h += 0.5) {
    CHECK(neutral_sensitivity({h, 1.0, false}, p) < neutral_sensitivity({h, 1.0, true}, p));
  }
  ModelParams uncoupled;
  CHECK(neutral_sensitivity({6.0, 1.0, false}, uncoupled) ==
        neutral_sensitivity({6.0, 1.0, true}, uncoupled));
}

TEST_CASE("stability surface") {
  const std::vector<double> one{7.0};
  const auto rows = stability_surface(ModelParams{}, one, true);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].h == 7.0);
  CHECK(rows[0].a_c == doctest::Approx(3.6).epsilon(1e-12));

  const std::vector<double> grid{0.0, 3.5, 7.0, 10.5, 14.0};
  const auto curve = stability_surface(ModelParams{}, grid, true);
  REQUIRE(curve.size() == grid.size());
  CHECK(curve[2].a_c > curve[1].a_c);
  CHECK(curve[2].a_c > curve[3].a_c);
  CHECK(curve[1].a_c == doctest::Approx(curve[3].a_c).epsilon(1e-12));

  CHECK_THROWS_AS(stability_surface(ModelParams{}, std::vector<double>{}, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(stability_surface(ModelParams{}, std::vector<double>{7.0, 6.0}, true),
                  std::invalid_argument);
}
