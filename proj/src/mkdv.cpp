#include "twolane/mkdv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twolane {

MkdvCoefficients mkdv_coefficients(const ModelParams& params, const OperatingPoint& point,
                                   CoefficientSensitivity mode) {
  if (!(point.a > 0.0)) throw std::invalid_argument("mkdv_coefficients: a must be positive");
  if (std::abs(point.h - params.h_c) > 1e-12 * std::max(1.0, params.h_c)) {
    throw std::invalid_argument("mkdv_coefficients: operating headway must equal h_c");
  }

  MkdvCoefficients c;
  c.a = point.a;
  c.a_c = neutral_sensitivity(point, params);
  const double slope = effective_ov_slope(point, params);
  const double third = effective_ov_third_derivative(point, params);
  const double damping = params.lambda1 + params.lambda2;
  c.b = slope;

  const double s = mode == CoefficientSensitivity::critical ? c.a_c : point.a;
  if (!(s > 0.0)) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    c.m1 = c.m2 = c.m3 = c.m4 = c.m5 = c.B = nan;
    c.reason = "non-positive neutral sensitivity: no kink regime";
    return c;
  }

  c.m1 = (s + 3.0 * damping) * slope / (6.0 * s);
  c.m2 = -third / 6.0;
  c.m3 = slope / 2.0;
  c.m4 = 4.0 * (2.0 * slope - damping) * (s + 3.0 * damping) / (24.0 * s * s) * slope -
         (s + 4.0 * damping) / (24.0 * s) * slope;
  c.m5 = (2.0 * (2.0 * slope - damping) - s) / (12.0 * s) * third;

  const double denominator = 2.0 * c.m2 * c.m4 - 3.0 * c.m1 * c.m5;
  if (std::abs(denominator) < kDegenerateDenominator) {
    c.B = std::numeric_limits<double>::quiet_NaN();
    c.reason = "degenerate amplitude denominator 2 m2 m4 - 3 m1 m5";
    return c;
  }
  c.B = 5.0 * c.m2 * c.m3 / denominator;

  const double eps2 = c.a_c / point.a - 1.0;
  if (classify(point, params) == Stability::neutral) {
    c.reason = "neutral point";
    return c;
  }
  if (!(eps2 > 0.0)) {
    c.reason = "a >= a_c: uniform flow is linearly stable, no kink";
    return c;
  }
  if (!(c.B > 0.0)) {
    c.reason = "non-positive soliton amplitude B";
    return c;
  }
  const double amp2 = eps2 * 5.0 * c.m1 * c.m3 / denominator;
  if (!(amp2 > 0.0)) {
    c.reason = "non-positive kink amplitude";
    return c;
  }
  c.epsilon = std::sqrt(eps2);
  c.kink_amplitude = std::sqrt(amp2);
  c.valid = true;
  return c;
}

double soliton_amplitude(const MkdvCoefficients& coeffs) {
  if (!coeffs.valid) throw std::domain_error("soliton_amplitude: " + coeffs.reason);
  return 5.0 * coeffs.m2 * coeffs.m3 / (2.0 * coeffs.m2 * coeffs.m4 - 3.0 * coeffs.m1 * coeffs.m5);
}

double kink_headway(double n, double t, const ModelParams& params, const MkdvCoefficients& c) {
  if (!c.valid) throw std::domain_error("kink_headway: " + c.reason);
  const double eps2 = c.epsilon * c.epsilon;
  const double B = soliton_amplitude(c);
  // sqrt(eps^2 5 m2 m3 / (4 m2 m4 - 6 m1 m5)) == eps sqrt(B / 2)
  const double width = std::sqrt(eps2 * B / 2.0);
  const double phase = n + c.b * t - eps2 * B * t;
  return params.h_c + c.kink_amplitude * std::tanh(width * phase);
}

double kink_headway(double n, double t, const ModelParams& params, const OperatingPoint& point,
                    CoefficientSensitivity mode) {
  return kink_headway(n, t, params, mkdv_coefficients(params, point, mode));
}

std::vector<CoexistingRow> coexisting_curve(const ModelParams& params, bool gate_open,
                                            std::span<const double> a_grid,
                                            CoefficientSensitivity mode) {
  if (a_grid.empty()) throw std::invalid_argument("coexisting_curve: empty sensitivity grid");
  std::vector<CoexistingRow> rows;
  for (double a : a_grid) {
    if (!(a > 0.0)) throw std::invalid_argument("coexisting_curve: sensitivities must be positive");
    const OperatingPoint point{params.h_c, a, gate_open};
    const auto state = classify(point, params);
    if (state == Stability::neutral) {
      rows.push_back({a, params.h_c, params.h_c});
      continue;
    }
    if (state == Stability::stable) continue;
    const auto c = mkdv_coefficients(params, point, mode);
    if (!c.valid) continue;
    rows.push_back({a, params.h_c - c.kink_amplitude, params.h_c + c.kink_amplitude});
  }
  return rows;
}

ResidualGrid relative_residual_grid(double B) {
  if (!(B > 0.0)) throw std::invalid_argument("relative_residual_grid: B must be positive");
  const double length = 1.0 / std::sqrt(B);
  const double time = length / B;
  ResidualGrid g;
  g.x_min *= length;
  g.x_max *= length;
  g.dx *= length;
  g.t_max *= time;
  g.dt *= time;
  return g;
}

double standard_mkdv_residual(double B, const ResidualGrid& grid) {
  if (!(B >= 0.0) || !std::isfinite(B)) {
    throw std::invalid_argument("standard_mkdv_residual: B must be finite and non-negative");
  }
  if (!(grid.dx > 0.0) || !(grid.dt > 0.0) || !(grid.x_max > grid.x_min) ||
      !(grid.t_max >= grid.t_min)) {
    throw std::invalid_argument("standard_mkdv_residual: degenerate grid");
  }

  const double amplitude = std::sqrt(B);
  const double width = std::sqrt(B / 2.0);
  auto profile = [&](double x, double t) { return amplitude * std::tanh(width * (x - B * t)); };
  auto cube = [&](double x, double t) {
    const double r = profile(x, t);
    return r * r * r;
  };

  const double hx = grid.dx;
  const double ht = grid.dt;
  const auto nx = static_cast<long>(std::floor((grid.x_max - grid.x_min) / hx + 1e-9));
  const auto nt = static_cast<long>(std::floor((grid.t_max - grid.t_min) / ht + 1e-9));

  double worst = 0.0;
  for (long j = 0; j <= nt; ++j) {
    const double t = grid.t_min + static_cast<double>(j) * ht;
    for (long i = 0; i <= nx; ++i) {
      const double x = grid.x_min + static_cast<double>(i) * hx;
      const double r_t = (profile(x, t + ht) - profile(x, t - ht)) / (2.0 * ht);
      const double r_xxx = (profile(x + 2.0 * hx, t) - 2.0 * profile(x + hx, t) +
                            2.0 * profile(x - hx, t) - profile(x - 2.0 * hx, t)) /
                           (2.0 * hx * hx * hx);
      const double cube_x = (cube(x + hx, t) - cube(x - hx, t)) / (2.0 * hx);
      worst = std::max(worst, std::abs(r_t - r_xxx + cube_x));
    }
  }
  return worst;
}

}  // namespace twolane
