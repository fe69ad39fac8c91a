#include "twolane/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twolane {

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::neutral:
      return "neutral";
    case Stability::unstable:
      return "unstable";
  }
  return "unknown";
}

double effective_ov_slope(const OperatingPoint& point, const ModelParams& params) {
  const double slope = ov_derivative(point.h, 1, params);
  const double lateral = point.gate_open ? slope : 0.0;
  return params.p * slope + params.q * lateral;
}

double effective_ov_third_derivative(const OperatingPoint& point, const ModelParams& params) {
  const double third = ov_derivative(point.h, 3, params);
  const double lateral = point.gate_open ? third : 0.0;
  return params.p * third + params.q * lateral;
}

LongWaveCoefficients long_wave_coefficients(const OperatingPoint& point,
                                            const ModelParams& params) {
  if (!(point.a > 0.0)) throw std::invalid_argument("long_wave_coefficients: a must be positive");
  const double slope = effective_ov_slope(point, params);
  const double damping = params.lambda1 + params.lambda2;
  LongWaveCoefficients c;
  c.z1 = slope;
  c.z2 = (0.5 + damping / point.a) * slope - slope * slope / point.a;
  return c;
}

double neutral_sensitivity(const OperatingPoint& point, const ModelParams& params) {
  return 2.0 * effective_ov_slope(point, params) - 2.0 * (params.lambda1 + params.lambda2);
}

namespace {

Stability classify_against(double a, double a_c) {
  if (std::abs(a - a_c) <= kNeutralTolerance * std::max(1.0, std::abs(a_c))) {
    return Stability::neutral;
  }
  return a > a_c ? Stability::stable : Stability::unstable;
}

}  // namespace

Stability classify(const OperatingPoint& point, const ModelParams& params) {
  return classify_against(point.a, neutral_sensitivity(point, params));
}

StabilityReport analyze(const OperatingPoint& point, const ModelParams& params) {
  const auto lw = long_wave_coefficients(point, params);
  StabilityReport r;
  r.z1 = lw.z1;
  r.z2 = lw.z2;
  r.a_c = neutral_sensitivity(point, params);
  r.classification = classify_against(point.a, r.a_c);
  return r;
}

std::vector<SurfaceRow> stability_surface(const ModelParams& params, std::span<const double> h_grid,
                                          bool gate_open) {
  if (h_grid.empty()) throw std::invalid_argument("stability_surface: empty headway grid");
  if (std::adjacent_find(h_grid.begin(), h_grid.end(), std::greater_equal<>()) != h_grid.end()) {
    throw std::invalid_argument("stability_surface: headway grid must be strictly increasing");
  }
  std::vector<SurfaceRow> rows;
  rows.reserve(h_grid.size());
  for (double h : h_grid) {
    rows.push_back({h, neutral_sensitivity({h, 1.0, gate_open}, params)});
  }
  return rows;
}

}  // namespace twolane
