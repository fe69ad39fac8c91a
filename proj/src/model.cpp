#include "twolane/model.hpp"

#include <cmath>
#include <stdexcept>

namespace twolane {

std::vector<std::string> validate(const ModelParams& params) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(params.alpha > 0.0, "alpha must be positive");
  require(params.v_max > 0.0, "v_max must be positive");
  require(params.h_c > 0.0, "h_c must be positive");
  require(params.p >= 0.0, "p must be non-negative");
  require(params.q >= 0.0, "q must be non-negative");
  require(params.lambda1 >= 0.0, "lambda1 must be non-negative");
  require(params.lambda2 >= 0.0, "lambda2 must be non-negative");
  require(params.l_v > 0.0, "l_v must be positive");
  require(params.l_v < params.d, "l_v must be smaller than d");

  std::vector<std::string> warnings;
  if (std::abs(params.p + params.q - 1.0) > 1e-12) {
    warnings.emplace_back("p + q != 1: uniform flow does not travel at V(h)");
  }
  return warnings;
}

double optimal_velocity(double headway, const ModelParams& params) {
  return 0.5 * params.v_max * (std::tanh(headway - params.h_c) + std::tanh(params.h_c));
}

bool lateral_gate_open(double lateral_headway, const ModelParams& params) {
  return lateral_headway >= params.l_v && lateral_headway < params.d;
}

double lateral_optimal_velocity(double lateral_headway, const ModelParams& params) {
  if (!lateral_gate_open(lateral_headway, params)) return 0.0;
  return optimal_velocity(lateral_headway, params);
}

double lateral_velocity_difference(const NeighborView& view, const ModelParams& params) {
  if (!lateral_gate_open(view.lateral_headway, params)) return 0.0;
  return view.v_lateral_lead - view.v_self;
}

double acceleration(const NeighborView& view, const ModelParams& params) {
  // Lateral contributions are added last so that q = lambda2 = 0 leaves the
  // single-lane expression untouched.
  const double own_ov = params.p * optimal_velocity(view.headway, params);
  const double lateral_ov = params.q * lateral_optimal_velocity(view.lateral_headway, params);
  const double relax = params.alpha * ((own_ov + lateral_ov) - view.v_self);
  const double own_dv = params.lambda1 * (view.v_lead - view.v_self);
  const double lateral_dv = params.lambda2 * lateral_velocity_difference(view, params);
  return (relax + own_dv) + lateral_dv;
}

double single_lane_acceleration(double headway, double v_self, double v_lead,
                                const ModelParams& params) {
  const double own_ov = params.p * optimal_velocity(headway, params);
  return params.alpha * (own_ov - v_self) + params.lambda1 * (v_lead - v_self);
}

double ov_derivative(double headway, int order, const ModelParams& params) {
  const double t = std::tanh(headway - params.h_c);
  const double sech2 = 1.0 - t * t;
  switch (order) {
    case 1:
      return 0.5 * params.v_max * sech2;
    case 2:
      return -params.v_max * sech2 * t;
    case 3:
      return params.v_max * sech2 * (2.0 * t * t - sech2);
    default:
      throw std::invalid_argument("ov_derivative: order must be 1, 2 or 3, got " +
                                  std::to_string(order));
  }
}

}  // namespace twolane
