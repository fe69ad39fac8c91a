#pragma once

#include <string>
#include <vector>

namespace twolane {

/// Constants of the two-lane optimal-velocity model with lateral coupling.
///
/// The acceleration law is
///   a_n = alpha * [p V(dx_n) + q Vbar(dx_l) - v_n] + lambda1 dv_n + lambda2 dv_l
/// where V is the tanh optimal-velocity function and Vbar / dv_l are gated on
/// the adjacent-lane headway lying in [l_v, d).
struct ModelParams {
  double alpha = 2.85;   // sensitivity (1/s)
  double p = 1.0;        // own-lane OV weight
  double q = 0.0;        // adjacent-lane OV weight
  double lambda1 = 0.2;  // own-lane velocity-difference gain (1/s)
  double lambda2 = 0.0;  // adjacent-lane velocity-difference gain (1/s)
  double v_max = 4.0;    // m/s
  double h_c = 7.0;      // safety headway (m)
  double l_v = 5.0;      // vehicle length, lower gate bound (m)
  double d = 10.0;       // upper gate bound (m)

  bool operator==(const ModelParams&) const = default;
};

/// Throws std::invalid_argument on a violated invariant. Returns soft
/// warnings (currently only p + q != 1).
std::vector<std::string> validate(const ModelParams& params);

/// What the subject vehicle sees: its own leader and its adjacent-lane leader.
struct NeighborView {
  double v_self = 0.0;
  double headway = 0.0;
  double v_lead = 0.0;
  double lateral_headway = 0.0;
  double v_lateral_lead = 0.0;
};

double optimal_velocity(double headway, const ModelParams& params);

/// True when l_v <= lateral_headway < d. NaN and infinities close the gate.
bool lateral_gate_open(double lateral_headway, const ModelParams& params);

/// Gated OV term; exactly 0 when the gate is closed.
double lateral_optimal_velocity(double lateral_headway, const ModelParams& params);

/// v_lateral_lead - v_self inside the gate, exactly 0 outside.
double lateral_velocity_difference(const NeighborView& view, const ModelParams& params);

double acceleration(const NeighborView& view, const ModelParams& params);

/// Single-lane full velocity difference law alpha [V(h) - v] + lambda1 dv.
/// With q = 0 and lambda2 = 0, `acceleration` reduces to this bit for bit.
double single_lane_acceleration(double headway, double v_self, double v_lead,
                                const ModelParams& params);

/// Analytic derivative of optimal_velocity. `order` must be 1, 2 or 3.
double ov_derivative(double headway, int order, const ModelParams& params);

}  // namespace twolane
