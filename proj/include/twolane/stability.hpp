#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "twolane/model.hpp"

namespace twolane {

/// Uniform flow at headway `h` with sensitivity `a`. `gate_open` selects
/// whether the adjacent-lane OV slope equals the own-lane slope (true) or
/// vanishes (false).
struct OperatingPoint {
  double h = 7.0;
  double a = 2.85;
  bool gate_open = true;
};

enum class Stability { stable, neutral, unstable };

std::string_view to_string(Stability s);

struct LongWaveCoefficients {
  double z1 = 0.0;
  double z2 = 0.0;
};

struct StabilityReport {
  double z1 = 0.0;
  double z2 = 0.0;
  double a_c = 0.0;
  Stability classification = Stability::neutral;
};

/// Relative tolerance on |a - a_c| below which a point counts as neutral.
inline constexpr double kNeutralTolerance = 1e-12;

/// p V'(h) + q Vbar'(h): the slope that drives every linear and weakly
/// nonlinear result.
double effective_ov_slope(const OperatingPoint& point, const ModelParams& params);

/// Same combination for the third derivative; used by the MKdV reduction.
double effective_ov_third_derivative(const OperatingPoint& point, const ModelParams& params);

/// z = z1 (ik) + z2 (ik)^2 + ... for the perturbation growth rate.
/// Throws std::invalid_argument when a <= 0.
LongWaveCoefficients long_wave_coefficients(const OperatingPoint& point,
                                            const ModelParams& params);

/// a_c = 2 (pV' + qVbar') - 2 (lambda1 + lambda2). Can be non-positive, in
/// which case every a > 0 is stable.
double neutral_sensitivity(const OperatingPoint& point, const ModelParams& params);

Stability classify(const OperatingPoint& point, const ModelParams& params);

StabilityReport analyze(const OperatingPoint& point, const ModelParams& params);

struct SurfaceRow {
  double h = 0.0;
  double a_c = 0.0;
};

/// Neutral curve a_c(h) over a strictly increasing, nonempty headway grid.
std::vector<SurfaceRow> stability_surface(const ModelParams& params, std::span<const double> h_grid,
                                          bool gate_open);

}  // namespace twolane
