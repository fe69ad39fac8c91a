#pragma once

#include <span>
#include <string>
#include <vector>

#include "twolane/model.hpp"
#include "twolane/stability.hpp"

namespace twolane {

/// Where the sensitivity inside m1..m5 is evaluated. The two choices differ
/// at O(eps^2); `critical` is the default.
enum class CoefficientSensitivity { critical, raw };

/// Weakly nonlinear reduction near the critical point (h_c, a_c).
///
/// The headway envelope obeys
///   dR/dT - m1 R_XXX + m2 (R^3)_X + eps [m3 R_XX + m4 R_XXXX + m5 (R^3)_XX] = 0
/// and the solvability condition on the O(eps) term fixes the amplitude B of
/// the kink-antikink solution of the rescaled equation.
struct MkdvCoefficients {
  double a = 0.0;        // caller's sensitivity
  double a_c = 0.0;      // neutral sensitivity at h_c
  double b = 0.0;        // propagation constant pV' + qVbar'
  double epsilon = 0.0;  // sqrt(a_c / a - 1), 0 outside the kink regime
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double m5 = 0.0;
  double B = 0.0;
  double kink_amplitude = 0.0;  // headway amplitude A (m)
  bool valid = false;
  std::string reason;  // why valid == false; empty otherwise
};

/// Denominators below this magnitude are treated as degenerate.
inline constexpr double kDegenerateDenominator = 1e-12;

/// Requires point.h == params.h_c (the inflection point of V) and point.a > 0;
/// throws std::invalid_argument otherwise. Regimes without a kink (a >= a_c,
/// degenerate denominator, B <= 0) come back with valid == false.
MkdvCoefficients mkdv_coefficients(const ModelParams& params, const OperatingPoint& point,
                                   CoefficientSensitivity mode = CoefficientSensitivity::critical);

/// B = 5 m2 m3 / (2 m2 m4 - 3 m1 m5). Throws on invalid coefficients.
double soliton_amplitude(const MkdvCoefficients& coeffs);

/// Analytic kink-antikink headway profile dx_n(t) around h_c. Throws
/// std::domain_error when the coefficients are invalid.
double kink_headway(double n, double t, const ModelParams& params, const OperatingPoint& point,
                    CoefficientSensitivity mode = CoefficientSensitivity::critical);

/// Same profile from precomputed coefficients.
double kink_headway(double n, double t, const ModelParams& params, const MkdvCoefficients& coeffs);

struct CoexistingRow {
  double a = 0.0;
  double h_low = 0.0;
  double h_high = 0.0;
};

/// Coexisting headways h_c -/+ A for every grid sensitivity with a <= a_c.
/// At a == a_c (within the neutral tolerance) the row collapses to h_c.
std::vector<CoexistingRow> coexisting_curve(const ModelParams& params, bool gate_open,
                                            std::span<const double> a_grid,
                                            CoefficientSensitivity mode = CoefficientSensitivity::critical);

/// Sampling grid for the residual check. `dx` and `dt` are also the finite
/// difference steps.
struct ResidualGrid {
  double x_min = -10.0;
  double x_max = 10.0;
  double t_min = 0.0;
  double t_max = 1.0;
  double dx = 1e-2;
  double dt = 1e-3;
};

/// ResidualGrid{} rescaled to the kink width sqrt(B/2) and speed B, so a
/// steeper kink is sampled at the same relative resolution. Equals the
/// default grid at B = 1.
ResidualGrid relative_residual_grid(double B);

/// Max |dR/dT - R_XXX + (R^3)_X| for R = sqrt(B) tanh(sqrt(B/2)(X - B T))
/// over the grid, every derivative a second-order central difference.
double standard_mkdv_residual(double B, const ResidualGrid& grid = {});

}  // namespace twolane
