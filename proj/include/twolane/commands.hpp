#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twolane/config.hpp"
#include "twolane/mkdv.hpp"
#include "twolane/simulator.hpp"
#include "twolane/stability.hpp"

namespace twolane {

/// Whether Vbar' counts at headway h under a simulator gate reading.
bool gate_open_at(double h, const ModelParams& params, GateReading gate);

struct LaneOutcome {
  double initial_swing = 0.0;  // max - min headway at the first sample
  double final_swing = 0.0;    // same at the last sample
  double window_swing = 0.0;   // max - min over the measurement window
  double min_velocity = 0.0;
  bool decayed = false;        // final_swing < initial_swing
};

std::array<LaneOutcome, kLaneCount> summarize(const TrajectoryRecord& record,
                                              const MeasureOptions& measure);

struct SimulateResult {
  std::vector<std::filesystem::path> files;
  std::array<LaneOutcome, kLaneCount> lanes{};
  StabilityReport stability;
  MkdvCoefficients coefficients;
  double predicted_swing = 0.0;  // 2 A, 0 when no kink is predicted
  std::optional<std::string> abort_diagnostic;
  std::string summary;
};

/// Runs the manifest's simulation and writes lane<k>_spacetime.csv,
/// lane<k>_profile_t<T>.csv (+ .svg) and summary.txt into `out_dir`.
/// A simulator abort is reported in the summary instead of thrown.
SimulateResult cmd_simulate(const RunManifest& manifest, const std::filesystem::path& out_dir);

struct CurveSet {
  std::string name;
  bool gate_open = true;
  std::vector<SurfaceRow> surface;
  std::vector<CoexistingRow> coexisting;
};

struct StabilityMapResult {
  std::vector<std::filesystem::path> files;
  std::vector<CurveSet> curves;
};

/// stability_surface.csv and coexisting_curve.csv for [model] and every named
/// parameter set, under both gate readings.
StabilityMapResult cmd_stability_map(const RunManifest& manifest,
                                     const std::filesystem::path& out_dir);

struct SolitonResult {
  std::vector<std::filesystem::path> files;
  MkdvCoefficients coefficients;
};

/// soliton_profile.csv (rows n, one column per requested time) and
/// summary.txt. Throws std::domain_error when no kink exists.
SolitonResult cmd_soliton(const RunManifest& manifest, const std::filesystem::path& out_dir);

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double measured = 0.0;
  std::string detail;
};

/// One neighbor-mode x gate-reading cell of the lateral-coupling comparison.
struct ReadingOutcome {
  NeighborMode mode = NeighborMode::nearest;
  GateReading gate = GateReading::evaluated;
  double a_c = 0.0;  // closed form at the lane-1 baseline headway
  Stability classification = Stability::neutral;
  std::array<LaneOutcome, kLaneCount> lanes{};
  std::optional<std::string> abort_diagnostic;
  bool consistent = false;
};

std::vector<ReadingOutcome> compare_readings(const RunManifest& manifest);

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<ReadingOutcome> readings;

  bool all_passed() const;
  std::string to_text() const;
};

using DerivativeFn = std::function<double(double, int, const ModelParams&)>;

struct ValidationHooks {
  DerivativeFn derivative = ov_derivative;
  bool include_simulations = true;
};

/// Max |analytic - finite difference| over 100 seeded headways in [0, 20].
CheckResult check_ov_derivatives(const ModelParams& params, const DerivativeFn& derivative);

ValidationReport cmd_validate(const RunManifest& manifest, const ValidationHooks& hooks = {});

}  // namespace twolane
