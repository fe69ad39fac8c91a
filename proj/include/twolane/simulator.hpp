#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twolane/model.hpp"

namespace twolane {

inline constexpr std::size_t kLaneCount = 2;

/// Adds `delta` to the initial headway of vehicles first..last (inclusive).
struct HeadwayDelta {
  std::size_t first = 0;
  std::size_t last = 0;
  double delta = 0.0;

  bool operator==(const HeadwayDelta&) const = default;
};

struct PerturbationSpec {
  double baseline_headway = 7.0;
  std::vector<HeadwayDelta> deltas;

  bool operator==(const PerturbationSpec&) const = default;
};

struct RingConfig {
  std::size_t n_vehicles = 100;
  std::array<PerturbationSpec, kLaneCount> lanes;

  bool operator==(const RingConfig&) const = default;
};

/// 100 vehicles per lane at 7 m; vehicles 46..49 shortened by 0.1 m on lane 1
/// and 0.3 m on lane 2.
RingConfig reference_ring();

/// Throws std::invalid_argument on n_vehicles < 2, an out-of-range delta, or
/// a non-positive perturbed headway.
void validate(const RingConfig& config);

/// Initial headways of one lane after applying its perturbations.
std::vector<double> initial_headways(const PerturbationSpec& spec, std::size_t n_vehicles);

/// One lane of the ring. Vehicle n sits at (origin + positions[n]) mod
/// circumference. Positions are kept relative to a moving origin that follows
/// vehicle 0, so positions[0] never changes and positions[n] - positions[0]
/// stays in (0, circumference) as long as nobody overtakes. Uniform flow
/// therefore leaves `positions` bit-identical from step to step.
struct LaneState {
  std::vector<double> positions;
  std::vector<double> velocities;
  double circumference = 0.0;
  double origin = 0.0;  // in [0, circumference)
};

/// Ring coordinates in [0, circumference).
std::vector<double> absolute_positions(const LaneState& lane);

/// x mod circumference in [0, circumference).
double wrap(double x, double circumference);

struct SystemState {
  std::array<LaneState, kLaneCount> lanes;
  double time = 0.0;
};

/// Headway of every vehicle to its leader (vehicle n + 1, wrapping).
std::vector<double> headways(const LaneState& lane);

enum class Scheme { euler, rk4 };
enum class NeighborMode { nearest, paired };

/// `evaluated` applies the [l_v, d) gate to the instantaneous adjacent-lane
/// headway. `closed` switches the lateral terms off entirely.
enum class GateReading { evaluated, closed };

std::string_view to_string(Scheme s);
std::string_view to_string(NeighborMode m);
std::string_view to_string(GateReading g);
Scheme parse_scheme(std::string_view text);
NeighborMode parse_neighbor_mode(std::string_view text);
GateReading parse_gate_reading(std::string_view text);

/// Thrown on collisions, overtaking, or non-finite state.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Uniform-flow start: positions are the cumulative perturbed headways from 0,
/// every vehicle moves at p V(baseline) + q Vbar(baseline).
SystemState initialize(const RingConfig& config, const ModelParams& params,
                       GateReading gate = GateReading::evaluated);

struct AdjacentLeader {
  double headway = 0.0;
  double velocity = 0.0;
  std::size_t index = 0;
};

/// Resolves the adjacent-lane leader of `vehicle` on `lane`.
///
/// nearest: the other-lane vehicle with the smallest strictly positive gap
/// (pos_other - pos_self) mod circumference_self.
/// paired: the other lane's vehicle `vehicle + 1`, gap taken the same way.
AdjacentLeader adjacent_leader(const SystemState& state, std::size_t lane, std::size_t vehicle,
                               NeighborMode mode);

struct StepOptions {
  double dt = 0.1;
  Scheme scheme = Scheme::rk4;
  NeighborMode mode = NeighborMode::nearest;
  GateReading gate = GateReading::evaluated;
};

SystemState step(const SystemState& state, const ModelParams& params, const StepOptions& options);

struct SimOptions {
  double dt = 0.1;
  Scheme scheme = Scheme::rk4;
  NeighborMode mode = NeighborMode::nearest;
  GateReading gate = GateReading::evaluated;
  double duration = 1000.0;
  double sample_every = 1.0;
  // Samples before this time are dropped to bound memory on long runs.
  double record_from = 0.0;

  StepOptions step_options() const { return {dt, scheme, mode, gate}; }

  bool operator==(const SimOptions&) const = default;
};

void validate(const SimOptions& options);

struct LaneSample {
  std::vector<double> headways;
  std::vector<double> velocities;

  bool operator==(const LaneSample&) const = default;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<std::array<LaneSample, kLaneCount>> samples;
  std::array<double, kLaneCount> circumference{};
  // Lowest velocity seen on each lane at any sample. The model does not
  // forbid reversing, so this is a diagnostic only.
  std::array<double, kLaneCount> min_velocity{};

  bool operator==(const TrajectoryRecord&) const = default;
};

TrajectoryRecord run(const RingConfig& config, const ModelParams& params, const SimOptions& options);

/// Integrates an arbitrary starting state; `state.time` is the record origin.
TrajectoryRecord run_from(SystemState state, const ModelParams& params, const SimOptions& options);

/// Per lane, max - min headway over all samples with t0 <= t <= t1.
/// Throws std::invalid_argument if no sample lies in the window.
std::array<double, kLaneCount> measure_amplitude(const TrajectoryRecord& record, double t0,
                                                 double t1);

}  // namespace twolane
