#include "twolane/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace twolane {

namespace {

using Field = std::array<std::vector<double>, kLaneCount>;

std::string describe(std::size_t lane, std::size_t vehicle, double time) {
  std::ostringstream os;
  os << "lane " << lane + 1 << " vehicle " << vehicle << " at t=" << time << " s";
  return os.str();
}

}  // namespace

RingConfig reference_ring() {
  RingConfig config;
  config.n_vehicles = 100;
  config.lanes[0] = {7.0, {{46, 49, -0.1}}};
  config.lanes[1] = {7.0, {{46, 49, -0.3}}};
  return config;
}

void validate(const RingConfig& config) {
  if (config.n_vehicles < 2) throw std::invalid_argument("n_vehicles must be at least 2");
  for (const auto& lane : config.lanes) {
    for (const auto& d : lane.deltas) {
      if (d.first > d.last || d.last >= config.n_vehicles) {
        throw std::invalid_argument("perturbation index range out of bounds");
      }
    }
    for (double h : initial_headways(lane, config.n_vehicles)) {
      if (!(h > 0.0)) throw std::invalid_argument("initial headways must be positive");
    }
  }
}

std::vector<double> initial_headways(const PerturbationSpec& spec, std::size_t n_vehicles) {
  std::vector<double> h(n_vehicles, spec.baseline_headway);
  for (const auto& d : spec.deltas) {
    for (std::size_t n = d.first; n <= d.last && n < n_vehicles; ++n) h[n] += d.delta;
  }
  return h;
}

double wrap(double x, double circumference) {
  double r = x - circumference * std::floor(x / circumference);
  if (r >= circumference || r < 0.0) r = 0.0;
  return r;
}

std::vector<double> absolute_positions(const LaneState& lane) {
  std::vector<double> out(lane.positions.size());
  std::transform(lane.positions.begin(), lane.positions.end(), out.begin(),
                 [&](double x) { return wrap(lane.origin + x, lane.circumference); });
  return out;
}

std::vector<double> headways(const LaneState& lane) {
  const auto& x = lane.positions;
  const std::size_t n = x.size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];
  if (n > 0) h[n - 1] = (x[0] + lane.circumference) - x[n - 1];
  return h;
}

std::string_view to_string(Scheme s) { return s == Scheme::euler ? "euler" : "rk4"; }
std::string_view to_string(NeighborMode m) {
  return m == NeighborMode::nearest ? "nearest" : "paired";
}
std::string_view to_string(GateReading g) {
  return g == GateReading::evaluated ? "evaluated" : "closed";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "euler") return Scheme::euler;
  if (text == "rk4") return Scheme::rk4;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (euler|rk4)");
}

NeighborMode parse_neighbor_mode(std::string_view text) {
  if (text == "nearest") return NeighborMode::nearest;
  if (text == "paired") return NeighborMode::paired;
  throw std::invalid_argument("unknown neighbor mode '" + std::string(text) + "' (nearest|paired)");
}

GateReading parse_gate_reading(std::string_view text) {
  if (text == "evaluated") return GateReading::evaluated;
  if (text == "closed") return GateReading::closed;
  throw std::invalid_argument("unknown gate reading '" + std::string(text) +
                              "' (evaluated|closed)");
}

SystemState initialize(const RingConfig& config, const ModelParams& params, GateReading gate) {
  validate(config);
  SystemState state;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    const auto& spec = config.lanes[k];
    const auto h = initial_headways(spec, config.n_vehicles);
    auto& lane = state.lanes[k];
    lane.positions.resize(h.size());
    double x = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n) {
      lane.positions[n] = x;
      x += h[n];
    }
    lane.circumference = x;
    const double lateral = gate == GateReading::evaluated
                               ? lateral_optimal_velocity(spec.baseline_headway, params)
                               : 0.0;
    const double v0 = params.p * optimal_velocity(spec.baseline_headway, params) + params.q * lateral;
    lane.velocities.assign(h.size(), v0);
  }
  return state;
}

namespace {

/// Other lane's vehicles expressed in the subject lane's frame: coordinates
/// relative to the subject's vehicle 0, wrapped into [0, C_self), sorted.
struct LateralFrame {
  std::vector<std::pair<double, std::size_t>> sorted;
  std::vector<double> coordinate;  // by other-lane index
  std::vector<double> self;        // subject vehicle coordinates
  double circumference = 0.0;
};

LateralFrame make_frame(const SystemState& state, std::size_t lane, bool sort) {
  const auto& me = state.lanes[lane];
  const auto& other = state.lanes[1 - lane];
  LateralFrame f;
  f.circumference = me.circumference;
  const double shift = (other.origin - me.origin) - me.positions[0];
  f.coordinate.resize(other.positions.size());
  for (std::size_t j = 0; j < other.positions.size(); ++j) {
    f.coordinate[j] = wrap(shift + other.positions[j], me.circumference);
  }
  f.self.resize(me.positions.size());
  for (std::size_t n = 0; n < me.positions.size(); ++n) {
    f.self[n] = me.positions[n] - me.positions[0];
  }
  if (sort) {
    f.sorted.resize(f.coordinate.size());
    for (std::size_t j = 0; j < f.coordinate.size(); ++j) f.sorted[j] = {f.coordinate[j], j};
    std::sort(f.sorted.begin(), f.sorted.end());
  }
  return f;
}

/// Returns (gap, other-lane index).
std::pair<double, std::size_t> resolve(const LateralFrame& f, std::size_t vehicle,
                                       NeighborMode mode) {
  const double u = f.self[vehicle];
  if (mode == NeighborMode::paired) {
    const std::size_t j = (vehicle + 1) % f.coordinate.size();
    return {wrap(f.coordinate[j] - u, f.circumference), j};
  }
  auto it = std::upper_bound(f.sorted.begin(), f.sorted.end(), u,
                             [](double value, const auto& e) { return value < e.first; });
  if (it != f.sorted.end()) return {it->first - u, it->second};
  // Nothing ahead before the seam: first vehicle after wrapping around.
  for (const auto& e : f.sorted) {
    const double gap = (e.first + f.circumference) - u;
    if (gap > 0.0 && gap < f.circumference) return {gap, e.second};
  }
  return {std::numeric_limits<double>::infinity(), 0};
}

Field accelerations(const SystemState& state, const ModelParams& params, NeighborMode mode,
                    GateReading gate) {
  Field acc;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    const auto& lane = state.lanes[k];
    const auto& other = state.lanes[1 - k];
    const auto h = headways(lane);
    const std::size_t n_veh = lane.positions.size();
    acc[k].resize(n_veh);
    const bool lateral = gate == GateReading::evaluated;
    LateralFrame frame;
    if (lateral) frame = make_frame(state, k, mode == NeighborMode::nearest);
    for (std::size_t n = 0; n < n_veh; ++n) {
      NeighborView view;
      view.v_self = lane.velocities[n];
      view.headway = h[n];
      view.v_lead = lane.velocities[(n + 1) % n_veh];
      if (lateral) {
        const auto [gap, j] = resolve(frame, n, mode);
        view.lateral_headway = gap;
        view.v_lateral_lead = other.velocities[j];
      } else {
        view.lateral_headway = std::numeric_limits<double>::infinity();
        view.v_lateral_lead = 0.0;
      }
      acc[k][n] = acceleration(view, params);
    }
  }
  return acc;
}

Field velocities_of(const SystemState& s) {
  Field v;
  for (std::size_t k = 0; k < kLaneCount; ++k) v[k] = s.lanes[k].velocities;
  return v;
}

/// base + scale * (dx, dv); the origin follows vehicle 0's displacement.
SystemState displaced(const SystemState& base, const Field& dx, const Field& dv, double scale) {
  SystemState out = base;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    auto& lane = out.lanes[k];
    const double lead_shift = scale * dx[k][0];
    lane.origin = wrap(lane.origin + lead_shift, lane.circumference);
    for (std::size_t n = 1; n < lane.positions.size(); ++n) {
      lane.positions[n] += scale * dx[k][n] - lead_shift;
    }
    for (std::size_t n = 0; n < lane.velocities.size(); ++n) {
      lane.velocities[n] += scale * dv[k][n];
    }
  }
  return out;
}

Field combine(const Field& k1, const Field& k2, const Field& k3, const Field& k4) {
  Field out;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    out[k].resize(k1[k].size());
    for (std::size_t n = 0; n < k1[k].size(); ++n) {
      out[k][n] = (k1[k][n] + 2.0 * k2[k][n] + 2.0 * k3[k][n] + k4[k][n]) / 6.0;
    }
  }
  return out;
}

void check_state(const SystemState& s) {
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    const auto& lane = s.lanes[k];
    for (std::size_t n = 0; n < lane.positions.size(); ++n) {
      if (!std::isfinite(lane.positions[n]) || !std::isfinite(lane.velocities[n])) {
        throw SimulationError("non-finite state on " + describe(k, n, s.time), s.time);
      }
    }
    const auto h = headways(lane);
    for (std::size_t n = 0; n < h.size(); ++n) {
      if (!(h[n] > 0.0)) {
        std::ostringstream os;
        os << "collision or overtaking: headway " << h[n] << " m on " << describe(k, n, s.time);
        throw SimulationError(os.str(), s.time);
      }
    }
  }
}

}  // namespace

AdjacentLeader adjacent_leader(const SystemState& state, std::size_t lane, std::size_t vehicle,
                               NeighborMode mode) {
  if (lane >= kLaneCount || vehicle >= state.lanes[lane].positions.size()) {
    throw std::out_of_range("adjacent_leader: index out of range");
  }
  const auto frame = make_frame(state, lane, mode == NeighborMode::nearest);
  const auto [gap, j] = resolve(frame, vehicle, mode);
  return {gap, state.lanes[1 - lane].velocities[j], j};
}

SystemState step(const SystemState& state, const ModelParams& params, const StepOptions& options) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const double dt = options.dt;
  SystemState next;
  if (options.scheme == Scheme::euler) {
    const auto a = accelerations(state, params, options.mode, options.gate);
    next = displaced(state, velocities_of(state), a, dt);
  } else {
    const auto v1 = velocities_of(state);
    const auto a1 = accelerations(state, params, options.mode, options.gate);
    const auto s2 = displaced(state, v1, a1, 0.5 * dt);
    const auto v2 = velocities_of(s2);
    const auto a2 = accelerations(s2, params, options.mode, options.gate);
    const auto s3 = displaced(state, v2, a2, 0.5 * dt);
    const auto v3 = velocities_of(s3);
    const auto a3 = accelerations(s3, params, options.mode, options.gate);
    const auto s4 = displaced(state, v3, a3, dt);
    const auto v4 = velocities_of(s4);
    const auto a4 = accelerations(s4, params, options.mode, options.gate);
    next = displaced(state, combine(v1, v2, v3, v4), combine(a1, a2, a3, a4), dt);
  }
  next.time = state.time + dt;
  check_state(next);
  return next;
}

void validate(const SimOptions& options) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(options.duration >= 0.0)) throw std::invalid_argument("duration must be non-negative");
  if (!(options.sample_every > 0.0)) throw std::invalid_argument("sample_every must be positive");
  const double ratio = options.sample_every / options.dt;
  if (ratio < 1.0 - 1e-9 || std::abs(ratio - std::round(ratio)) > 1e-6) {
    throw std::invalid_argument("sample_every must be a positive multiple of dt");
  }
}

namespace {

void record_sample(TrajectoryRecord& rec, const SystemState& s) {
  std::array<LaneSample, kLaneCount> sample;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    sample[k].headways = headways(s.lanes[k]);
    sample[k].velocities = s.lanes[k].velocities;
    for (double v : sample[k].velocities) rec.min_velocity[k] = std::min(rec.min_velocity[k], v);
  }
  rec.times.push_back(s.time);
  rec.samples.push_back(std::move(sample));
}

}  // namespace

TrajectoryRecord run_from(SystemState state, const ModelParams& params, const SimOptions& options) {
  validate(options);
  validate(params);
  check_state(state);

  const auto stride = static_cast<long>(std::llround(options.sample_every / options.dt));
  const auto n_steps = static_cast<long>(std::floor(options.duration / options.dt + 1e-9));
  const double t0 = state.time;
  const auto step_opts = options.step_options();

  TrajectoryRecord rec;
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    rec.circumference[k] = state.lanes[k].circumference;
    rec.min_velocity[k] = std::numeric_limits<double>::infinity();
  }
  auto wants = [&](long i) {
    return i % stride == 0 && t0 + static_cast<double>(i) * options.dt >= options.record_from - 1e-9;
  };
  if (wants(0)) record_sample(rec, state);
  for (long i = 1; i <= n_steps; ++i) {
    state = step(state, params, step_opts);
    // Multiply instead of accumulating so sample times stay exact.
    state.time = t0 + static_cast<double>(i) * options.dt;
    if (wants(i)) record_sample(rec, state);
  }
  return rec;
}

TrajectoryRecord run(const RingConfig& config, const ModelParams& params, const SimOptions& options) {
  return run_from(initialize(config, params, options.gate), params, options);
}

std::array<double, kLaneCount> measure_amplitude(const TrajectoryRecord& record, double t0,
                                                 double t1) {
  std::array<double, kLaneCount> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  bool any = false;
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    const double t = record.times[i];
    if (t < t0 - 1e-9 || t > t1 + 1e-9) continue;
    any = true;
    for (std::size_t k = 0; k < kLaneCount; ++k) {
      const auto& h = record.samples[i][k].headways;
      const auto [mn, mx] = std::minmax_element(h.begin(), h.end());
      lo[k] = std::min(lo[k], *mn);
      hi[k] = std::max(hi[k], *mx);
    }
  }
  if (!any) throw std::invalid_argument("measure_amplitude: no samples inside the window");
  std::array<double, kLaneCount> amp;
  for (std::size_t k = 0; k < kLaneCount; ++k) amp[k] = hi[k] - lo[k];
  return amp;
}

}  // namespace twolane
