#include "twolane/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "twolane/output.hpp"

namespace twolane {

namespace fs = std::filesystem;

bool gate_open_at(double h, const ModelParams& params, GateReading gate) {
  return gate == GateReading::evaluated && lateral_gate_open(h, params);
}

namespace {

std::string num(double x) { return format_cell(x); }

double swing(const std::vector<double>& h) {
  const auto [mn, mx] = std::minmax_element(h.begin(), h.end());
  return *mx - *mn;
}

OperatingPoint operating_point(const RunManifest& m, const ModelParams& params) {
  const double h = m.ring.lanes[0].baseline_headway;
  return {h, params.alpha, gate_open_at(h, params, m.sim.gate)};
}

OperatingPoint critical_point(const RunManifest& m, const ModelParams& params) {
  return {params.h_c, params.alpha, gate_open_at(params.h_c, params, m.sim.gate)};
}

void write_model(std::ostream& os, const ModelParams& p) {
  os << "alpha = " << num(p.alpha) << "\np = " << num(p.p) << "\nq = " << num(p.q)
     << "\nlambda1 = " << num(p.lambda1) << "\nlambda2 = " << num(p.lambda2)
     << "\nv_max = " << num(p.v_max) << "\nh_c = " << num(p.h_c) << "\nl_v = " << num(p.l_v)
     << "\nd = " << num(p.d) << "\n";
}

void write_coefficients(std::ostream& os, const MkdvCoefficients& c) {
  os << "mkdv_valid = " << (c.valid ? "true" : "false") << "\n";
  if (!c.reason.empty()) os << "mkdv_reason = " << c.reason << "\n";
  os << "b = " << num(c.b) << "\nepsilon = " << num(c.epsilon) << "\nm1 = " << num(c.m1)
     << "\nm2 = " << num(c.m2) << "\nm3 = " << num(c.m3) << "\nm4 = " << num(c.m4)
     << "\nm5 = " << num(c.m5) << "\nB = " << num(c.B)
     << "\nkink_amplitude_m = " << num(c.kink_amplitude) << "\n";
}

bool conserved(const TrajectoryRecord& rec, double& worst) {
  worst = 0.0;
  bool ordered = true;
  for (const auto& sample : rec.samples) {
    for (std::size_t k = 0; k < kLaneCount; ++k) {
      const auto& h = sample[k].headways;
      double sum = 0.0;
      for (double x : h) {
        sum += x;
        if (!(x > 0.0)) ordered = false;
      }
      worst = std::max(worst, std::abs(sum - rec.circumference[k]) / rec.circumference[k]);
    }
  }
  return ordered;
}

}  // namespace

std::array<LaneOutcome, kLaneCount> summarize(const TrajectoryRecord& record,
                                              const MeasureOptions& measure) {
  std::array<LaneOutcome, kLaneCount> out{};
  if (record.times.empty()) return out;
  std::array<double, kLaneCount> window{};
  try {
    window = measure_amplitude(record, measure.window_start, measure.window_end);
  } catch (const std::invalid_argument&) {
    const double last = record.times.back();
    window = measure_amplitude(record, last, last);
  }
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    out[k].initial_swing = swing(record.samples.front()[k].headways);
    out[k].final_swing = swing(record.samples.back()[k].headways);
    out[k].window_swing = window[k];
    out[k].min_velocity = record.min_velocity[k];
    out[k].decayed = out[k].final_swing < out[k].initial_swing;
  }
  return out;
}

SimulateResult cmd_simulate(const RunManifest& manifest, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  SimulateResult result;
  result.stability = analyze(operating_point(manifest, manifest.model), manifest.model);
  result.coefficients =
      mkdv_coefficients(manifest.model, critical_point(manifest, manifest.model), manifest.coefficients);
  if (result.coefficients.valid) result.predicted_swing = 2.0 * result.coefficients.kink_amplitude;

  TrajectoryRecord record;
  try {
    record = run(manifest.ring, manifest.model, manifest.sim);
  } catch (const SimulationError& e) {
    result.abort_diagnostic = e.what();
  }

  if (!result.abort_diagnostic) {
    result.lanes = summarize(record, manifest.measure);
    const std::size_t profile = nearest_sample(record, manifest.measure.profile_time);
    const std::string label = time_label(record.times[profile]);
    for (std::size_t k = 0; k < kLaneCount; ++k) {
      const std::string lane = "lane" + std::to_string(k + 1);
      const fs::path st = out_dir / (lane + "_spacetime.csv");
      write_file_atomic(st, spacetime_csv(record, k));
      const fs::path pr = out_dir / (lane + "_profile_t" + label + ".csv");
      const std::string profile_text = profile_csv(record, k, profile);
      write_file_atomic(pr, profile_text);
      const fs::path svg = out_dir / (lane + "_profile_t" + label + ".svg");
      write_file_atomic(svg, render_profile_svg(profile_text));
      result.files.insert(result.files.end(), {st, pr, svg});
    }
  }

  std::ostringstream os;
  os << "# two-lane ring simulation\n";
  write_model(os, manifest.model);
  os << "n_vehicles = " << manifest.ring.n_vehicles << "\n"
     << "scheme = " << to_string(manifest.sim.scheme) << "\n"
     << "dt_s = " << num(manifest.sim.dt) << "\n"
     << "duration_s = " << num(manifest.sim.duration) << "\n"
     << "neighbor_mode = " << to_string(manifest.sim.mode) << "\n"
     << "gate = " << to_string(manifest.sim.gate) << "\n"
     << "a_c = " << num(result.stability.a_c) << "\n"
     << "z1 = " << num(result.stability.z1) << "\n"
     << "z2 = " << num(result.stability.z2) << "\n"
     << "classification = " << to_string(result.stability.classification) << "\n";
  write_coefficients(os, result.coefficients);
  os << "predicted_swing_m = " << num(result.predicted_swing) << "\n";
  if (result.abort_diagnostic) {
    os << "status = aborted\ndiagnostic = " << *result.abort_diagnostic << "\n";
  } else {
    os << "status = completed\n"
       << "window_s = " << num(manifest.measure.window_start) << " "
       << num(manifest.measure.window_end) << "\n";
    for (std::size_t k = 0; k < kLaneCount; ++k) {
      const auto& l = result.lanes[k];
      const std::string p = "lane" + std::to_string(k + 1) + "_";
      os << p << "circumference_m = " << num(record.circumference[k]) << "\n"
         << p << "initial_swing_m = " << num(l.initial_swing) << "\n"
         << p << "final_swing_m = " << num(l.final_swing) << "\n"
         << p << "window_swing_m = " << num(l.window_swing) << "\n"
         << p << "min_velocity_m_s = " << num(l.min_velocity) << "\n"
         << p << "decayed = " << (l.decayed ? "true" : "false") << "\n";
    }
  }
  result.summary = os.str();
  const fs::path summary = out_dir / "summary.txt";
  write_file_atomic(summary, result.summary);
  result.files.push_back(summary);
  return result;
}

StabilityMapResult cmd_stability_map(const RunManifest& manifest, const fs::path& out_dir) {
  const auto h_grid = expand(manifest.h_grid);
  const auto a_grid = expand(manifest.a_grid);
  if (h_grid.empty() || a_grid.empty()) throw std::invalid_argument("stability-map: empty grid");
  fs::create_directories(out_dir);

  std::vector<NamedParams> sets{{"model", manifest.model}};
  sets.insert(sets.end(), manifest.param_sets.begin(), manifest.param_sets.end());

  StabilityMapResult result;
  for (const auto& set : sets) {
    for (bool open : {true, false}) {
      CurveSet c;
      c.name = set.name;
      c.gate_open = open;
      c.surface = stability_surface(set.params, h_grid, open);
      c.coexisting = coexisting_curve(set.params, open, a_grid, manifest.coefficients);
      result.curves.push_back(std::move(c));
    }
  }
  auto column = [](const CurveSet& c) {
    return c.name + (c.gate_open ? "_open" : "_closed");
  };

  std::ostringstream surface;
  surface << "h_m";
  for (const auto& c : result.curves) surface << ",a_c_" << column(c) << "_1_s";
  surface << "\n";
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    surface << num(h_grid[i]);
    for (const auto& c : result.curves) surface << "," << num(c.surface[i].a_c);
    surface << "\n";
  }

  std::ostringstream coexist;
  coexist << "a_1_s";
  for (const auto& c : result.curves) {
    coexist << ",h_low_" << column(c) << "_m,h_high_" << column(c) << "_m";
  }
  coexist << "\n";
  for (double a : a_grid) {
    coexist << num(a);
    for (const auto& c : result.curves) {
      auto it = std::find_if(c.coexisting.begin(), c.coexisting.end(),
                             [&](const CoexistingRow& r) { return r.a == a; });
      if (it == c.coexisting.end()) {
        coexist << ",,";
      } else {
        coexist << "," << num(it->h_low) << "," << num(it->h_high);
      }
    }
    coexist << "\n";
  }

  std::ostringstream summary;
  summary << "# headway-sensitivity stability map\n";
  for (const auto& set : sets) {
    for (bool open : {true, false}) {
      const double peak = neutral_sensitivity({set.params.h_c, 1.0, open}, set.params);
      summary << "peak_a_c_" << set.name << (open ? "_open" : "_closed") << " = " << num(peak)
              << "\n";
    }
  }

  const fs::path s1 = out_dir / "stability_surface.csv";
  const fs::path s2 = out_dir / "coexisting_curve.csv";
  const fs::path s3 = out_dir / "summary.txt";
  write_file_atomic(s1, surface.str());
  write_file_atomic(s2, coexist.str());
  write_file_atomic(s3, summary.str());
  result.files = {s1, s2, s3};
  return result;
}

SolitonResult cmd_soliton(const RunManifest& manifest, const fs::path& out_dir) {
  SolitonResult result;
  result.coefficients =
      mkdv_coefficients(manifest.model, critical_point(manifest, manifest.model), manifest.coefficients);
  if (!result.coefficients.valid) {
    throw std::domain_error("soliton: no kink-antikink solution (" + result.coefficients.reason + ")");
  }
  fs::create_directories(out_dir);

  std::ostringstream csv;
  csv << "n";
  for (double t : manifest.soliton.times) csv << ",headway_m_t" << time_label(t) << "s";
  csv << "\n";
  for (long n = manifest.soliton.n_min; n <= manifest.soliton.n_max; ++n) {
    csv << n;
    for (double t : manifest.soliton.times) {
      csv << "," << num(kink_headway(static_cast<double>(n), t, manifest.model, result.coefficients));
    }
    csv << "\n";
  }

  std::ostringstream summary;
  summary << "# MKdV kink-antikink solution\n";
  write_model(summary, manifest.model);
  summary << "a_c = " << num(result.coefficients.a_c) << "\n";
  write_coefficients(summary, result.coefficients);
  summary << "coexisting_low_m = " << num(manifest.model.h_c - result.coefficients.kink_amplitude)
          << "\ncoexisting_high_m = "
          << num(manifest.model.h_c + result.coefficients.kink_amplitude) << "\n";

  const fs::path p1 = out_dir / "soliton_profile.csv";
  const fs::path p2 = out_dir / "summary.txt";
  write_file_atomic(p1, csv.str());
  write_file_atomic(p2, summary.str());
  result.files = {p1, p2};
  return result;
}

std::vector<ReadingOutcome> compare_readings(const RunManifest& manifest) {
  std::vector<ReadingOutcome> out;
  const auto& params = manifest.model;
  const double h = manifest.ring.lanes[0].baseline_headway;
  for (NeighborMode mode : {NeighborMode::nearest, NeighborMode::paired}) {
    for (GateReading gate : {GateReading::evaluated, GateReading::closed}) {
      ReadingOutcome r;
      r.mode = mode;
      r.gate = gate;
      const OperatingPoint point{h, params.alpha, gate_open_at(h, params, gate)};
      r.a_c = neutral_sensitivity(point, params);
      r.classification = classify(point, params);

      SimOptions opts = manifest.sim;
      opts.mode = mode;
      opts.gate = gate;
      TrajectoryRecord rec;
      try {
        rec = run(manifest.ring, params, opts);
        r.lanes = summarize(rec, manifest.measure);
      } catch (const SimulationError& e) {
        r.abort_diagnostic = e.what();
      }

      // Closed form rebuilt from the tanh profile directly.
      const double sech2 = 1.0 - std::pow(std::tanh(h - params.h_c), 2);
      const double weight = params.p + (point.gate_open ? params.q : 0.0);
      const double expected =
          2.0 * weight * 0.5 * params.v_max * sech2 - 2.0 * (params.lambda1 + params.lambda2);
      double drift = 0.0;
      const bool ordered = r.abort_diagnostic ? false : conserved(rec, drift);
      const bool class_ok = (r.classification == Stability::stable) == (params.alpha > r.a_c) ||
                            r.classification == Stability::neutral;
      r.consistent = std::abs(r.a_c - expected) <= 1e-12 * std::max(1.0, std::abs(expected)) &&
                     ordered && drift < 1e-9 && class_ok;
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

double fd_derivative(double h, int order, const ModelParams& params) {
  auto f = [&](double x) { return optimal_velocity(x, params); };
  auto central = [&](double s) {
    switch (order) {
      case 1:
        return (f(h + s) - f(h - s)) / (2.0 * s);
      case 2:
        return (f(h + s) - 2.0 * f(h) + f(h - s)) / (s * s);
      default:
        return (f(h + 2.0 * s) - 2.0 * f(h + s) + 2.0 * f(h - s) - f(h - 2.0 * s)) / (2.0 * s * s * s);
    }
  };
  const double s = 1e-2;
  const double d1 = central(s), d2 = central(s / 2.0), d3 = central(s / 4.0);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::skip:
      return "SKIP";
  }
  return "?";
}

CheckResult check_stability_equivalence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.p = 0.05 + 0.95 * unit(rng);
    p.q = unit(rng);
    p.lambda1 = 0.5 * unit(rng);
    p.lambda2 = 0.5 * unit(rng);
    p.v_max = 1.0 + 4.0 * unit(rng);
    const OperatingPoint point{14.0 * unit(rng) + 1e-3, 0.05 + 6.0 * unit(rng), unit(rng) < 0.5};
    const auto r = analyze(point, p);
    const bool stable = r.classification == Stability::stable;
    if (r.classification == Stability::neutral) continue;
    if (stable != (r.z2 > 0.0) || stable != (point.a > r.a_c)) ++mismatches;
  }
  CheckResult c{"linear stability: sign(z2) == sign(a - a_c) on 1000 points",
                mismatches == 0 ? CheckStatus::pass : CheckStatus::fail,
                static_cast<double>(mismatches), "mismatches"};
  return c;
}

CheckResult check_amplitude_consistency(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int draws = 0;
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.p = 0.5 + 0.5 * unit(rng);
    p.q = 0.5 * unit(rng);
    p.lambda1 = 0.3 * unit(rng);
    p.lambda2 = 0.1 * unit(rng);
    const bool open = unit(rng) < 0.5;
    const double a_c = neutral_sensitivity({p.h_c, 1.0, open}, p);
    const double a = a_c * (0.3 + 0.69 * unit(rng));
    const auto c = mkdv_coefficients(p, {p.h_c, a, open});
    if (!c.valid) continue;
    ++draws;
    const double lhs = c.kink_amplitude * c.kink_amplitude;
    const double rhs = c.epsilon * c.epsilon * (c.m1 / c.m2) * soliton_amplitude(c);
    worst = std::max(worst, std::abs(lhs - rhs) / lhs);
  }
  return {"kink amplitude^2 == eps^2 (m1/m2) B", worst <= 1e-12 && draws > 0 ? CheckStatus::pass : CheckStatus::fail,
          worst, "max relative error over " + std::to_string(draws) + " valid draws"};
}

}  // namespace

CheckResult check_ov_derivatives(const ModelParams& params, const DerivativeFn& derivative) {
  std::mt19937_64 rng(20141101);
  std::uniform_real_distribution<double> dist(0.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double h = dist(rng);
    for (int order = 1; order <= 3; ++order) {
      double analytic = 0.0;
      try {
        analytic = derivative(h, order, params);
      } catch (const std::exception&) {
        analytic = std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, std::abs(analytic - fd_derivative(h, order, params)));
    }
  }
  return {"OV derivatives match finite differences (< 1e-6)",
          worst < 1e-6 ? CheckStatus::pass : CheckStatus::fail, worst, "max abs error, orders 1-3"};
}

bool ValidationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << status_text(c.status) << "  " << c.name << "  measured=" << num(c.measured);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  if (!readings.empty()) {
    os << "\n# neighbor mode x gate reading\n"
       << "mode,gate,a_c,classification,lane1_initial_m,lane1_final_m,lane2_initial_m,"
          "lane2_final_m,decayed,consistent\n";
    for (const auto& r : readings) {
      os << to_string(r.mode) << "," << to_string(r.gate) << "," << num(r.a_c) << ","
         << to_string(r.classification) << ",";
      if (r.abort_diagnostic) {
        os << "aborted: " << *r.abort_diagnostic << ",,,,,";
      } else {
        os << num(r.lanes[0].initial_swing) << "," << num(r.lanes[0].final_swing) << ","
           << num(r.lanes[1].initial_swing) << "," << num(r.lanes[1].final_swing) << ","
           << (r.lanes[0].decayed && r.lanes[1].decayed ? "yes" : "no") << ",";
      }
      os << (r.consistent ? "yes" : "no") << "\n";
    }
  }
  return os.str();
}

ValidationReport cmd_validate(const RunManifest& manifest, const ValidationHooks& hooks) {
  ValidationReport report;
  const auto& params = manifest.model;
  std::mt19937_64 rng(7);

  report.checks.push_back(check_ov_derivatives(params, hooks.derivative));
  report.checks.push_back(check_stability_equivalence(rng));
  report.checks.push_back(check_amplitude_consistency(rng));

  const auto point = critical_point(manifest, params);
  const auto coeffs = mkdv_coefficients(params, point, manifest.coefficients);
  if (classify(point, params) == Stability::neutral) {
    report.checks.push_back({"MKdV residual", CheckStatus::skip, 0.0, "neutral point"});
  } else if (!coeffs.valid) {
    report.checks.push_back({"MKdV residual", CheckStatus::skip, 0.0, coeffs.reason});
  } else {
    const double B = coeffs.B;
    const auto grid = relative_residual_grid(B);
    const double coarse = standard_mkdv_residual(B, grid);
    auto fine_grid = grid;
    fine_grid.dx /= 2.0;
    fine_grid.dt /= 2.0;
    fine_grid.t_max = fine_grid.t_min + (grid.t_max - grid.t_min) / 10.0;
    auto coarse_short = grid;
    coarse_short.t_max = fine_grid.t_max;
    const double ratio =
        standard_mkdv_residual(B, coarse_short) / standard_mkdv_residual(B, fine_grid);
    report.checks.push_back({"MKdV residual < 1e-3", coarse < 1e-3 ? CheckStatus::pass : CheckStatus::fail,
                             coarse, "B = " + num(B)});
    report.checks.push_back({"MKdV residual second-order under refinement",
                             ratio > 3.0 && ratio < 5.0 ? CheckStatus::pass : CheckStatus::fail,
                             ratio, "residual ratio for halved steps (expect ~4)"});
    const auto other = mkdv_coefficients(
        params, point,
        manifest.coefficients == CoefficientSensitivity::critical ? CoefficientSensitivity::raw
                                                                  : CoefficientSensitivity::critical);
    std::ostringstream d;
    d << "B(critical a)=" << num(manifest.coefficients == CoefficientSensitivity::critical ? coeffs.B : other.B)
      << " B(raw a)=" << num(manifest.coefficients == CoefficientSensitivity::raw ? coeffs.B : other.B)
      << " 2A(alt)=" << num(2.0 * other.kink_amplitude);
    report.checks.push_back({"MKdV coefficient sensitivity modes", CheckStatus::pass,
                             2.0 * coeffs.kink_amplitude, d.str()});
  }

  if (!hooks.include_simulations) return report;

  {
    RingConfig uniform;
    uniform.n_vehicles = manifest.ring.n_vehicles;
    const double h0 = manifest.ring.lanes[0].baseline_headway;
    uniform.lanes = {PerturbationSpec{h0, {}}, PerturbationSpec{h0, {}}};
    SimOptions opts = manifest.sim;
    opts.duration = 1e4 * opts.dt;
    opts.sample_every = 10 * opts.dt;
    opts.record_from = 0.0;
    double drift = 0.0;
    std::string detail = "max |h(t) - h(0)| over 1e4 steps";
    try {
      const auto rec = run(uniform, params, opts);
      for (const auto& s : rec.samples) {
        for (std::size_t k = 0; k < kLaneCount; ++k) {
          for (std::size_t n = 0; n < s[k].headways.size(); ++n) {
            drift = std::max(drift, std::abs(s[k].headways[n] - rec.samples[0][k].headways[n]));
          }
        }
      }
    } catch (const SimulationError& e) {
      drift = std::numeric_limits<double>::infinity();
      detail = e.what();
    }
    report.checks.push_back({"uniform flow is a fixed point", drift <= 1e-12 ? CheckStatus::pass : CheckStatus::fail,
                             drift, detail});
  }

  {
    const auto op = operating_point(manifest, params);
    const double a_c = neutral_sensitivity(op, params);
    const double lo = a_c - 0.2, hi = a_c + 0.2;
    if (!(lo > 0.0)) {
      report.checks.push_back({"stability bracket", CheckStatus::skip, a_c, "a_c - 0.2 <= 0"});
    } else {
      SimOptions opts = manifest.sim;
      opts.duration = 2000.0;
      opts.sample_every = 10.0;
      opts.record_from = 0.0;
      auto with_alpha = [&](double a) {
        auto p = params;
        p.alpha = a;
        return p;
      };
      std::ostringstream detail;
      bool ok = true;
      double worst_drift = 0.0;
      bool ordered = true;
      double measured = 0.0;
      for (double a : {hi, lo}) {
        try {
          const auto rec = run(manifest.ring, with_alpha(a), opts);
          const auto lanes = summarize(rec, manifest.measure);
          double drift = 0.0;
          ordered = conserved(rec, drift) && ordered;
          worst_drift = std::max(worst_drift, drift);
          const bool grew = lanes[0].final_swing > lanes[0].initial_swing &&
                            lanes[1].final_swing > lanes[1].initial_swing;
          const bool decayed = lanes[0].decayed && lanes[1].decayed;
          ok = ok && (a > a_c ? decayed : grew);
          detail << "a=" << num(a) << ": swing " << num(lanes[0].final_swing) << "/"
                 << num(lanes[1].final_swing) << " m at t=2000; ";
          if (a > a_c) measured = std::max(lanes[0].final_swing, lanes[1].final_swing);
        } catch (const SimulationError& e) {
          ok = false;
          ordered = false;
          detail << "a=" << num(a) << ": aborted (" << e.what() << "); ";
        }
      }
      report.checks.push_back({"stability bracket a_c +/- 0.2 (decay above, growth below)",
                               ok ? CheckStatus::pass : CheckStatus::fail, measured, detail.str()});
      report.checks.push_back({"headway sum equals circumference at every sample",
                               worst_drift < 1e-9 ? CheckStatus::pass : CheckStatus::fail,
                               worst_drift, "max relative deviation"});
      report.checks.push_back({"no overtaking in bracket runs",
                               ordered ? CheckStatus::pass : CheckStatus::fail, ordered ? 1.0 : 0.0,
                               ""});
    }
  }

  report.readings = compare_readings(manifest);
  const bool readings_ok = std::all_of(report.readings.begin(), report.readings.end(),
                                       [](const ReadingOutcome& r) { return r.consistent; });
  report.checks.push_back({"neighbor mode x gate reading table consistent",
                           readings_ok ? CheckStatus::pass : CheckStatus::fail,
                           static_cast<double>(report.readings.size()), "readings"});
  return report;
}

}  // namespace twolane
