#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twolane/config.hpp"
#include "twolane/mkdv.hpp"
#include "twolane/model.hpp"
#include "twolane/simulator.hpp"
#include "twolane/stability.hpp"

namespace py = pybind11;
using namespace twolane;

namespace {

py::array_t<double> lane_matrix(const TrajectoryRecord& rec, std::size_t lane, bool velocities) {
  if (lane >= kLaneCount) throw py::index_error("lane must be 0 or 1");
  const std::size_t rows = rec.samples.size();
  const std::size_t cols = rows ? rec.samples[0][lane].headways.size() : 0;
  py::array_t<double> out({rows, cols});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& src = velocities ? rec.samples[i][lane].velocities : rec.samples[i][lane].headways;
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = src[j];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-lane car-following model with lateral coupling";

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def(py::init([](double alpha, double p, double q, double lambda1, double lambda2,
                       double v_max, double h_c, double l_v, double d) {
             return ModelParams{alpha, p, q, lambda1, lambda2, v_max, h_c, l_v, d};
           }),
           py::arg("alpha") = 2.85, py::arg("p") = 1.0, py::arg("q") = 0.0,
           py::arg("lambda1") = 0.2, py::arg("lambda2") = 0.0, py::arg("v_max") = 4.0,
           py::arg("h_c") = 7.0, py::arg("l_v") = 5.0, py::arg("d") = 10.0)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("p", &ModelParams::p)
      .def_readwrite("q", &ModelParams::q)
      .def_readwrite("lambda1", &ModelParams::lambda1)
      .def_readwrite("lambda2", &ModelParams::lambda2)
      .def_readwrite("v_max", &ModelParams::v_max)
      .def_readwrite("h_c", &ModelParams::h_c)
      .def_readwrite("l_v", &ModelParams::l_v)
      .def_readwrite("d", &ModelParams::d)
      .def("validate", [](const ModelParams& p) { return validate(p); })
      .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; })
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(alpha=" + std::to_string(p.alpha) + ", p=" + std::to_string(p.p) +
               ", q=" + std::to_string(p.q) + ", lambda1=" + std::to_string(p.lambda1) +
               ", lambda2=" + std::to_string(p.lambda2) + ")";
      });

  py::class_<NeighborView>(m, "NeighborView")
      .def(py::init([](double v_self, double headway, double v_lead, double lateral_headway,
                       double v_lateral_lead) {
             return NeighborView{v_self, headway, v_lead, lateral_headway, v_lateral_lead};
           }),
           py::arg("v_self"), py::arg("headway"), py::arg("v_lead"), py::arg("lateral_headway"),
           py::arg("v_lateral_lead"))
      .def_readwrite("v_self", &NeighborView::v_self)
      .def_readwrite("headway", &NeighborView::headway)
      .def_readwrite("v_lead", &NeighborView::v_lead)
      .def_readwrite("lateral_headway", &NeighborView::lateral_headway)
      .def_readwrite("v_lateral_lead", &NeighborView::v_lateral_lead);

  m.def("optimal_velocity", &optimal_velocity, py::arg("headway"), py::arg("params"));
  m.def("lateral_optimal_velocity", &lateral_optimal_velocity, py::arg("lateral_headway"),
        py::arg("params"));
  m.def("lateral_velocity_difference", &lateral_velocity_difference, py::arg("view"),
        py::arg("params"));
  m.def("acceleration", &acceleration, py::arg("view"), py::arg("params"));
  m.def("ov_derivative", &ov_derivative, py::arg("headway"), py::arg("order"), py::arg("params"));

  py::enum_<Stability>(m, "Stability")
      .value("stable", Stability::stable)
      .value("neutral", Stability::neutral)
      .value("unstable", Stability::unstable);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def(py::init([](double h, double a, bool gate_open) {
             return OperatingPoint{h, a, gate_open};
           }),
           py::arg("h"), py::arg("a"), py::arg("gate_open") = true)
      .def_readwrite("h", &OperatingPoint::h)
      .def_readwrite("a", &OperatingPoint::a)
      .def_readwrite("gate_open", &OperatingPoint::gate_open);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("z1", &StabilityReport::z1)
      .def_readonly("z2", &StabilityReport::z2)
      .def_readonly("a_c", &StabilityReport::a_c)
      .def_readonly("classification", &StabilityReport::classification);

  m.def("long_wave_coefficients", [](const OperatingPoint& pt, const ModelParams& p) {
    const auto c = long_wave_coefficients(pt, p);
    return py::make_tuple(c.z1, c.z2);
  });
  m.def("neutral_sensitivity", &neutral_sensitivity, py::arg("point"), py::arg("params"));
  m.def("classify", &classify, py::arg("point"), py::arg("params"));
  m.def("analyze", &analyze, py::arg("point"), py::arg("params"));
  m.def(
      "stability_surface",
      [](const ModelParams& p, const std::vector<double>& h_grid, bool gate_open) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& r : stability_surface(p, h_grid, gate_open)) rows.emplace_back(r.h, r.a_c);
        return rows;
      },
      py::arg("params"), py::arg("h_grid"), py::arg("gate_open") = true);

  py::enum_<CoefficientSensitivity>(m, "CoefficientSensitivity")
      .value("critical", CoefficientSensitivity::critical)
      .value("raw", CoefficientSensitivity::raw);

  py::class_<MkdvCoefficients>(m, "MkdvCoefficients")
      .def_readonly("a", &MkdvCoefficients::a)
      .def_readonly("a_c", &MkdvCoefficients::a_c)
      .def_readonly("b", &MkdvCoefficients::b)
      .def_readonly("epsilon", &MkdvCoefficients::epsilon)
      .def_readonly("m1", &MkdvCoefficients::m1)
      .def_readonly("m2", &MkdvCoefficients::m2)
      .def_readonly("m3", &MkdvCoefficients::m3)
      .def_readonly("m4", &MkdvCoefficients::m4)
      .def_readonly("m5", &MkdvCoefficients::m5)
      .def_readonly("B", &MkdvCoefficients::B)
      .def_readonly("kink_amplitude", &MkdvCoefficients::kink_amplitude)
      .def_readonly("valid", &MkdvCoefficients::valid)
      .def_readonly("reason", &MkdvCoefficients::reason);

  m.def("mkdv_coefficients", &mkdv_coefficients, py::arg("params"), py::arg("point"),
        py::arg("mode") = CoefficientSensitivity::critical);
  m.def("soliton_amplitude", &soliton_amplitude, py::arg("coefficients"));
  m.def(
      "kink_headway",
      [](double n, double t, const ModelParams& p, const OperatingPoint& pt,
         CoefficientSensitivity mode) { return kink_headway(n, t, p, pt, mode); },
      py::arg("n"), py::arg("t"), py::arg("params"), py::arg("point"),
      py::arg("mode") = CoefficientSensitivity::critical);
  m.def(
      "coexisting_curve",
      [](const ModelParams& p, bool gate_open, const std::vector<double>& a_grid) {
        std::vector<std::tuple<double, double, double>> rows;
        for (const auto& r : coexisting_curve(p, gate_open, a_grid)) {
          rows.emplace_back(r.a, r.h_low, r.h_high);
        }
        return rows;
      },
      py::arg("params"), py::arg("gate_open"), py::arg("a_grid"));
  m.def(
      "standard_mkdv_residual",
      [](double B, double x_min, double x_max, double t_min, double t_max, double dx, double dt) {
        return standard_mkdv_residual(B, {x_min, x_max, t_min, t_max, dx, dt});
      },
      py::arg("B"), py::arg("x_min") = -10.0, py::arg("x_max") = 10.0, py::arg("t_min") = 0.0,
      py::arg("t_max") = 1.0, py::arg("dx") = 1e-2, py::arg("dt") = 1e-3);

  py::enum_<Scheme>(m, "Scheme").value("euler", Scheme::euler).value("rk4", Scheme::rk4);
  py::enum_<NeighborMode>(m, "NeighborMode")
      .value("nearest", NeighborMode::nearest)
      .value("paired", NeighborMode::paired);
  py::enum_<GateReading>(m, "GateReading")
      .value("evaluated", GateReading::evaluated)
      .value("closed", GateReading::closed);

  py::class_<HeadwayDelta>(m, "HeadwayDelta")
      .def(py::init([](std::size_t first, std::size_t last, double delta) {
             return HeadwayDelta{first, last, delta};
           }),
           py::arg("first"), py::arg("last"), py::arg("delta"))
      .def_readwrite("first", &HeadwayDelta::first)
      .def_readwrite("last", &HeadwayDelta::last)
      .def_readwrite("delta", &HeadwayDelta::delta);

  py::class_<PerturbationSpec>(m, "PerturbationSpec")
      .def(py::init([](double baseline, std::vector<HeadwayDelta> deltas) {
             return PerturbationSpec{baseline, std::move(deltas)};
           }),
           py::arg("baseline_headway") = 7.0, py::arg("deltas") = std::vector<HeadwayDelta>{})
      .def_readwrite("baseline_headway", &PerturbationSpec::baseline_headway)
      .def_readwrite("deltas", &PerturbationSpec::deltas);

  py::class_<RingConfig>(m, "RingConfig")
      .def(py::init<>())
      .def_readwrite("n_vehicles", &RingConfig::n_vehicles)
      .def_readwrite("lanes", &RingConfig::lanes);
  m.def("reference_ring", &reference_ring);

  py::class_<SimOptions>(m, "SimOptions")
      .def(py::init<>())
      .def_readwrite("dt", &SimOptions::dt)
      .def_readwrite("scheme", &SimOptions::scheme)
      .def_readwrite("mode", &SimOptions::mode)
      .def_readwrite("gate", &SimOptions::gate)
      .def_readwrite("duration", &SimOptions::duration)
      .def_readwrite("sample_every", &SimOptions::sample_every)
      .def_readwrite("record_from", &SimOptions::record_from);

  py::class_<TrajectoryRecord>(m, "Trajectory")
      .def_property_readonly("times",
                             [](const TrajectoryRecord& r) {
                               return py::array_t<double>(r.times.size(), r.times.data());
                             })
      .def_readonly("circumference", &TrajectoryRecord::circumference)
      .def_readonly("min_velocity", &TrajectoryRecord::min_velocity)
      .def("headways", [](const TrajectoryRecord& r, std::size_t lane) {
        return lane_matrix(r, lane, false);
      })
      .def("velocities", [](const TrajectoryRecord& r, std::size_t lane) {
        return lane_matrix(r, lane, true);
      });

  m.def(
      "simulate",
      [](const RingConfig& config, const ModelParams& params, const SimOptions& options) {
        py::gil_scoped_release release;
        return run(config, params, options);
      },
      py::arg("config"), py::arg("params"), py::arg("options"));
  m.def("measure_amplitude", &measure_amplitude, py::arg("record"), py::arg("t0"), py::arg("t1"));

  py::class_<RunManifest>(m, "RunManifest")
      .def_readwrite("model", &RunManifest::model)
      .def_readwrite("ring", &RunManifest::ring)
      .def_readwrite("sim", &RunManifest::sim)
      .def_readwrite("output_dir", &RunManifest::output_dir)
      .def("__eq__", [](const RunManifest& a, const RunManifest& b) { return a == b; });
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("serialize_config", &serialize_config, py::arg("manifest"));
}
