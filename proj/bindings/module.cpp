#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dnaclab/dnac.hpp"
#include "dnaclab/metrics.hpp"
#include "dnaclab/runner.hpp"
#include "dnaclab/scenario.hpp"
#include "dnaclab/smooth_l1.hpp"
#include "dnaclab/trajectory.hpp"

namespace py = pybind11;
using namespace dnaclab;

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Quadrotor attitude-control simulation lab";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("default_scenario", [] { return scenario_to_json(ScenarioConfig{}); },
        "Scenario json with every default filled in");

  m.def(
      "run_scenario",
      [](const std::string& config_json) {
        const ScenarioConfig config = scenario_from_json(config_json);
        const RunResult result = run_scenario(config);
        return py::make_tuple(metrics_to_json(result.report), trace_to_csv(result.trace));
      },
      py::arg("config_json"), "Run one scenario; returns (metrics_json, trace_csv)");

  m.def(
      "smooth_l1",
      [](const Eigen::VectorXd& prediction, const Eigen::VectorXd& target, double beta) {
        const SmoothL1Result r = smooth_l1(prediction, target, beta);
        return py::make_tuple(r.loss, r.grad);
      },
      py::arg("prediction"), py::arg("target"), py::arg("beta") = 1.0);

  m.def("arc_length",
        [](const std::string& kind, double size, int panels) {
          TrajectorySpec spec;
          if (kind == "circle")
          {
            spec.kind = TrajectorySpec::Kind::Circle;
            spec.radius = size;
          }
          else if (kind == "rose")
          {
            spec.kind = TrajectorySpec::Kind::Rose;
            spec.amplitude = size;
          }
          else
          {
            throw ConfigError("kind must be 'circle' or 'rose'");
          }
          return arc_length(spec, panels);
        },
        py::arg("kind"), py::arg("size"), py::arg("panels") = 10000);

  py::class_<BatchTrainResult>(m, "BatchTrainResult")
      .def_readonly("ok", &BatchTrainResult::ok)
      .def_readonly("epoch_losses", &BatchTrainResult::epoch_losses);

  py::class_<DnacController>(m, "DnacController")
      .def(py::init([](std::uint32_t seed) { return DnacController(DnacConfig{}, seed); }),
           py::arg("seed") = 0)
      .def("estimate_uncertainty", &DnacController::estimate_uncertainty, py::arg("x"))
      .def("compute_control", &DnacController::compute_control, py::arg("e"),
           py::arg("x_dot_d"), py::arg("x"))
      .def("update_outer_weights", &DnacController::update_outer_weights, py::arg("e"),
           py::arg("x"), py::arg("dt"))
      .def(
          "record_sample",
          [](DnacController& self, const Eigen::Vector2d& x_dot, const Eigen::Vector2d& x,
             const Eigen::Vector2d& gu) { return self.record_sample(ReplaySample{x_dot, x, gu}); },
          py::arg("x_dot"), py::arg("x"), py::arg("gu"))
      .def("train_inner", &DnacController::train_inner)
      .def("predict_xdot", &DnacController::predict_xdot, py::arg("x"), py::arg("gu"))
      .def_property_readonly("train_count", &DnacController::train_count)
      .def_property_readonly("outer_weight_norm", &DnacController::outer_weight_norm)
      .def("checkpoint_json", &DnacController::checkpoint_json)
      .def("restore_checkpoint", &DnacController::restore_checkpoint, py::arg("text"));
}
