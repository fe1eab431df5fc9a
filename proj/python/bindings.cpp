#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "uavsim/errors.hpp"
#include "uavsim/evals.hpp"
#include "uavsim/io.hpp"
#include "uavsim/mission.hpp"
#include "uavsim/perception.hpp"
#include "uavsim/pose_graph.hpp"

namespace py = pybind11;
using namespace uavsim;

namespace {

py::dict metrics_dict(const MetricsReport& m) {
  py::dict d;
  d["navigation_accuracy_m"] = m.navigation_accuracy_m;
  d["mapping_rmse_m"] = m.mapping_rmse_m;
  d["exploration_time_s"] = m.exploration_time_s;
  d["avg_power_w"] = m.avg_power_w;
  d["total_energy_j"] = m.total_energy_j;
  d["min_clearance_m"] = m.min_clearance_m;
  d["all_waypoints_reached"] = m.all_waypoints_reached;
  d["loop_closures"] = m.loop_closures;
  d["proximity_events"] = m.proximity_events;
  return d;
}

GrayImage gray_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) {
    throw_error(ErrorCategory::kDimension, "expected a 2D grayscale array");
  }
  GrayImage img;
  img.height = static_cast<int>(a.shape(0));
  img.width = static_cast<int>(a.shape(1));
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  const auto r = a.unchecked<2>();
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      img.at(x, y) = static_cast<float>(r(y, x));
    }
  }
  return img;
}

}  // namespace

PYBIND11_MODULE(_uavsim, m) {
  m.doc() = "Deterministic indoor UAV SLAM simulator core";

  py::register_exception<Error>(m, "SimError");

  py::class_<WorldModel>(m, "WorldModel")
      .def_property_readonly("cell_size", [](const WorldModel& w) { return w.cell_size; })
      .def_property_readonly("obstacle_count",
                             [](const WorldModel& w) { return w.obstacles.size(); })
      .def_property_readonly("bounds_min", [](const WorldModel& w) { return w.bounds.min; })
      .def_property_readonly("bounds_max", [](const WorldModel& w) { return w.bounds.max; })
      .def("__repr__", [](const WorldModel& w) {
        const Vec3 e = w.bounds.extents();
        return "WorldModel(" + std::to_string(e.x()) + " x " + std::to_string(e.y()) +
               " x " + std::to_string(e.z()) + ", " + std::to_string(w.obstacles.size()) +
               " obstacles)";
      });

  m.def("load_world", &load_world, py::arg("document"),
        "Parse and validate a world-description JSON document.");
  m.def("default_world", &default_world);
  m.def("world_to_json", &world_to_json);

  m.def(
      "raycast",
      [](const WorldModel& world, const Vec3& origin, const Vec3& direction,
         double max_range) -> py::object {
        const auto hit = raycast(world, origin, direction, max_range);
        if (!hit.has_value()) return py::none();
        return py::float_(*hit);
      },
      py::arg("world"), py::arg("origin"), py::arg("direction"), py::arg("max_range"),
      "Distance to the nearest surface along the ray, or None beyond max_range.");

  m.def(
      "canny_edges",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
         double low, double high) {
        const EdgeImage edges = canny_edges(gray_from_array(image), low, high);
        py::array_t<std::uint8_t> out({edges.height, edges.width});
        auto w = out.mutable_unchecked<2>();
        for (int y = 0; y < edges.height; ++y) {
          for (int x = 0; x < edges.width; ++x) {
            w(y, x) = edges.mask[static_cast<std::size_t>(y) * edges.width + x];
          }
        }
        return out;
      },
      py::arg("image"), py::arg("low"), py::arg("high"),
      "Binary edge mask (Gaussian 5x5 -> Sobel -> NMS -> hysteresis).");

  m.def(
      "optimize_pose_graph",
      [](const std::vector<std::array<double, 3>>& nodes,
         const std::vector<py::tuple>& edges) {
        PoseGraph graph;
        for (const auto& n : nodes) {
          graph.add_node(0.0, Pose2{n[0], n[1], n[2]});
        }
        for (const auto& e : edges) {
          // (i, j, dx, dy, dtheta, info_xx, info_yy, info_tt, is_loop)
          const int i = e[0].cast<int>(), j = e[1].cast<int>();
          Mat3 info = Mat3::Zero();
          info(0, 0) = e[5].cast<double>();
          info(1, 1) = e[6].cast<double>();
          info(2, 2) = e[7].cast<double>();
          const Pose2 meas{e[2].cast<double>(), e[3].cast<double>(), e[4].cast<double>()};
          if (e[8].cast<bool>()) {
            graph.add_loop_edge(i, j, meas, info);
          } else {
            graph.add_odom_edge(i, j, meas, info);
          }
        }
        const OptimizeResult result = optimize_graph(graph);
        std::vector<std::array<double, 3>> poses;
        for (const Pose2& p : result.poses) poses.push_back({p.x, p.y, p.theta});
        py::dict out;
        out["poses"] = poses;
        out["chi2"] = result.chi2;
        out["iterations"] = result.iterations;
        out["converged"] = result.converged;
        return out;
      },
      py::arg("nodes"), py::arg("edges"),
      "Gauss-Newton SE(2) pose-graph optimization with node 0 fixed.\n"
      "Edges are (i, j, dx, dy, dtheta, info_xx, info_yy, info_tt, is_loop).");

  m.def(
      "run_mission",
      [](const std::string& config_json, py::object out_dir) {
        const RunConfig config =
            RunConfig::from_json(config_json, std::filesystem::current_path());
        const RunArtifacts artifacts = run_mission(config);
        if (!out_dir.is_none()) {
          write_artifacts(artifacts, config, out_dir.cast<std::filesystem::path>());
        }
        return metrics_dict(artifacts.metrics);
      },
      py::arg("config_json"), py::arg("out_dir") = py::none(),
      "Run a full mission from a run-config JSON document; returns metrics.");

  m.def(
      "run_default_mission",
      [](const std::string& configuration, std::uint64_t seed, py::object out_dir) {
        const RunConfig config =
            RunConfig::defaults(configuration_from_string(configuration), seed);
        const RunArtifacts artifacts = run_mission(config);
        if (!out_dir.is_none()) {
          write_artifacts(artifacts, config, out_dir.cast<std::filesystem::path>());
        }
        return metrics_dict(artifacts.metrics);
      },
      py::arg("configuration"), py::arg("seed"), py::arg("out_dir") = py::none());

  m.def(
      "eval_reconstruction",
      [](const std::string& configuration, const std::vector<double>& distances, int seeds) {
        std::vector<std::uint64_t> seed_list;
        for (int s = 0; s < seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));
        const auto rows = eval_reconstruction(configuration_from_string(configuration),
                                              distances, seed_list);
        py::list out;
        for (const auto& row : rows) {
          py::dict d;
          d["distance_m"] = row.distance_m;
          d["percent"] = row.percent;
          d["applicable"] = row.applicable;
          out.append(d);
        }
        return out;
      },
      py::arg("configuration"), py::arg("distances"), py::arg("seeds") = 3);

  m.def(
      "attitude_step_response",
      [](int axis, double magnitude) {
        const StepResponse r = attitude_step_response(axis, magnitude);
        py::dict d;
        d["steady_state_error_pct"] = r.steady_state_error_pct;
        d["overshoot_pct"] = r.overshoot_pct;
        d["settling_time_s"] = r.settling_time_s;
        d["monotone"] = r.monotone;
        return d;
      },
      py::arg("axis"), py::arg("magnitude"));
}
