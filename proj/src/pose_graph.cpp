#include "uavsim/pose_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "uavsim/errors.hpp"

namespace uavsim {

int PoseGraph::add_node(double stamp, const Pose2& pose, int scan_ref) {
  const int id = static_cast<int>(nodes.size());
  nodes.push_back({id, stamp, pose, scan_ref});
  return id;
}

void PoseGraph::add_odom_edge(int i, int j, const Pose2& measurement, const Mat3& information) {
  if (j != i + 1) {
    throw_error(ErrorCategory::kValidation, "odometry edges must form the chain i -> i+1");
  }
  if (i < 0 || j >= static_cast<int>(nodes.size())) {
    throw_error(ErrorCategory::kValidation, "odometry edge references a missing node");
  }
  odom_edges.push_back({i, j, measurement, information, false});
}

void PoseGraph::add_loop_edge(int i, int j, const Pose2& measurement, const Mat3& information) {
  if (i < 0 || j < 0 || i >= static_cast<int>(nodes.size()) ||
      j >= static_cast<int>(nodes.size()) || i == j) {
    throw_error(ErrorCategory::kValidation, "loop edge references a missing node");
  }
  loop_edges.push_back({i, j, measurement, information, true});
}

std::vector<GraphEdge> PoseGraph::all_edges() const {
  std::vector<GraphEdge> edges = odom_edges;
  edges.insert(edges.end(), loop_edges.begin(), loop_edges.end());
  return edges;
}

Vec3 edge_residual(const Pose2& xi, const Pose2& xj, const Pose2& measurement) {
  const Pose2 predicted = xi.between(xj);
  const Pose2 err = measurement.inverse().compose(predicted);
  return {err.x, err.y, wrap_angle(err.theta)};
}

void edge_jacobians(const Pose2& xi, const Pose2& xj, const Pose2& measurement,
                    Mat3* ji, Mat3* jj) {
  const double ci = std::cos(xi.theta), si = std::sin(xi.theta);
  const double cz = std::cos(measurement.theta), sz = std::sin(measurement.theta);

  // Rz^T * Ri^T and Rz^T * dRi^T/dtheta.
  Mat2 rz_t, ri_t, dri_t;
  rz_t << cz, sz, -sz, cz;
  ri_t << ci, si, -si, ci;
  dri_t << -si, ci, -ci, -si;

  const Vec2 dt(xj.x - xi.x, xj.y - xi.y);
  const Mat2 a = rz_t * ri_t;
  const Vec2 b = rz_t * (dri_t * dt);

  if (ji != nullptr) {
    ji->setZero();
    ji->topLeftCorner<2, 2>() = -a;
    ji->topRightCorner<2, 1>() = b;
    (*ji)(2, 2) = -1.0;
  }
  if (jj != nullptr) {
    jj->setZero();
    jj->topLeftCorner<2, 2>() = a;
    (*jj)(2, 2) = 1.0;
  }
}

namespace {

// Huber weight for the squared Mahalanobis norm s = r^T O r.
double huber_weight(double s, double delta) {
  const double norm = std::sqrt(std::max(s, 0.0));
  if (norm <= delta) return 1.0;
  return delta / norm;
}

double huber_cost(double s, double delta) {
  const double norm = std::sqrt(std::max(s, 0.0));
  if (norm <= delta) return s;
  return 2.0 * delta * norm - delta * delta;
}

double edge_cost(const GraphEdge& e, const std::vector<Pose2>& poses, double huber_delta) {
  const Vec3 r = edge_residual(poses[static_cast<std::size_t>(e.i)],
                               poses[static_cast<std::size_t>(e.j)], e.measurement);
  const double s = r.dot(e.information * r);
  return e.is_loop ? huber_cost(s, huber_delta) : s;
}

}  // namespace

double graph_chi2(const PoseGraph& graph, const std::vector<Pose2>& poses,
                  double huber_delta) {
  double chi2 = 0.0;
  for (const GraphEdge& e : graph.odom_edges) chi2 += edge_cost(e, poses, huber_delta);
  for (const GraphEdge& e : graph.loop_edges) chi2 += edge_cost(e, poses, huber_delta);
  return chi2;
}

OptimizeResult optimize_graph(const PoseGraph& graph, const OptimizeOptions& options) {
  OptimizeResult result;
  for (const GraphNode& n : graph.nodes) result.poses.push_back(n.pose);

  const std::size_t n_nodes = graph.nodes.size();
  if (n_nodes == 0) {
    result.converged = true;
    return result;
  }
  const std::vector<GraphEdge> edges = graph.all_edges();
  if (edges.empty() || n_nodes == 1) {
    result.chi2 = graph_chi2(graph, result.poses, options.huber_delta);
    result.converged = true;
    return result;
  }

  // Node 0 is the gauge; the reduced system covers nodes 1..n-1.
  const int dim = static_cast<int>(3 * (n_nodes - 1));
  result.chi2 = graph_chi2(graph, result.poses, options.huber_delta);
  result.chi2_history.push_back(result.chi2);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);

    for (const GraphEdge& e : edges) {
      const Pose2& xi = result.poses[static_cast<std::size_t>(e.i)];
      const Pose2& xj = result.poses[static_cast<std::size_t>(e.j)];
      const Vec3 r = edge_residual(xi, xj, e.measurement);
      Mat3 ji, jj;
      edge_jacobians(xi, xj, e.measurement, &ji, &jj);

      double w = 1.0;
      if (e.is_loop) {
        w = huber_weight(r.dot(e.information * r), options.huber_delta);
      }
      const Mat3 wi = w * e.information;

      const int bi = 3 * (e.i - 1);
      const int bj = 3 * (e.j - 1);
      if (e.i > 0) {
        h.block<3, 3>(bi, bi) += ji.transpose() * wi * ji;
        b.segment<3>(bi) += ji.transpose() * wi * r;
      }
      if (e.j > 0) {
        h.block<3, 3>(bj, bj) += jj.transpose() * wi * jj;
        b.segment<3>(bj) += jj.transpose() * wi * r;
      }
      if (e.i > 0 && e.j > 0) {
        h.block<3, 3>(bi, bj) += ji.transpose() * wi * jj;
        h.block<3, 3>(bj, bi) += jj.transpose() * wi * ji;
      }
    }

    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() != Eigen::Success) {
      throw_error(ErrorCategory::kSingular, "optimize_graph: singular normal equations");
    }
    const Eigen::VectorXd d = ldlt.vectorD();
    if (d.minCoeff() < 1e-12 * std::max(1.0, d.maxCoeff())) {
      throw_error(ErrorCategory::kSingular,
                  "optimize_graph: under-constrained graph (singular normal equations)");
    }
    Eigen::VectorXd step = ldlt.solve(-b);

    // Backtracking keeps chi2 non-increasing.
    double scale = 1.0;
    bool accepted = false;
    std::vector<Pose2> candidate(result.poses);
    for (int half = 0; half <= options.max_step_halvings; ++half) {
      for (std::size_t k = 1; k < n_nodes; ++k) {
        const auto seg = step.segment<3>(3 * (static_cast<int>(k) - 1)) * scale;
        candidate[k].x = result.poses[k].x + seg[0];
        candidate[k].y = result.poses[k].y + seg[1];
        candidate[k].theta = wrap_angle(result.poses[k].theta + seg[2]);
      }
      const double chi2 = graph_chi2(graph, candidate, options.huber_delta);
      if (chi2 <= result.chi2) {
        const double improvement = result.chi2 - chi2;
        result.poses = candidate;
        result.chi2 = chi2;
        result.chi2_history.push_back(chi2);
        result.iterations = iter + 1;
        accepted = true;
        if (improvement < options.chi2_tolerance) {
          result.converged = true;
          return result;
        }
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) {
      // No descent direction left at the smallest step: treat as converged.
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

std::string export_graph(const PoseGraph& graph) {
  std::string out;
  char line[320];
  for (const GraphNode& n : graph.nodes) {
    std::snprintf(line, sizeof(line), "VERTEX_SE2 %d %.9f %.9f %.9f\n", n.id, n.pose.x,
                  n.pose.y, n.pose.theta);
    out += line;
  }
  auto write_edge = [&out, &line](const GraphEdge& e, const char* tag) {
    const Mat3& m = e.information;
    std::snprintf(line, sizeof(line),
                  "%s %d %d %.9f %.9f %.9f %.9f %.9f %.9f %.9f %.9f %.9f\n", tag, e.i, e.j,
                  e.measurement.x, e.measurement.y, e.measurement.theta, m(0, 0), m(0, 1),
                  m(0, 2), m(1, 1), m(1, 2), m(2, 2));
    out += line;
  };
  for (const GraphEdge& e : graph.odom_edges) write_edge(e, "EDGE_SE2");
  for (const GraphEdge& e : graph.loop_edges) write_edge(e, "LOOP_SE2");
  return out;
}

}  // namespace uavsim
