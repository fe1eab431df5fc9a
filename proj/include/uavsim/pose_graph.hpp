#pragma once

#include <string>
#include <vector>

#include "uavsim/geometry.hpp"

namespace uavsim {

struct GraphNode {
  int id = 0;
  double stamp = 0.0;
  Pose2 pose;
  int scan_ref = -1;  // index into the frontend's scan store, -1 when absent
};

struct GraphEdge {
  int i = 0;
  int j = 0;
  Pose2 measurement;            // pose of j in i's frame
  Mat3 information = Mat3::Identity();
  bool is_loop = false;
};

// Nodes with a single odometry chain i -> i+1 plus loop-closure edges.
struct PoseGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> odom_edges;
  std::vector<GraphEdge> loop_edges;

  int add_node(double stamp, const Pose2& pose, int scan_ref = -1);
  void add_odom_edge(int i, int j, const Pose2& measurement, const Mat3& information);
  void add_loop_edge(int i, int j, const Pose2& measurement, const Mat3& information);

  std::vector<GraphEdge> all_edges() const;
};

// r = t2v(Z^-1 * (Xi^-1 * Xj)) with the angular component wrapped.
Vec3 edge_residual(const Pose2& xi, const Pose2& xj, const Pose2& measurement);

// Analytic Jacobians of edge_residual with respect to xi and xj.
void edge_jacobians(const Pose2& xi, const Pose2& xj, const Pose2& measurement,
                    Mat3* ji, Mat3* jj);

struct OptimizeOptions {
  int max_iterations = 100;
  double chi2_tolerance = 1e-9;   // stop when |delta chi2| falls below this
  double huber_delta = 1.0;       // robust kernel on loop edges
  int max_step_halvings = 12;
};

struct OptimizeResult {
  std::vector<Pose2> poses;
  double chi2 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> chi2_history;  // chi2 after every accepted iteration
};

// Gauss-Newton on SE(2) with node 0 fixed as gauge and a Huber kernel on
// loop edges. chi2 is non-increasing over accepted iterations (rejected
// steps are halved). Throws on singular normal equations.
OptimizeResult optimize_graph(const PoseGraph& graph, const OptimizeOptions& options = {});

// Total robustified cost of the graph at the given poses.
double graph_chi2(const PoseGraph& graph, const std::vector<Pose2>& poses,
                  double huber_delta);

// Plain-text export: VERTEX_SE2 / EDGE_SE2 records (loop closures carry the
// LOOP_SE2 tag), information matrices as upper-triangle coefficients.
std::string export_graph(const PoseGraph& graph);

}  // namespace uavsim
