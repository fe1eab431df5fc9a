#include "uavsim/loop_detector.hpp"

#include <algorithm>
#include <cmath>

#include "uavsim/errors.hpp"
#include "uavsim/occupancy_grid.hpp"

namespace uavsim {

OccupancyGrid build_submap(const PoseGraph& graph, const std::vector<LaserScan>& scans,
                           int center, const LoopParams& params) {
  const int lo = std::max(0, center - params.submap_half_width);
  const int hi = std::min(static_cast<int>(graph.nodes.size()) - 1,
                          center + params.submap_half_width);

  // Extent: node positions plus the largest scan range in the window.
  double min_x = graph.nodes[static_cast<std::size_t>(center)].pose.x;
  double max_x = min_x, min_y = graph.nodes[static_cast<std::size_t>(center)].pose.y;
  double max_y = min_y;
  double reach = 1.0;
  for (int k = lo; k <= hi; ++k) {
    const GraphNode& n = graph.nodes[static_cast<std::size_t>(k)];
    min_x = std::min(min_x, n.pose.x);
    max_x = std::max(max_x, n.pose.x);
    min_y = std::min(min_y, n.pose.y);
    max_y = std::max(max_y, n.pose.y);
    if (n.scan_ref >= 0) {
      reach = std::max(reach, scans[static_cast<std::size_t>(n.scan_ref)].range_max);
    }
  }
  const double cs = params.submap_cell_size;
  const Vec2 origin(min_x - reach, min_y - reach);
  const int w = static_cast<int>(std::ceil((max_x - min_x + 2.0 * reach) / cs));
  const int h = static_cast<int>(std::ceil((max_y - min_y + 2.0 * reach) / cs));
  OccupancyGrid submap(origin, cs, w, h);

  for (int k = lo; k <= hi; ++k) {
    const GraphNode& n = graph.nodes[static_cast<std::size_t>(k)];
    if (n.scan_ref < 0) continue;
    integrate_scan(submap, scans[static_cast<std::size_t>(n.scan_ref)], n.pose);
  }
  return submap;
}

std::vector<LoopCandidate> detect_loop(const PoseGraph& graph,
                                       const std::vector<LaserScan>& scans, int query_id,
                                       const LoopParams& params,
                                       std::vector<ProximityEvent>* proximity) {
  std::vector<LoopCandidate> candidates;
  if (query_id < 0 || query_id >= static_cast<int>(graph.nodes.size())) {
    throw_error(ErrorCategory::kValidation, "detect_loop: unknown query node");
  }
  const GraphNode& query = graph.nodes[static_cast<std::size_t>(query_id)];
  if (query.scan_ref < 0) {
    throw_error(ErrorCategory::kValidation, "detect_loop: query node has no attached scan");
  }
  const LaserScan& query_scan = scans[static_cast<std::size_t>(query.scan_ref)];

  for (const GraphNode& node : graph.nodes) {
    if (std::abs(node.id - query_id) < params.gap_min) continue;
    const double dist = (Vec2(node.pose.x, node.pose.y) -
                         Vec2(query.pose.x, query.pose.y)).norm();
    if (dist > params.radius) continue;
    if (proximity != nullptr) {
      proximity->push_back({query_id, node.id, dist});
    }
    if (node.scan_ref < 0) continue;

    const OccupancyGrid submap = build_submap(graph, scans, node.id, params);
    ScanMatchResult match;
    try {
      match = scan_match(query_scan, submap, query.pose, params.match);
    } catch (const Error&) {
      continue;  // unusable overlap: proximity event only
    }
    if (match.score < params.min_score) continue;

    LoopCandidate c;
    c.query_id = query_id;
    c.match_id = node.id;
    c.relative = node.pose.between(match.pose);
    c.score = match.score;
    candidates.push_back(c);
  }
  return candidates;
}

}  // namespace uavsim
