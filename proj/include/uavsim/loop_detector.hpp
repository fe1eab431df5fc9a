#pragma once

#include <vector>

#include "uavsim/pose_graph.hpp"
#include "uavsim/scan_matching.hpp"

namespace uavsim {

struct LoopParams {
  int gap_min = 20;          // minimum node-index separation
  double radius = 1.0;       // m, proximity test on estimated poses
  double min_score = 0.6;    // scan-match acceptance threshold
  int submap_half_width = 10;  // nodes on each side used for the local submap
  double submap_cell_size = 0.05;
  ScanMatchParams match;
};

struct LoopCandidate {
  int query_id = -1;
  int match_id = -1;
  Pose2 relative;       // pose of query in the match node's frame
  double score = 0.0;
};

// Radius-only revisit events (proximity detection), reported separately
// from accepted loop closures.
struct ProximityEvent {
  int query_id = -1;
  int match_id = -1;
  double distance = 0.0;
};

// Builds a local occupancy submap around `center` from the scans attached
// to nodes [center - half_width, center + half_width], at their current
// graph poses.
OccupancyGrid build_submap(const PoseGraph& graph, const std::vector<LaserScan>& scans,
                           int center, const LoopParams& params);

// Candidates: non-adjacent nodes (index gap >= gap_min) whose estimated pose
// lies within `radius` of the query AND whose scan match against the query's
// local submap clears min_score. Nodes passing only the radius test are
// reported through `proximity`.
std::vector<LoopCandidate> detect_loop(const PoseGraph& graph,
                                       const std::vector<LaserScan>& scans, int query_id,
                                       const LoopParams& params,
                                       std::vector<ProximityEvent>* proximity = nullptr);

}  // namespace uavsim
