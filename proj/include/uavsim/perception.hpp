#pragma once

#include <vector>

#include "uavsim/frames.hpp"
#include "uavsim/sensors.hpp"

namespace uavsim {

// Pinhole back-projection of every valid pixel into the world frame.
PointCloud depth_to_cloud(const DepthImage& depth, const Vec3& camera_position,
                          const Vec3& camera_rpy, const DepthCameraSpec& spec);

// Canny pipeline: 5x5 Gaussian (sigma 1.4, clamped borders), 3x3 Sobel,
// four-direction non-maximum suppression, double threshold, 8-connected
// hysteresis. Requires 0 < low < high and an image of at least 5x5.
EdgeImage canny_edges(const GrayImage& image, double low, double high);

// confidence = cos(incidence) * (1 - depth / max_range), clamped to [0, 1];
// invalid pixels get 0. `incidence` is the per-pixel angle between ray and
// surface normal, as produced by sample_depth.
ConfidenceMap confidence_from_depth(const DepthImage& depth,
                                    const std::vector<float>& incidence,
                                    double max_range);

// Grayscale for the edge-detection node: normalized inverse depth, so near
// structure is bright. Invalid pixels map to 0.
GrayImage gray_from_depth(const DepthImage& depth, const DepthCameraSpec& spec);

// Collapses a depth image into a planar range scan usable for obstacle
// proximity checks and camera-only mapping: per column, the minimum valid
// depth over the middle rows, back-projected to a horizontal range/bearing.
LaserScan scan_from_depth(const DepthImage& depth, const DepthCameraSpec& spec,
                          double stamp, int rows = 6);

}  // namespace uavsim
