#pragma once

#include <filesystem>
#include <string>

#include "uavsim/frames.hpp"
#include "uavsim/occupancy_grid.hpp"

namespace uavsim {

// Writes content to path atomically (temp file + rename). Throws kIo.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Occupancy grid as binary PGM (P5): occupied cells dark, free bright,
// unknown mid-gray. The header comment carries origin and cell size.
std::string occupancy_to_pgm(const OccupancyGrid& grid);

// 8-bit PGM of a grayscale raster with values already in [0, 255].
std::string gray_to_pgm(const GrayImage& image);

// Normalized 8-bit PGM exports for inspection.
std::string depth_to_pgm(const DepthImage& depth, double max_range);
std::string confidence_to_pgm(const ConfidenceMap& conf);
std::string edges_to_pgm(const EdgeImage& edges);

}  // namespace uavsim
