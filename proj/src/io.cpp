#include "uavsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "uavsim/errors.hpp"

namespace uavsim {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw_error(ErrorCategory::kIo, "cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw_error(ErrorCategory::kIo, "write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw_error(ErrorCategory::kIo, "rename failed: " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCategory::kIo, "cannot open " + path.string());
  }
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

namespace {

std::string pgm_header(int width, int height, const std::string& comment) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "P5\n# %s\n%d %d\n255\n", comment.c_str(), width, height);
  return buf;
}

}  // namespace

std::string occupancy_to_pgm(const OccupancyGrid& grid) {
  char comment[120];
  std::snprintf(comment, sizeof(comment), "origin %.6f %.6f cell_size %.6f",
                grid.origin().x(), grid.origin().y(), grid.cell_size());
  std::string out = pgm_header(grid.width(), grid.height(), comment);
  out.reserve(out.size() + static_cast<std::size_t>(grid.width()) * grid.height());
  // Row 0 at the top corresponds to the largest y so the image reads like a
  // map (x to the right, y upward).
  for (int iy = grid.height() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      const double p = grid.probability(ix, iy);
      const int value = static_cast<int>(std::lround(255.0 * (1.0 - p)));
      out.push_back(static_cast<char>(value));
    }
  }
  return out;
}

std::string gray_to_pgm(const GrayImage& image) {
  std::string out = pgm_header(image.width, image.height, "grayscale");
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double v = std::clamp(static_cast<double>(image.at(x, y)), 0.0, 255.0);
      out.push_back(static_cast<char>(std::lround(v)));
    }
  }
  return out;
}

std::string depth_to_pgm(const DepthImage& depth, double max_range) {
  std::string out = pgm_header(depth.width, depth.height, "depth normalized");
  for (int y = 0; y < depth.height; ++y) {
    for (int x = 0; x < depth.width; ++x) {
      const float z = depth.at(x, y);
      int value = 0;
      if (range_valid(z)) {
        value = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(z / max_range, 0.0f, 1.0f))));
      }
      out.push_back(static_cast<char>(value));
    }
  }
  return out;
}

std::string confidence_to_pgm(const ConfidenceMap& conf) {
  std::string out = pgm_header(conf.width, conf.height, "confidence");
  for (float c : conf.confidence) {
    out.push_back(static_cast<char>(std::lround(255.0 * std::clamp(c, 0.0f, 1.0f))));
  }
  return out;
}

std::string edges_to_pgm(const EdgeImage& edges) {
  std::string out = pgm_header(edges.width, edges.height, "edges");
  for (std::uint8_t m : edges.mask) {
    out.push_back(static_cast<char>(m != 0 ? 255 : 0));
  }
  return out;
}

}  // namespace uavsim
