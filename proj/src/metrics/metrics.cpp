// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/metrics.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mvd/kernels.hpp"

namespace mvd {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exact nearest-within-threshold lookup over a uniform bucket grid with
// cell size sqrt(threshold_sq): any match lies in one of the 27
// neighboring buckets.
class MatchIndex {
 public:
  MatchIndex(const std::vector<std::array<double, 3>>& points, double threshold_sq)
      : points_(points), threshold_sq_(threshold_sq),
        inv_cell_(1.0 / std::sqrt(threshold_sq)) {
    buckets_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      buckets_[key(points[i])].push_back(static_cast<std::uint32_t>(i));
    }
  }

  bool has_match(const std::array<double, 3>& p) const {
    const std::int64_t bx = coord(p[0]);
    const std::int64_t by = coord(p[1]);
    const std::int64_t bz = coord(p[2]);
    for (std::int64_t dz = -1; dz <= 1; ++dz) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
          auto it = buckets_.find(pack(bx + dx, by + dy, bz + dz));
          if (it == buckets_.end()) {
            continue;
          }
          for (std::uint32_t i : it->second) {
            const auto& q = points_[i];
            const double ddx = p[0] - q[0];
            const double ddy = p[1] - q[1];
            const double ddz = p[2] - q[2];
            if (ddx * ddx + ddy * ddy + ddz * ddz <= threshold_sq_) {
              return true;
            }
          }
        }
      }
    }
    return false;
  }

 private:
  std::int64_t coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v * inv_cell_));
  }
  std::uint64_t key(const std::array<double, 3>& p) const {
    return pack(coord(p[0]), coord(p[1]), coord(p[2]));
  }
  static std::uint64_t pack(std::int64_t x, std::int64_t y, std::int64_t z) {
    const std::uint64_t m = (1u << 21) - 1;
    return ((static_cast<std::uint64_t>(x) & m) << 42) |
           ((static_cast<std::uint64_t>(y) & m) << 21) |
           (static_cast<std::uint64_t>(z) & m);
  }

  const std::vector<std::array<double, 3>>& points_;
  double threshold_sq_;
  double inv_cell_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

double match_percentage(const std::vector<std::array<double, 3>>& queries,
                        const MatchIndex& index) {
  std::uint64_t matched = 0;
  for (const auto& p : queries) {
    if (index.has_match(p)) {
      ++matched;
    }
  }
  return 100.0 * static_cast<double>(matched) / static_cast<double>(queries.size());
}

void append_value(std::ostringstream& out, const char* key, double value) {
  out << key << '=' << value << '\n';
}

}  // namespace

double iou(const VoxelGrid& a, const VoxelGrid& b) {
  if (a.resolution() != b.resolution()) {
    throw std::invalid_argument("IoU requires equal resolutions, got " +
                                std::to_string(a.resolution()) + " and " +
                                std::to_string(b.resolution()));
  }
  const auto& k = kernels::active();
  const std::uint64_t inter = k.count_and_u8(a.data(), b.data(), a.cell_count());
  const std::uint64_t uni = k.count_or_u8(a.data(), b.data(), a.cell_count());
  if (uni == 0) {
    return 1.0;  // vacuous agreement of two empty grids
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double QuadMesh::total_area() const {
  double total = 0.0;
  for (double a : areas) {
    total += a;
  }
  return total;
}

QuadMesh exposed_face_mesh(const VoxelGrid& grid) {
  const std::uint32_t r = grid.resolution();
  const double inv = 1.0 / static_cast<double>(r);
  const double face_area = inv * inv;

  QuadMesh mesh;
  std::unordered_map<std::uint64_t, std::uint32_t> corner_ids;
  const std::uint64_t stride = r + 1;

  auto vertex = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) -> std::uint32_t {
    const std::uint64_t key = x + stride * (y + stride * z);
    auto [it, inserted] = corner_ids.try_emplace(
        key, static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted) {
      mesh.vertices.push_back({x * inv, y * inv, z * inv});
    }
    return it->second;
  };

  auto empty_at = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const std::int64_t res = r;
    if (x < 0 || y < 0 || z < 0 || x >= res || y >= res || z >= res) {
      return true;
    }
    return !grid.test(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                      static_cast<std::uint32_t>(z));
  };

  for (std::uint32_t z = 0; z < r; ++z) {
    for (std::uint32_t y = 0; y < r; ++y) {
      for (std::uint32_t x = 0; x < r; ++x) {
        if (!grid.test(x, y, z)) {
          continue;
        }
        // Corner orderings are counter-clockwise seen from outside.
        if (empty_at(x + 1, y, z)) {
          mesh.quads.push_back({vertex(x + 1, y, z), vertex(x + 1, y + 1, z),
                                vertex(x + 1, y + 1, z + 1), vertex(x + 1, y, z + 1)});
        }
        if (empty_at(static_cast<std::int64_t>(x) - 1, y, z)) {
          mesh.quads.push_back({vertex(x, y, z), vertex(x, y, z + 1),
                                vertex(x, y + 1, z + 1), vertex(x, y + 1, z)});
        }
        if (empty_at(x, y + 1, z)) {
          mesh.quads.push_back({vertex(x, y + 1, z), vertex(x, y + 1, z + 1),
                                vertex(x + 1, y + 1, z + 1), vertex(x + 1, y + 1, z)});
        }
        if (empty_at(x, static_cast<std::int64_t>(y) - 1, z)) {
          mesh.quads.push_back({vertex(x, y, z), vertex(x + 1, y, z),
                                vertex(x + 1, y, z + 1), vertex(x, y, z + 1)});
        }
        if (empty_at(x, y, z + 1)) {
          mesh.quads.push_back({vertex(x, y, z + 1), vertex(x + 1, y, z + 1),
                                vertex(x + 1, y + 1, z + 1), vertex(x, y + 1, z + 1)});
        }
        if (empty_at(x, y, static_cast<std::int64_t>(z) - 1)) {
          mesh.quads.push_back({vertex(x, y, z), vertex(x, y + 1, z),
                                vertex(x + 1, y + 1, z), vertex(x + 1, y, z)});
        }
      }
    }
  }
  mesh.areas.assign(mesh.quads.size(), face_area);
  return mesh;
}

std::vector<std::array<double, 3>> sample_surface(const QuadMesh& mesh, std::uint64_t n,
                                                  std::uint64_t seed) {
  if (mesh.quads.empty()) {
    throw std::invalid_argument("cannot sample points from an empty mesh");
  }
  std::vector<double> cumulative(mesh.quads.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.quads.size(); ++i) {
    total += mesh.areas[i];
    cumulative[i] = total;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::array<double, 3>> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double target = uniform01(rng) * total;
    const std::size_t q =
        std::lower_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin();
    const auto& quad = mesh.quads[std::min(q, mesh.quads.size() - 1)];
    const auto& v0 = mesh.vertices[quad[0]];
    const auto& v1 = mesh.vertices[quad[1]];
    const auto& v3 = mesh.vertices[quad[3]];
    const double s = uniform01(rng);
    const double t = uniform01(rng);
    points.push_back({v0[0] + s * (v1[0] - v0[0]) + t * (v3[0] - v0[0]),
                      v0[1] + s * (v1[1] - v0[1]) + t * (v3[1] - v0[1]),
                      v0[2] + s * (v1[2] - v0[2]) + t * (v3[2] - v0[2])});
  }
  return points;
}

EvalReport f1_surface(const VoxelGrid& pred, const VoxelGrid& gt, std::uint64_t n,
                      double threshold_sq, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("sample count must be >= 1");
  }
  if (threshold_sq <= 0.0) {
    throw std::invalid_argument("threshold_sq must be positive");
  }
  if (pred.empty() || gt.empty()) {
    throw std::invalid_argument("surface F1 requires nonempty grids");
  }

  const auto pred_points = sample_surface(exposed_face_mesh(pred), n, seed);
  const auto gt_points = sample_surface(exposed_face_mesh(gt), n, seed);

  EvalReport report;
  report.sample_count = n;
  report.threshold_sq = threshold_sq;
  report.seed = seed;
  report.precision = match_percentage(pred_points, MatchIndex(gt_points, threshold_sq));
  report.recall = match_percentage(gt_points, MatchIndex(pred_points, threshold_sq));
  const double p = *report.precision;
  const double r = *report.recall;
  report.f1 = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  return report;
}

std::string EvalReport::to_kv() const {
  std::ostringstream out;
  out.precision(10);
  if (iou) {
    append_value(out, "iou", *iou);
  }
  if (f1) {
    append_value(out, "f1", *f1);
  }
  if (precision) {
    append_value(out, "precision", *precision);
  }
  if (recall) {
    append_value(out, "recall", *recall);
  }
  if (f1 || precision || recall) {
    out << "samples=" << sample_count << '\n';
    append_value(out, "threshold_sq", threshold_sq);
    out << "seed=" << seed << '\n';
  }
  return out.str();
}

void EvalReport::write_csv_rows(std::ostream& out, const std::string& category) const {
  auto row = [&](const char* metric, double value, bool sampled) {
    out.precision(10);
    out << category << ',' << metric << ',' << value << ',';
    if (sampled) {
      out << sample_count << ',' << seed;
    } else {
      out << ',';
    }
    out << '\n';
  };
  if (iou) {
    row("iou", *iou, false);
  }
  if (f1) {
    row("f1", *f1, true);
  }
  if (precision) {
    row("precision", *precision, true);
  }
  if (recall) {
    row("recall", *recall, true);
  }
}

void write_obj(const QuadMesh& mesh, std::ostream& out) {
  out << "# mvdvox exposed-face mesh\n";
  out.precision(9);
  for (const auto& v : mesh.vertices) {
    out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto& q : mesh.quads) {
    out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << '\n';
    out << "f " << q[0] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
  }
}

}  // namespace mvd
