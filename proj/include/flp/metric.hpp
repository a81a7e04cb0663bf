#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace flp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Finite metric on n locations with the full distance matrix materialized.
// Immutable after construction; cheap to share read-only across workers.
class MetricSpace {
 public:
  enum class Source { kEuclidean2d, kExplicit };

  // Builds a euclidean-2d metric from planar coordinates.
  static MetricSpace from_points(std::vector<Point2> points);

  // Builds an explicit metric from a dense row-major matrix. Validates
  // symmetry, zero diagonal, non-negativity and the triangle inequality
  // (exhaustively for n <= 200, by seeded triple sampling above).
  static MetricSpace from_matrix(std::size_t n, std::vector<double> distances);

  int size() const { return n_; }
  Source source() const { return source_; }

  double operator()(int u, int v) const {
    return distances_[static_cast<std::size_t>(u) * n_ + v];
  }

  // Present only for euclidean-2d metrics.
  const std::optional<std::vector<Point2>>& points() const { return points_; }

  // Closed ball: {u : d(center, u) <= radius}, ascending indices.
  std::vector<int> ball(int center, double radius) const;

  double max_distance() const;

 private:
  MetricSpace(int n, std::vector<double> distances,
              std::optional<std::vector<Point2>> points, Source source);

  int n_;
  std::vector<double> distances_;  // row-major n*n
  std::optional<std::vector<Point2>> points_;
  Source source_;
};

MetricSpace build_metric(const std::vector<Point2>& points);

inline std::vector<int> ball(const MetricSpace& m, int center, double radius) {
  return m.ball(center, radius);
}

}  // namespace flp
