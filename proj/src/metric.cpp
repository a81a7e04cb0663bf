#include "flp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "flp/errors.hpp"
#include "flp/rng.hpp"

namespace flp {

namespace {

constexpr double kTriangleSlack = 1e-9;

void check_triangle(const MetricSpace& m) {
  const int n = m.size();
  auto violates = [&](int u, int v, int w) {
    return m(u, w) > m(u, v) + m(v, w) + kTriangleSlack;
  };
  if (n <= 200) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
          if (violates(u, v, w)) {
            throw InvalidArgument(
                "metric.distances: triangle inequality violated at (" +
                std::to_string(u) + "," + std::to_string(v) + "," +
                std::to_string(w) + ")");
          }
    return;
  }
  // Large explicit matrices: seeded triple sampling.
  Rng rng(derive_seed(0x7472696164ULL, static_cast<std::uint64_t>(n), 0));
  for (int i = 0; i < 200000; ++i) {
    const int u = static_cast<int>(rng.next_u64() % n);
    const int v = static_cast<int>(rng.next_u64() % n);
    const int w = static_cast<int>(rng.next_u64() % n);
    if (violates(u, v, w)) {
      throw InvalidArgument(
          "metric.distances: triangle inequality violated at (" +
          std::to_string(u) + "," + std::to_string(v) + "," +
          std::to_string(w) + ")");
    }
  }
}

}  // namespace

MetricSpace::MetricSpace(int n, std::vector<double> distances,
                         std::optional<std::vector<Point2>> points,
                         Source source)
    : n_(n),
      distances_(std::move(distances)),
      points_(std::move(points)),
      source_(source) {}

MetricSpace MetricSpace::from_points(std::vector<Point2> points) {
  if (points.empty()) {
    throw InvalidArgument("metric.points: at least one point required");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      throw InvalidArgument("metric.points[" + std::to_string(i) +
                            "]: non-finite coordinate");
    }
  }
  const int n = static_cast<int>(points.size());
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      d[static_cast<std::size_t>(i) * n + j] = dist;
      d[static_cast<std::size_t>(j) * n + i] = dist;
    }
  }
  return MetricSpace(n, std::move(d), std::move(points), Source::kEuclidean2d);
}

MetricSpace MetricSpace::from_matrix(std::size_t n,
                                     std::vector<double> distances) {
  if (n == 0) {
    throw InvalidArgument("metric.distances: empty matrix");
  }
  if (distances.size() != n * n) {
    throw InvalidArgument("metric.distances: expected " + std::to_string(n) +
                          "x" + std::to_string(n) + " entries, got " +
                          std::to_string(distances.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i * n + i] != 0.0) {
      throw InvalidArgument("metric.distances[" + std::to_string(i) + "][" +
                            std::to_string(i) + "]: diagonal must be 0");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = distances[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidArgument("metric.distances[" + std::to_string(i) + "][" +
                              std::to_string(j) +
                              "]: must be finite and >= 0");
      }
      if (distances[j * n + i] != v) {
        throw InvalidArgument("metric.distances[" + std::to_string(i) + "][" +
                              std::to_string(j) + "]: asymmetric, d(" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ") != d(" + std::to_string(j) + "," +
                              std::to_string(i) + ")");
      }
    }
  }
  MetricSpace m(static_cast<int>(n), std::move(distances), std::nullopt,
                Source::kExplicit);
  check_triangle(m);
  return m;
}

std::vector<int> MetricSpace::ball(int center, double radius) const {
  if (center < 0 || center >= n_) {
    throw InvalidArgument("ball: center index " + std::to_string(center) +
                          " out of range [0," + std::to_string(n_) + ")");
  }
  if (!(radius >= 0.0)) {
    throw InvalidArgument("ball: radius must be >= 0");
  }
  std::vector<int> members;
  for (int u = 0; u < n_; ++u) {
    if ((*this)(center, u) <= radius) members.push_back(u);
  }
  return members;
}

double MetricSpace::max_distance() const {
  return *std::max_element(distances_.begin(), distances_.end());
}

MetricSpace build_metric(const std::vector<Point2>& points) {
  return MetricSpace::from_points(points);
}

}  // namespace flp
