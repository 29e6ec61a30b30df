#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <vector>

namespace mlseb {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// Column-per-point storage; col(i) is point i.
template <typename Scalar>
using PointList = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

/// A straight-line edge drawing, endpoints in drawing coordinates.
template <typename Scalar>
struct Edge {
  Vec2<Scalar> p;
  Vec2<Scalar> q;

  [[nodiscard]] Scalar length() const { return (q - p).norm(); }
};

/// Node-link drawing with all coordinates inside [0,width] x [0,height].
/// Edge ids are implicit: edge i is edges[i].
template <typename Scalar>
struct Graph {
  std::vector<Edge<Scalar>> edges;
  Scalar width{0};
  Scalar height{0};
  int dropped_zero_length{0};  // self-loop rows removed while loading

  [[nodiscard]] int edge_count() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] Scalar min_extent() const { return std::min(width, height); }
};

/// Per-edge polylines, same edge ordering as the Graph they derive from.
template <typename Scalar>
struct PolylineSet {
  std::vector<std::vector<Vec2<Scalar>>> lines;

  [[nodiscard]] int edge_count() const { return static_cast<int>(lines.size()); }
  [[nodiscard]] long long point_count() const {
    long long n = 0;
    for (const auto& line : lines) n += static_cast<long long>(line.size());
    return n;
  }
};

}  // namespace mlseb
