#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mlseb/types.hpp"

namespace mlseb {

/// Fixed-radius neighbor acceleration: uniform cells over the bounding box
/// of the indexed positions, CSR bucket layout, rebuilt per iteration.
/// Entries within a bucket keep ascending site order, so query results are
/// reproducible no matter how many threads consume them.
template <typename Scalar>
struct UniformGrid {
  Scalar cell_size{1};
  Vec2<Scalar> origin{Vec2<Scalar>::Zero()};
  int nx{0};
  int ny{0};
  std::vector<int> bucket_start;  // nx*ny + 1 offsets into entries
  std::vector<int> entries;       // site indices, bucketed

  [[nodiscard]] int cell_count() const { return nx * ny; }

  [[nodiscard]] long long cell_x(Scalar x) const {
    return static_cast<long long>(std::floor((x - origin.x()) / cell_size));
  }
  [[nodiscard]] long long cell_y(Scalar y) const {
    return static_cast<long long>(std::floor((y - origin.y()) / cell_size));
  }
};

template <typename Scalar>
[[nodiscard]] UniformGrid<Scalar> build_grid(const PointList<Scalar>& positions, Scalar cell_size) {
  UniformGrid<Scalar> grid;
  grid.cell_size = cell_size;
  const int n = static_cast<int>(positions.cols());
  if (n == 0) {
    grid.nx = grid.ny = 1;
    grid.bucket_start.assign(2, 0);
    return grid;
  }

  const Vec2<Scalar> lo = positions.rowwise().minCoeff();
  const Vec2<Scalar> hi = positions.rowwise().maxCoeff();
  grid.origin = lo;
  grid.nx = static_cast<int>(std::floor((hi.x() - lo.x()) / cell_size)) + 1;
  grid.ny = static_cast<int>(std::floor((hi.y() - lo.y()) / cell_size)) + 1;

  const auto bucket_of = [&](int i) {
    int cx = static_cast<int>(grid.cell_x(positions(0, i)));
    int cy = static_cast<int>(grid.cell_y(positions(1, i)));
    cx = std::min(std::max(cx, 0), grid.nx - 1);
    cy = std::min(std::max(cy, 0), grid.ny - 1);
    return cy * grid.nx + cx;
  };

  // Counting sort keyed by bucket, stable in site order.
  grid.bucket_start.assign(static_cast<std::size_t>(grid.cell_count()) + 1, 0);
  for (int i = 0; i < n; ++i) ++grid.bucket_start[bucket_of(i) + 1];
  for (std::size_t c = 1; c < grid.bucket_start.size(); ++c)
    grid.bucket_start[c] += grid.bucket_start[c - 1];
  grid.entries.resize(n);
  std::vector<int> cursor(grid.bucket_start.begin(), grid.bucket_start.end() - 1);
  for (int i = 0; i < n; ++i) grid.entries[cursor[bucket_of(i)]++] = i;
  return grid;
}

/// Visit every indexed site with |position - center| < r (strict), scanning
/// the 3x3 cell block around the center's cell. Exact when the grid was
/// built with cell_size >= r; the paper-style (2/3)r cell is an
/// approximation that can miss sites near block corners.
template <typename Scalar, typename Fn>
void for_each_neighbor(const UniformGrid<Scalar>& grid, const PointList<Scalar>& positions,
                       const Vec2<Scalar>& center, Scalar r, Fn&& fn) {
  const Scalar r2 = r * r;
  const long long cx = grid.cell_x(center.x());
  const long long cy = grid.cell_y(center.y());
  const int x0 = static_cast<int>(std::max<long long>(cx - 1, 0));
  const int x1 = static_cast<int>(std::min<long long>(cx + 1, grid.nx - 1));
  const int y0 = static_cast<int>(std::max<long long>(cy - 1, 0));
  const int y1 = static_cast<int>(std::min<long long>(cy + 1, grid.ny - 1));
  for (int gy = y0; gy <= y1; ++gy) {
    for (int gx = x0; gx <= x1; ++gx) {
      const int bucket = gy * grid.nx + gx;
      const int begin = grid.bucket_start[bucket];
      const int end = grid.bucket_start[bucket + 1];
      for (int k = begin; k < end; ++k) {
        const int i = grid.entries[k];
        const Scalar d2 = (positions.col(i) - center).squaredNorm();
        if (d2 < r2) fn(i, d2);
      }
    }
  }
}

template <typename Scalar>
[[nodiscard]] std::vector<int> neighbors(const UniformGrid<Scalar>& grid,
                                         const PointList<Scalar>& positions,
                                         const Vec2<Scalar>& center, Scalar r) {
  std::vector<int> out;
  for_each_neighbor(grid, positions, center, r, [&](int i, Scalar) { out.push_back(i); });
  return out;
}

}  // namespace mlseb
