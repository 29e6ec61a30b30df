#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "mlseb/grid.hpp"
#include "mlseb/kernel.hpp"
#include "mlseb/mls.hpp"
#include "mlseb/parallel.hpp"
#include "mlseb/sampler.hpp"
#include "mlseb/types.hpp"

namespace mlseb {

enum class CellMode {
  kExact,  // cell_size = r; the 3x3 block covers the full radius-r disc
  kPaper,  // cell_size = (2/3) r; can miss sites near block corners
};

template <typename Scalar>
struct BundleParams {
  Scalar rho{0};           // sampling step in pixels; 0 derives 5% of min extent
  Scalar r0{Scalar(0.10)};     // initial bandwidth as fraction of min extent
  Scalar lambda{Scalar(0.7)};  // bandwidth reduction factor per iteration
  int iterations{5};
  int order{2};
  Scalar width{0};   // drawing space; 0 takes the graph's
  Scalar height{0};
  bool pin_endpoints{true};
  CellMode cell_mode{CellMode::kExact};
  unsigned threads{0};  // 0 = hardware concurrency

  /// Soft range checks; values outside come back as warnings, never errors.
  [[nodiscard]] std::vector<std::string> validate() const {
    std::vector<std::string> warnings;
    if (r0 < Scalar(0.05) || r0 > Scalar(0.20))
      warnings.push_back("bandwidth fraction " + std::to_string(double(r0)) +
                         " outside the stable range [0.05, 0.20]");
    if (lambda < Scalar(0.5) || lambda > Scalar(0.9))
      warnings.push_back("reduction factor " + std::to_string(double(lambda)) +
                         " outside the stable range [0.5, 0.9]");
    if (iterations < 3 || iterations > 10)
      warnings.push_back("iteration count " + std::to_string(iterations) +
                         " outside the stable range [3, 10]");
    if (order != 1 && order != 2)
      warnings.push_back("polynomial order " + std::to_string(order) + " unsupported; use 1 or 2");
    return warnings;
  }
};

template <typename Scalar>
struct IterationStats {
  int iteration{0};
  Scalar radius{0};
  Scalar mean_displacement{0};  // mean |new - old| over all sites, this iteration
  Scalar distortion{0};         // sum |pos - orig| after the iteration
  Scalar distortion_sq{0};      // squared-distance variant, debug only
  double millis{0};
};

template <typename Scalar>
struct BundleResult {
  SiteCloud<Scalar> cloud;
  std::vector<IterationStats<Scalar>> stats;
};

namespace detail {

/// One Jacobi projection pass: every site is fit and projected against the
/// iteration-start snapshot, writing into `next`. Returns nothing; sites
/// with no usable fit keep their snapshot position.
template <typename Scalar>
void project_pass(const SiteCloud<Scalar>& cloud, const UniformGrid<Scalar>& grid, Scalar r,
                  int order, bool pin_endpoints, unsigned threads, PointList<Scalar>& next) {
  const PointList<Scalar>& snapshot = cloud.pos;
  next = snapshot;
  parallel_for(static_cast<std::size_t>(cloud.site_count()), threads,
               [&](std::size_t begin, std::size_t end) {
                 std::vector<Vec2<Scalar>> pts;
                 std::vector<Scalar> ws;
                 pts.reserve(128);
                 ws.reserve(128);
                 for (std::size_t i = begin; i < end; ++i) {
                   const int site = static_cast<int>(i);
                   if (pin_endpoints && cloud.is_endpoint(site)) continue;
                   const Vec2<Scalar> center = snapshot.col(site);
                   pts.clear();
                   ws.clear();
                   for_each_neighbor(grid, snapshot, center, r, [&](int j, Scalar d2) {
                     pts.push_back(snapshot.col(j));
                     ws.push_back(theta(std::sqrt(d2), r));
                   });
                   if (pts.size() < 2) continue;
                   const auto frame = fit_frame<Scalar>(pts, ws);
                   if (!frame) continue;
                   auto poly = fit_poly<Scalar>(*frame, pts, ws, order);
                   if (!poly && order == 2) poly = fit_poly<Scalar>(*frame, pts, ws, 1);
                   if (!poly) continue;
                   next.col(site) = project(center, *frame, *poly);
                 }
               });
}

}  // namespace detail

/// Iterative bundling: sample once, then per iteration rebuild the grid at
/// the scheduled bandwidth and project every free site simultaneously.
template <typename Scalar>
[[nodiscard]] BundleResult<Scalar> bundle(const Graph<Scalar>& graph,
                                          const BundleParams<Scalar>& params) {
  const Scalar extent = (params.width > Scalar(0) && params.height > Scalar(0))
                            ? std::min(params.width, params.height)
                            : graph.min_extent();
  const Scalar rho = params.rho > Scalar(0) ? params.rho : Scalar(0.05) * extent;

  BundleResult<Scalar> result;
  result.cloud = sample(graph, rho);
  SiteCloud<Scalar>& cloud = result.cloud;
  if (cloud.site_count() == 0) return result;

  PointList<Scalar> next;
  for (int u = 0; u < params.iterations; ++u) {
    const auto started = std::chrono::steady_clock::now();
    const Scalar r = params.r0 * extent * std::pow(params.lambda, Scalar(u));
    const Scalar cell = params.cell_mode == CellMode::kExact ? r : Scalar(2) / Scalar(3) * r;
    const UniformGrid<Scalar> grid = build_grid(cloud.pos, cell);
    detail::project_pass(cloud, grid, r, params.order, params.pin_endpoints, params.threads, next);

    IterationStats<Scalar> stats;
    stats.iteration = u;
    stats.radius = r;
    stats.mean_displacement =
        (next - cloud.pos).colwise().norm().sum() / Scalar(cloud.site_count());
    cloud.pos.swap(next);
    stats.distortion = (cloud.pos - cloud.orig).colwise().norm().sum();
    stats.distortion_sq = (cloud.pos - cloud.orig).colwise().squaredNorm().sum();
    stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started)
                       .count();
    result.stats.push_back(stats);
  }
  return result;
}

/// Per-edge polylines from the current site positions; point counts stay
/// m_i because bundling never resamples.
template <typename Scalar>
[[nodiscard]] PolylineSet<Scalar> to_polylines(const SiteCloud<Scalar>& cloud) {
  PolylineSet<Scalar> polys;
  polys.lines.resize(cloud.edge_count());
  for (int e = 0; e < cloud.edge_count(); ++e) {
    auto& line = polys.lines[e];
    line.reserve(cloud.edge_size(e));
    for (int i = cloud.edge_begin(e); i < cloud.edge_end(e); ++i) line.push_back(cloud.pos.col(i));
  }
  return polys;
}

}  // namespace mlseb
