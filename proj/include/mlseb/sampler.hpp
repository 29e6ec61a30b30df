#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "mlseb/types.hpp"

namespace mlseb {

/// Flat site storage. Sites are grouped by edge; edge e owns the index
/// range [edge_offsets[e], edge_offsets[e+1]). orig and t are fixed at
/// sampling time; only pos is touched by bundling.
template <typename Scalar>
struct SiteCloud {
  PointList<Scalar> pos;
  PointList<Scalar> orig;
  Eigen::VectorXi edge_id;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> t;  // arc-length parameter in [0,1]
  std::vector<int> edge_offsets;               // edge_count()+1 entries

  [[nodiscard]] int site_count() const { return static_cast<int>(pos.cols()); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edge_offsets.size()) - 1; }
  [[nodiscard]] int edge_begin(int e) const { return edge_offsets[e]; }
  [[nodiscard]] int edge_end(int e) const { return edge_offsets[e + 1]; }
  [[nodiscard]] int edge_size(int e) const { return edge_offsets[e + 1] - edge_offsets[e]; }
  [[nodiscard]] int arc_index(int site) const { return site - edge_offsets[edge_id[site]]; }
  [[nodiscard]] bool is_endpoint(int site) const {
    const int e = edge_id[site];
    return site == edge_offsets[e] || site + 1 == edge_offsets[e + 1];
  }
};

/// Number of sites for an edge of length `len` at uniform step `rho`:
/// endpoints included, spacing <= rho, at least the two endpoints.
template <typename Scalar>
[[nodiscard]] int site_count_for_length(Scalar len, Scalar rho) {
  const int m = static_cast<int>(std::ceil(len / rho)) + 1;
  return m < 2 ? 2 : m;
}

/// Discretize every edge drawing into sites with uniform step rho.
/// Sampling happens once; bundling never resamples.
template <typename Scalar>
[[nodiscard]] SiteCloud<Scalar> sample(const Graph<Scalar>& graph, Scalar rho) {
  assert(rho > Scalar(0));
  const int n_edges = graph.edge_count();

  SiteCloud<Scalar> cloud;
  cloud.edge_offsets.resize(n_edges + 1);
  cloud.edge_offsets[0] = 0;
  for (int e = 0; e < n_edges; ++e) {
    const int m = site_count_for_length(graph.edges[e].length(), rho);
    cloud.edge_offsets[e + 1] = cloud.edge_offsets[e] + m;
  }

  const int total = cloud.edge_offsets[n_edges];
  cloud.pos.resize(2, total);
  cloud.orig.resize(2, total);
  cloud.edge_id.resize(total);
  cloud.t.resize(total);

  for (int e = 0; e < n_edges; ++e) {
    const Vec2<Scalar>& p = graph.edges[e].p;
    const Vec2<Scalar>& q = graph.edges[e].q;
    const int begin = cloud.edge_offsets[e];
    const int m = cloud.edge_offsets[e + 1] - begin;
    for (int k = 0; k < m; ++k) {
      const Scalar tk = Scalar(k) / Scalar(m - 1);
      // write the far endpoint verbatim so endpoint sites match the edge
      cloud.orig.col(begin + k) = (k == m - 1) ? q : Vec2<Scalar>(p + tk * (q - p));
      cloud.edge_id[begin + k] = e;
      cloud.t[begin + k] = tk;
    }
  }
  cloud.pos = cloud.orig;
  return cloud;
}

}  // namespace mlseb
