#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlseb/types.hpp"

namespace mlseb {

namespace detail {

/// Engine bits mapped to [0,1) directly; distribution classes are not
/// bit-portable across standard libraries, this is.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// n horizontal edges of identical length, stacked `gap` pixels apart and
/// centered in the box. Deterministic; the seed is unused.
template <typename Scalar>
[[nodiscard]] std::vector<Edge<Scalar>> synth_parallel_pairs(int n, Scalar gap, Scalar width,
                                                             Scalar height) {
  std::vector<Edge<Scalar>> edges;
  edges.reserve(n);
  const Scalar x0 = Scalar(0.125) * width;
  const Scalar x1 = Scalar(0.875) * width;
  for (int i = 0; i < n; ++i) {
    const Scalar y = height / Scalar(2) + (Scalar(i) - Scalar(n - 1) / Scalar(2)) * gap;
    edges.push_back({Vec2<Scalar>(x0, y), Vec2<Scalar>(x1, y)});
  }
  return edges;
}

/// n spokes from the box center to seeded random points on an annulus.
template <typename Scalar>
[[nodiscard]] std::vector<Edge<Scalar>> synth_radial_hub(int n, Scalar width, Scalar height,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge<Scalar>> edges;
  edges.reserve(n);
  const Vec2<Scalar> hub(width / Scalar(2), height / Scalar(2));
  const Scalar extent = std::min(width, height);
  for (int i = 0; i < n; ++i) {
    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(detail::uniform01(rng));
    const Scalar radius = (Scalar(0.25) + Scalar(0.2) * Scalar(detail::uniform01(rng))) * extent;
    const Vec2<Scalar> rim = hub + radius * Vec2<Scalar>(std::cos(angle), std::sin(angle));
    edges.push_back({hub, rim});
  }
  return edges;
}

/// n edges with both endpoints seeded uniform in the box.
template <typename Scalar>
[[nodiscard]] std::vector<Edge<Scalar>> synth_random_uniform(int n, Scalar width, Scalar height,
                                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge<Scalar>> edges;
  edges.reserve(n);
  while (static_cast<int>(edges.size()) < n) {
    const Vec2<Scalar> p(Scalar(detail::uniform01(rng)) * width,
                         Scalar(detail::uniform01(rng)) * height);
    const Vec2<Scalar> q(Scalar(detail::uniform01(rng)) * width,
                         Scalar(detail::uniform01(rng)) * height);
    if (p == q) continue;
    edges.push_back({p, q});
  }
  return edges;
}

template <typename Scalar>
[[nodiscard]] std::vector<Edge<Scalar>> synth_edges(const std::string& generator, int n, Scalar gap,
                                                    Scalar width, Scalar height,
                                                    std::uint64_t seed) {
  if (generator == "parallel-pairs") return synth_parallel_pairs(n, gap, width, height);
  if (generator == "radial-hub") return synth_radial_hub(n, width, height, seed);
  if (generator == "random-uniform") return synth_random_uniform(n, width, height, seed);
  throw std::runtime_error("unknown generator '" + generator +
                           "' (expected parallel-pairs, radial-hub, or random-uniform)");
}

/// Wrap generated edges as a ready-to-bundle drawing (already in box
/// coordinates, no normalization pass needed).
template <typename Scalar>
[[nodiscard]] Graph<Scalar> synth_graph(const std::string& generator, int n, Scalar gap,
                                        Scalar width, Scalar height, std::uint64_t seed) {
  Graph<Scalar> graph;
  graph.edges = synth_edges(generator, n, gap, width, height, seed);
  graph.width = width;
  graph.height = height;
  return graph;
}

}  // namespace mlseb
