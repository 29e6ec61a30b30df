#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "mlseb/types.hpp"

namespace mlseb {

namespace detail {

/// Cox-de Boor basis N_{i,p}(t), naive recursion with the 0/0 := 0
/// convention. Knots are clamped integers, so p is at most 3 and the
/// recursion stays shallow.
template <typename Scalar>
[[nodiscard]] Scalar bspline_basis(const std::vector<Scalar>& knots, int i, int p, Scalar t) {
  if (p == 0) return (knots[i] <= t && t < knots[i + 1]) ? Scalar(1) : Scalar(0);
  Scalar value = 0;
  const Scalar left_den = knots[i + p] - knots[i];
  if (left_den > Scalar(0)) value += (t - knots[i]) / left_den * bspline_basis(knots, i, p - 1, t);
  const Scalar right_den = knots[i + p + 1] - knots[i + 1];
  if (right_den > Scalar(0))
    value += (knots[i + p + 1] - t) / right_den * bspline_basis(knots, i + 1, p - 1, t);
  return value;
}

/// Clamped knot vector for n control points of degree p, interior knots at
/// the integers: 0 (p+1 times), 1, ..., n-p-1, n-p (p+1 times).
template <typename Scalar>
[[nodiscard]] std::vector<Scalar> clamped_knots(int n, int p) {
  std::vector<Scalar> knots;
  knots.reserve(static_cast<std::size_t>(n + p + 1));
  for (int i = 0; i < p + 1; ++i) knots.push_back(Scalar(0));
  for (int k = 1; k < n - p; ++k) knots.push_back(Scalar(k));
  for (int i = 0; i < p + 1; ++i) knots.push_back(Scalar(n - p));
  return knots;
}

}  // namespace detail

/// Clamped uniform cubic B-spline through the control polyline, degree
/// reduced to the point count minus one when fewer than four points are
/// given. The output is a dense polyline with samples_per_segment points
/// per knot span plus the final endpoint; first and last output points are
/// the first and last control points verbatim.
template <typename Scalar>
[[nodiscard]] std::vector<Vec2<Scalar>> bspline(const std::vector<Vec2<Scalar>>& points,
                                                int samples_per_segment) {
  assert(points.size() >= 2);
  assert(samples_per_segment >= 1);
  const int n = static_cast<int>(points.size());
  const int p = n - 1 < 3 ? n - 1 : 3;
  const int spans = n - p;
  const auto knots = detail::clamped_knots<Scalar>(n, p);

  std::vector<Vec2<Scalar>> out;
  out.reserve(static_cast<std::size_t>(spans) * samples_per_segment + 1);
  out.push_back(points.front());
  const int steps = spans * samples_per_segment;
  for (int k = 1; k < steps; ++k) {
    const Scalar t = Scalar(spans) * Scalar(k) / Scalar(steps);
    Vec2<Scalar> point = Vec2<Scalar>::Zero();
    for (int i = 0; i < n; ++i) {
      const Scalar basis = detail::bspline_basis(knots, i, p, t);
      if (basis != Scalar(0)) point += basis * points[i];
    }
    out.push_back(point);
  }
  out.push_back(points.back());
  return out;
}

}  // namespace mlseb
