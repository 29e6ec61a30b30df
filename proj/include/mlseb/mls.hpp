#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "mlseb/types.hpp"

namespace mlseb {

/// Local coordinate system of a weighted neighborhood: origin at the
/// weighted centroid, abscissa along the weighted principal direction.
template <typename Scalar>
struct LocalFrame {
  Vec2<Scalar> centroid;
  Vec2<Scalar> axis;    // unit, sign-fixed (first nonzero component > 0)
  Vec2<Scalar> normal;  // axis rotated +90 degrees

  [[nodiscard]] Scalar u_of(const Vec2<Scalar>& p) const { return axis.dot(p - centroid); }
  [[nodiscard]] Scalar v_of(const Vec2<Scalar>& p) const { return normal.dot(p - centroid); }
};

/// Polynomial graph v = f(u) over a LocalFrame abscissa, order 1 or 2.
template <typename Scalar>
struct LocalPoly {
  int order{1};
  Eigen::Matrix<Scalar, 3, 1> coeffs{Eigen::Matrix<Scalar, 3, 1>::Zero()};  // c0 + c1 u + c2 u^2

  [[nodiscard]] Scalar eval(Scalar u) const {
    Scalar v = coeffs[0] + coeffs[1] * u;
    if (order >= 2) v += coeffs[2] * u * u;
    return v;
  }
};

/// Weighted principal-direction frame of a neighborhood. Returns nothing
/// when the neighborhood carries no usable spread (fewer than two points,
/// non-positive total weight, or all points coincident).
template <typename Scalar>
[[nodiscard]] std::optional<LocalFrame<Scalar>> fit_frame(std::span<const Vec2<Scalar>> positions,
                                                          std::span<const Scalar> weights) {
  const std::size_t n = positions.size();
  if (n < 2 || weights.size() != n) return std::nullopt;

  Scalar wsum = 0;
  Vec2<Scalar> mean = Vec2<Scalar>::Zero();
  for (std::size_t j = 0; j < n; ++j) {
    wsum += weights[j];
    mean += weights[j] * positions[j];
  }
  if (!(wsum > Scalar(0))) return std::nullopt;
  mean /= wsum;

  Scalar cxx = 0, cxy = 0, cyy = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2<Scalar> d = positions[j] - mean;
    cxx += weights[j] * d.x() * d.x();
    cxy += weights[j] * d.x() * d.y();
    cyy += weights[j] * d.y() * d.y();
  }
  cxx /= wsum;
  cxy /= wsum;
  cyy /= wsum;

  const Scalar trace = cxx + cyy;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (!(trace > eps * eps * Scalar(64) * (Scalar(1) + mean.squaredNorm()))) return std::nullopt;

  // Closed-form principal eigenvector of [[cxx, cxy], [cxy, cyy]].
  const Scalar half_gap = (cxx - cyy) / Scalar(2);
  const Scalar root = std::hypot(half_gap, cxy);
  Vec2<Scalar> axis;
  if (root <= eps * trace) {
    axis = Vec2<Scalar>(1, 0);  // isotropic: eigenvalues tied, any direction fits
  } else if (half_gap >= Scalar(0)) {
    axis = Vec2<Scalar>(half_gap + root, cxy);
  } else {
    axis = Vec2<Scalar>(cxy, root - half_gap);
  }
  axis.normalize();
  if (axis.x() < Scalar(0) || (axis.x() == Scalar(0) && axis.y() < Scalar(0))) axis = -axis;

  return LocalFrame<Scalar>{mean, axis, Vec2<Scalar>(-axis.y(), axis.x())};
}

/// Weighted polynomial regression v = f(u) in frame coordinates, solved by
/// the (order+1) normal equations. The abscissas are rescaled by their RMS
/// internally for conditioning; coefficients come back in frame units.
/// Returns nothing when the normal matrix is singular (too few distinct
/// abscissas for the requested order).
template <typename Scalar>
[[nodiscard]] std::optional<LocalPoly<Scalar>> fit_poly(const LocalFrame<Scalar>& frame,
                                                        std::span<const Vec2<Scalar>> positions,
                                                        std::span<const Scalar> weights, int order) {
  const std::size_t n = positions.size();
  if ((order != 1 && order != 2) || n < static_cast<std::size_t>(order + 1) || weights.size() != n)
    return std::nullopt;

  Scalar wsum = 0, uu = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar u = frame.u_of(positions[j]);
    wsum += weights[j];
    uu += weights[j] * u * u;
  }
  if (!(wsum > Scalar(0))) return std::nullopt;
  const Scalar scale = std::sqrt(uu / wsum);
  if (!(scale > Scalar(0))) return std::nullopt;  // all abscissas coincide

  // Moments of the rescaled abscissa s = u/scale, normalized by total weight.
  Scalar m[5] = {Scalar(1), 0, 0, 0, 0};
  Scalar b[3] = {0, 0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar w = weights[j] / wsum;
    const Scalar s = frame.u_of(positions[j]) / scale;
    const Scalar v = frame.v_of(positions[j]);
    Scalar sk = s;
    for (int k = 1; k <= 2 * order; ++k, sk *= s) m[k] += w * sk;
    sk = Scalar(1);
    for (int k = 0; k <= order; ++k, sk *= s) b[k] += w * sk * v;
  }

  LocalPoly<Scalar> poly;
  poly.order = order;
  if (order == 1) {
    Mat2<Scalar> M;
    M << m[0], m[1], m[1], m[2];
    Eigen::FullPivLU<Mat2<Scalar>> lu(M);
    if (!lu.isInvertible()) return std::nullopt;
    const Vec2<Scalar> c = lu.solve(Vec2<Scalar>(b[0], b[1]));
    poly.coeffs << c[0], c[1] / scale, Scalar(0);
  } else {
    Eigen::Matrix<Scalar, 3, 3> M;
    M << m[0], m[1], m[2], m[1], m[2], m[3], m[2], m[3], m[4];
    Eigen::FullPivLU<Eigen::Matrix<Scalar, 3, 3>> lu(M);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::Matrix<Scalar, 3, 1> c = lu.solve(Eigen::Matrix<Scalar, 3, 1>(b[0], b[1], b[2]));
    poly.coeffs << c[0], c[1] / scale, c[2] / (scale * scale);
  }
  return poly;
}

/// Basic projection: evaluate the regression curve at the site's own
/// abscissa. For order 1 this is the orthogonal drop onto the principal
/// line (the fitted line coincides with the frame axis).
template <typename Scalar>
[[nodiscard]] Vec2<Scalar> project(const Vec2<Scalar>& site_pos, const LocalFrame<Scalar>& frame,
                                   const LocalPoly<Scalar>& poly) {
  const Scalar u = frame.u_of(site_pos);
  return frame.centroid + u * frame.axis + poly.eval(u) * frame.normal;
}

}  // namespace mlseb
