#pragma once

namespace mlseb {

/// Compactly supported cubic weight: theta(d) = 2 d^3/r^3 - 3 d^2/r^2 + 1
/// for d < r and 0 beyond. C1 at the support boundary, theta(0) = 1.
template <typename Scalar>
[[nodiscard]] constexpr Scalar theta(Scalar d, Scalar r) {
  if (d >= r) return Scalar(0);
  const Scalar u = d / r;
  return (Scalar(2) * u - Scalar(3)) * u * u + Scalar(1);
}

}  // namespace mlseb
