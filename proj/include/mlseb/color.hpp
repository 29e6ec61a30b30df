#pragma once

#include <cmath>
#include <numbers>

#include "mlseb/types.hpp"

namespace mlseb {

template <typename Scalar>
struct EdgeStyle {
  Scalar alpha{Scalar(0.5)};  // overall transparency in (0,1]
  Scalar l_max{1};            // longest edge length in the drawing
};

template <typename Scalar>
struct Hsva {
  Scalar h;  // degrees in [0, 360)
  Scalar s;
  Scalar v;
  Scalar a;
};

template <typename Scalar>
struct Rgb {
  Scalar r;
  Scalar g;
  Scalar b;
};

/// Parabolic arc profile c(t) = sqrt(1 - 2|t - 1/2|): zero at the edge
/// endpoints, one at the midpoint.
template <typename Scalar>
[[nodiscard]] Scalar arc_profile(Scalar t) {
  const Scalar inner = Scalar(1) - Scalar(2) * std::abs(t - Scalar(0.5));
  return std::sqrt(inner > Scalar(0) ? inner : Scalar(0));
}

/// HSVA site shading: hue from the edge direction, saturation from its
/// relative length, value and alpha ramped along the arc profile.
template <typename Scalar>
[[nodiscard]] Hsva<Scalar> edge_color(Scalar t, Scalar length, const EdgeStyle<Scalar>& style,
                                      Scalar direction_radians) {
  Scalar degrees = direction_radians * Scalar(180) / std::numbers::pi_v<Scalar>;
  degrees = std::fmod(degrees, Scalar(360));
  if (degrees < Scalar(0)) degrees += Scalar(360);
  const Scalar lr = style.l_max > Scalar(0) ? length / style.l_max : Scalar(0);
  const Scalar c = arc_profile(t);
  Hsva<Scalar> color;
  color.h = degrees >= Scalar(360) ? Scalar(0) : degrees;
  color.s = lr;
  color.v = lr + (Scalar(1) - lr) * c;
  color.a = style.alpha * (Scalar(1) - lr + lr * c);
  return color;
}

/// Standard sexagesimal-sector HSV to RGB conversion; h in degrees.
template <typename Scalar>
[[nodiscard]] Rgb<Scalar> hsv_to_rgb(Scalar h, Scalar s, Scalar v) {
  const Scalar chroma = v * s;
  const Scalar sector = h / Scalar(60);
  const Scalar x = chroma * (Scalar(1) - std::abs(std::fmod(sector, Scalar(2)) - Scalar(1)));
  Scalar r = 0, g = 0, b = 0;
  if (sector < 1) {
    r = chroma; g = x;
  } else if (sector < 2) {
    r = x; g = chroma;
  } else if (sector < 3) {
    g = chroma; b = x;
  } else if (sector < 4) {
    g = x; b = chroma;
  } else if (sector < 5) {
    r = x; b = chroma;
  } else {
    r = chroma; b = x;
  }
  const Scalar m = v - chroma;
  return {r + m, g + m, b + m};
}

}  // namespace mlseb
