#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlseb/color.hpp"
#include "mlseb/types.hpp"

namespace mlseb {

/// Accumulated drawing. rgb holds alpha-composited color over a black
/// background; coverage marks every pixel touched by at least one segment.
struct Raster {
  int width{0};
  int height{0};
  std::vector<double> rgb;         // 3 channels per pixel, row-major
  std::vector<std::uint8_t> coverage;

  Raster() = default;
  Raster(int w, int h)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0.0),
        coverage(static_cast<std::size_t>(w) * h, 0) {}

  [[nodiscard]] std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

[[nodiscard]] inline long long used_pixels(const Raster& raster) {
  return std::count(raster.coverage.begin(), raster.coverage.end(), std::uint8_t(1));
}

namespace detail {

/// Pixel holding a coordinate: half-open unit cells, with the far edge of
/// the last row/column closed so coordinates equal to the raster extent
/// stay inside.
[[nodiscard]] inline int cell_of(double v, int n) {
  int c = static_cast<int>(std::floor(v));
  if (c < 0) c = 0;
  if (c >= n) c = n - 1;
  return c;
}

}  // namespace detail

/// Supercover traversal: visits every pixel cell the continuous segment
/// passes through, in travel order, starting with the cell of (x0,y0).
/// Boundary-crossing order is decided by cross-multiplied crossing times,
/// so exact lattice-corner hits step diagonally instead of visiting the
/// two side cells.
template <typename Fn>
void supercover(double x0, double y0, double x1, double y1, int width, int height, Fn&& visit) {
  int cx = detail::cell_of(x0, width);
  int cy = detail::cell_of(y0, height);
  const int ex = detail::cell_of(x1, width);
  const int ey = detail::cell_of(y1, height);
  visit(cx, cy);

  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  const double ax = std::abs(dx);
  const double ay = std::abs(dy);

  long long guard = 2LL * (width + height) + 4;
  while ((cx != ex || cy != ey) && guard-- > 0) {
    bool step_x;
    bool step_y;
    if (sx == 0) {
      step_x = false;
      step_y = true;
    } else if (sy == 0) {
      step_x = true;
      step_y = false;
    } else if (cx == ex) {
      step_x = false;
      step_y = true;
    } else if (cy == ey) {
      step_x = true;
      step_y = false;
    } else {
      // next crossing times tx = (bx-x0)/dx vs ty = (by-y0)/dy, compared
      // without division
      const double bx = sx > 0 ? cx + 1 : cx;
      const double by = sy > 0 ? cy + 1 : cy;
      const double tx_num = sx > 0 ? bx - x0 : x0 - bx;
      const double ty_num = sy > 0 ? by - y0 : y0 - by;
      const double a = tx_num * ay;
      const double b = ty_num * ax;
      step_x = a <= b;
      step_y = b <= a;
      if (step_x && step_y && sx != sy) {
        // corner hit with mixed signs: the corner point's own cell lies
        // ahead on the positive axis and must be visited on the way
        if (sx > 0)
          step_y = false;
        else
          step_x = false;
      }
    }
    if (step_x) cx += sx;
    if (step_y) cy += sy;
    visit(cx, cy);
  }
}

/// Draw every polyline as 1-pixel-wide supercover segments, compositing
/// HSVA shading in edge order and marking coverage. Per edge, hue encodes
/// the endpoint-to-endpoint direction, saturation its relative length, and
/// value/alpha follow the arc profile along the polyline.
template <typename Scalar>
[[nodiscard]] Raster rasterize(const PolylineSet<Scalar>& polys, const EdgeStyle<Scalar>& style,
                               int width, int height) {
  Raster raster(width, height);
  std::vector<Scalar> arc;  // cumulative arc length, reused per polyline

  for (const auto& line : polys.lines) {
    if (line.size() < 2) continue;
    const Vec2<Scalar> chord = line.back() - line.front();
    const Scalar length = chord.norm();
    const Scalar direction = std::atan2(double(chord.y()), double(chord.x()));

    arc.assign(line.size(), Scalar(0));
    for (std::size_t k = 1; k < line.size(); ++k)
      arc[k] = arc[k - 1] + (line[k] - line[k - 1]).norm();
    const Scalar total = arc.back() > Scalar(0) ? arc.back() : Scalar(1);

    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      const Scalar t_mid = (arc[k] + arc[k + 1]) / (Scalar(2) * total);
      const Hsva<Scalar> hsva = edge_color(t_mid, length, style, direction);
      const Rgb<Scalar> rgb = hsv_to_rgb(hsva.h, hsva.s, hsva.v);
      const double a = double(hsva.a);
      const double src[3] = {double(rgb.r) * a, double(rgb.g) * a, double(rgb.b) * a};
      bool first_cell = true;
      supercover(double(line[k].x()), double(line[k].y()), double(line[k + 1].x()),
                 double(line[k + 1].y()), width, height, [&](int px, int py) {
                   const std::size_t at = raster.index(px, py);
                   raster.coverage[at] = 1;
                   // consecutive segments share their joint cell; blend it once
                   if (k > 0 && first_cell) {
                     first_cell = false;
                     return;
                   }
                   first_cell = false;
                   for (int ch = 0; ch < 3; ++ch) {
                     double& dst = raster.rgb[at * 3 + ch];
                     dst = src[ch] + dst * (1.0 - a);
                   }
                 });
    }
  }
  return raster;
}

/// Binary PPM (P6), 8-bit channels, written bit-exactly.
inline void write_ppm(const Raster& raster, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "P6\n" << raster.width << " " << raster.height << "\n255\n";
  std::vector<unsigned char> bytes;
  bytes.reserve(raster.rgb.size());
  for (double channel : raster.rgb) {
    const double clamped = std::clamp(channel, 0.0, 1.0);
    bytes.push_back(static_cast<unsigned char>(std::lround(clamped * 255.0)));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mlseb
