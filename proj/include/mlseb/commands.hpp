#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "mlseb/bundler.hpp"
#include "mlseb/io.hpp"
#include "mlseb/metrics.hpp"
#include "mlseb/raster.hpp"
#include "mlseb/spline.hpp"
#include "mlseb/synth.hpp"
#include "mlseb/types.hpp"

namespace mlseb {

/// Everything the batch commands need; filled by the CLI front end.
struct RunConfig {
  std::string input;    // edges CSV (bundle, quality) or polylines CSV (render)
  std::string bundled;  // polylines CSV, quality only
  std::string output;

  int width{400};
  int height{400};
  double rho{0.05};     // sampling step as fraction of min extent
  double r0{0.10};      // initial bandwidth fraction
  double lambda{0.7};   // bandwidth reduction per iteration
  int iterations{5};
  int order{2};
  double alpha{0.5};
  bool pin_endpoints{true};
  CellMode cell_mode{CellMode::kExact};
  unsigned threads{0};

  std::uint64_t seed{0};
  std::string generator;   // synth only
  int synth_n{1000};
  double synth_gap{10.0};

  int spline_samples{8};         // render; 0 draws the raw polylines
  bool count_on_spline{false};   // quality: count pixels on smoothed curves
};

namespace detail {

inline BundleParams<double> bundle_params(const RunConfig& cfg) {
  BundleParams<double> params;
  params.rho = cfg.rho * std::min(cfg.width, cfg.height);
  params.r0 = cfg.r0;
  params.lambda = cfg.lambda;
  params.iterations = cfg.iterations;
  params.order = cfg.order;
  params.width = cfg.width;
  params.height = cfg.height;
  params.pin_endpoints = cfg.pin_endpoints;
  params.cell_mode = cfg.cell_mode;
  params.threads = cfg.threads;
  return params;
}

inline void print_warnings(const BundleParams<double>& params) {
  for (const auto& warning : params.validate()) std::cerr << "warning: " << warning << "\n";
}

template <typename Scalar>
[[nodiscard]] EdgeStyle<Scalar> style_for(const PolylineSet<Scalar>& polys, Scalar alpha) {
  EdgeStyle<Scalar> style;
  style.alpha = alpha;
  style.l_max = Scalar(0);
  for (const auto& line : polys.lines) {
    if (line.size() < 2) continue;
    style.l_max = std::max(style.l_max, (line.back() - line.front()).norm());
  }
  if (style.l_max <= Scalar(0)) style.l_max = Scalar(1);
  return style;
}

template <typename Scalar>
[[nodiscard]] PolylineSet<Scalar> smooth(const PolylineSet<Scalar>& polys, int samples_per_segment) {
  if (samples_per_segment <= 0) return polys;
  PolylineSet<Scalar> out;
  out.lines.reserve(polys.lines.size());
  for (const auto& line : polys.lines) out.lines.push_back(bspline(line, samples_per_segment));
  return out;
}

/// The straight original drawing as 2-point polylines.
template <typename Scalar>
[[nodiscard]] PolylineSet<Scalar> edge_polylines(const Graph<Scalar>& graph) {
  PolylineSet<Scalar> polys;
  polys.lines.reserve(graph.edges.size());
  for (const auto& edge : graph.edges) polys.lines.push_back({edge.p, edge.q});
  return polys;
}

}  // namespace detail

/// bundle: edges CSV in, bundled polylines CSV out, per-iteration stats on
/// stderr.
inline int cmd_bundle(const RunConfig& cfg) {
  try {
    const auto graph = load_edge_csv<double>(cfg.input, cfg.width, cfg.height);
    if (graph.dropped_zero_length > 0)
      std::cerr << "warning: dropped " << graph.dropped_zero_length << " zero-length edges\n";
    const auto params = detail::bundle_params(cfg);
    detail::print_warnings(params);
    const auto result = bundle(graph, params);
    for (const auto& s : result.stats) {
      std::cerr << "iteration " << s.iteration << ": r=" << s.radius
                << " mean_displacement=" << s.mean_displacement << " T=" << s.distortion
                << " T_sq=" << s.distortion_sq << " ms=" << s.millis << "\n";
    }
    write_polylines_csv(to_polylines(result.cloud), cfg.output);
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

/// render: polylines CSV in, PPM image out.
inline int cmd_render(const RunConfig& cfg) {
  try {
    const auto polys = read_polylines_csv<double>(cfg.input);
    const auto smoothed = detail::smooth(polys, cfg.spline_samples);
    const auto style = detail::style_for(smoothed, cfg.alpha);
    const Raster raster = rasterize(smoothed, style, cfg.width, cfg.height);
    write_ppm(raster, cfg.output);
    std::cerr << "used pixels: " << used_pixels(raster) << "\n";
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

/// quality: original edges CSV + bundled polylines CSV in, report CSV out,
/// Q on stdout. Original site positions are reconstructed from the edge
/// geometry and the bundled point counts (sampling is uniform and never
/// reruns, so the reconstruction is exact).
inline int cmd_quality(const RunConfig& cfg) {
  try {
    const auto graph = load_edge_csv<double>(cfg.input, cfg.width, cfg.height);
    const auto bundled = read_polylines_csv<double>(cfg.bundled);
    if (graph.edge_count() != bundled.edge_count())
      throw std::runtime_error("edge count mismatch: " + std::to_string(graph.edge_count()) +
                               " original vs " + std::to_string(bundled.edge_count()) + " bundled");

    double total_distortion = 0;
    for (int e = 0; e < graph.edge_count(); ++e) {
      const auto& line = bundled.lines[e];
      const Vec2<double>& p = graph.edges[e].p;
      const Vec2<double>& q = graph.edges[e].q;
      const int m = static_cast<int>(line.size());
      for (int k = 0; k < m; ++k) {
        const double t = double(k) / double(m - 1);
        const Vec2<double> orig = (k == m - 1) ? q : Vec2<double>(p + t * (q - p));
        total_distortion += (line[k] - orig).norm();
      }
    }

    const auto original_polys = detail::edge_polylines(graph);
    const auto counted_bundled =
        cfg.count_on_spline ? detail::smooth(bundled, cfg.spline_samples) : bundled;
    const auto style = detail::style_for(original_polys, cfg.alpha);
    const long long p_orig =
        used_pixels(rasterize(original_polys, style, cfg.width, cfg.height));
    const long long p_bund =
        used_pixels(rasterize(counted_bundled, style, cfg.width, cfg.height));

    const auto report = quality(p_orig, p_bund, total_distortion, bundled.point_count());
    if (!cfg.output.empty()) report_csv(report, cfg.output);
    std::cout << "S=" << report.S << " P=" << report.P << " P_prime=" << report.P_prime
              << " delta_P=" << report.delta_P << " T=" << format_value(report.T)
              << " T_bar=" << format_value(report.T_bar) << " Q=" << format_value(report.Q)
              << "\n";
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

/// synth: reproducible synthetic edge CSV from a named generator.
inline int cmd_synth(const RunConfig& cfg) {
  try {
    const auto edges =
        synth_edges<double>(cfg.generator, cfg.synth_n, cfg.synth_gap,
                            double(cfg.width), double(cfg.height), cfg.seed);
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + cfg.output + "' for writing");
    out << "x1,y1,x2,y2\n";
    for (const auto& edge : edges) {
      out << format_value(edge.p.x()) << ',' << format_value(edge.p.y()) << ','
          << format_value(edge.q.x()) << ',' << format_value(edge.q.y()) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + cfg.output + "'");
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace mlseb
