#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "mlseb/format.hpp"
#include "mlseb/sampler.hpp"
#include "mlseb/types.hpp"

namespace mlseb {

/// Clutter/distortion bookkeeping for one bundling run. Q is the pixel
/// reduction bought per unit of average site displacement; it is NaN when
/// nothing moved (zero distortion).
template <typename Scalar>
struct QualityReport {
  long long S{0};        // total sample sites
  long long P{0};        // used pixels, original drawing
  long long P_prime{0};  // used pixels, bundled drawing
  long long delta_P{0};  // P - P_prime
  Scalar T{0};           // summed site displacement, pixels
  Scalar T_bar{0};       // T / S
  Scalar Q{std::numeric_limits<Scalar>::quiet_NaN()};
};

/// Total distortion: summed Euclidean displacement of every site from its
/// sampling-time position. Sequential site order keeps the sum reproducible.
template <typename Scalar>
[[nodiscard]] Scalar distortion(const SiteCloud<Scalar>& cloud) {
  Scalar total = 0;
  for (int i = 0; i < cloud.site_count(); ++i)
    total += (cloud.pos.col(i) - cloud.orig.col(i)).norm();
  return total;
}

/// Squared-distance variant, reported alongside for debugging only; the
/// quality score always uses the unsquared sum.
template <typename Scalar>
[[nodiscard]] Scalar distortion_squared(const SiteCloud<Scalar>& cloud) {
  Scalar total = 0;
  for (int i = 0; i < cloud.site_count(); ++i)
    total += (cloud.pos.col(i) - cloud.orig.col(i)).squaredNorm();
  return total;
}

template <typename Scalar>
[[nodiscard]] QualityReport<Scalar> quality(long long used_pixels_original,
                                            long long used_pixels_bundled, Scalar total_distortion,
                                            long long site_count) {
  QualityReport<Scalar> report;
  report.S = site_count;
  report.P = used_pixels_original;
  report.P_prime = used_pixels_bundled;
  report.delta_P = used_pixels_original - used_pixels_bundled;
  report.T = total_distortion;
  report.T_bar = site_count > 0 ? total_distortion / Scalar(site_count) : Scalar(0);
  if (report.T_bar > Scalar(0)) report.Q = Scalar(report.delta_P) / report.T_bar;
  return report;
}

template <typename Scalar>
[[nodiscard]] std::string report_csv_row(const QualityReport<Scalar>& report) {
  return std::to_string(report.S) + "," + std::to_string(report.P) + "," +
         std::to_string(report.P_prime) + "," + std::to_string(report.delta_P) + "," +
         format_value(double(report.T)) + "," + format_value(double(report.T_bar)) + "," +
         format_value(double(report.Q));
}

template <typename Scalar>
void report_csv(const QualityReport<Scalar>& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "S,P,P_prime,delta_P,T,T_bar,Q\n" << report_csv_row(report) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mlseb
