#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mlseb/kernel.hpp"
#include "mlseb/mls.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using mlseb::fit_frame;
using mlseb::fit_poly;
using mlseb::LocalFrame;
using mlseb::LocalPoly;
using mlseb::project;
using mlseb::Vec2;
using test_support::uniform;

namespace {

using Points = std::vector<Vec2<double>>;
using Weights = std::vector<double>;

LocalFrame<double> unit_frame() {
  return {Vec2<double>(0, 0), Vec2<double>(1, 0), Vec2<double>(0, 1)};
}

struct Neighborhood {
  Points pts;
  Weights ws;
};

Neighborhood random_neighborhood(std::mt19937_64& rng, int min_pts = 5, int max_pts = 50) {
  Neighborhood nb;
  const int n = min_pts + static_cast<int>(uniform(rng, 0, max_pts - min_pts + 1));
  // anisotropic cloud: random frame, distinct spreads, keeps the principal
  // direction well separated for oracle comparison
  const double angle = uniform(rng, 0, 2 * std::numbers::pi);
  const Vec2<double> center(uniform(rng, 0, 400), uniform(rng, 0, 400));
  const Vec2<double> major(std::cos(angle), std::sin(angle));
  const Vec2<double> minor(-std::sin(angle), std::cos(angle));
  const double spread_major = uniform(rng, 5, 40);
  const double spread_minor = uniform(rng, 0.2, 2);
  for (int i = 0; i < n; ++i) {
    nb.pts.push_back(center + uniform(rng, -spread_major, spread_major) * major +
                     uniform(rng, -spread_minor, spread_minor) * minor);
    nb.ws.push_back(uniform(rng, 0.05, 1.0));
  }
  return nb;
}

}  // namespace

TEST_CASE("frame of collinear equal-weight points") {
  const Points pts{{0, 0}, {1, 0}, {2, 0}};
  const Weights ws{1, 1, 1};
  const auto frame = fit_frame<double>(pts, ws);
  REQUIRE(frame.has_value());
  CHECK(frame->centroid.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frame->centroid.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(frame->axis.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(frame->axis.y()) < 1e-12);
  CHECK(std::abs(frame->axis.dot(frame->normal)) < 1e-12);
  CHECK(frame->axis.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frame of a vertical pair") {
  const Points pts{{0, 0}, {0, 1}};
  const Weights ws{1, 1};
  const auto frame = fit_frame<double>(pts, ws);
  REQUIRE(frame.has_value());
  CHECK(std::abs(frame->axis.x()) < 1e-12);
  CHECK(frame->axis.y() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frame degeneracy: coincident points, too few points, zero weight") {
  const Points coincident{{3, 4}, {3, 4}, {3, 4}};
  const Weights ws{1, 0.5, 2};
  CHECK_FALSE(fit_frame<double>(coincident, ws).has_value());

  const Points single{{1, 2}};
  const Weights one{1.0};
  CHECK_FALSE(fit_frame<double>(single, one).has_value());

  const Points pair{{0, 0}, {1, 1}};
  const Weights zeros{0.0, 0.0};
  CHECK_FALSE(fit_frame<double>(pair, zeros).has_value());
}

TEST_CASE("frame matches dense weighted-PCA eigen-decomposition") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto nb = random_neighborhood(rng, 20, 20);
    const auto frame = fit_frame<double>(nb.pts, nb.ws);
    const auto expected = oracles::pca_frame(nb.pts, nb.ws);
    REQUIRE(frame.has_value());
    REQUIRE(expected.has_value());
    CHECK((frame->centroid - expected->centroid).norm() <
          1e-9 * (1 + expected->centroid.norm()));
    CHECK((frame->axis - expected->axis).norm() < 1e-9);
    CHECK((frame->normal - expected->normal).norm() < 1e-9);
  }
}

TEST_CASE("poly fit on collinear neighbors is the zero polynomial") {
  const Points pts{{-2, 0}, {-1, 0}, {0, 0}, {1, 0}, {2, 0}};
  const Weights ws{0.3, 1, 0.5, 1, 0.7};
  const auto frame = fit_frame<double>(pts, ws);
  REQUIRE(frame.has_value());
  for (int order : {1, 2}) {
    const auto poly = fit_poly<double>(*frame, pts, ws, order);
    REQUIRE(poly.has_value());
    CHECK(std::abs(poly->coeffs[0]) < 1e-12);
    CHECK(std::abs(poly->coeffs[1]) < 1e-12);
    CHECK(std::abs(poly->coeffs[2]) < 1e-12);
  }
}

TEST_CASE("hand-solved normal equations: V profile") {
  // neighbors (u,v) = (-1,1), (0,0), (1,1) in an identity frame
  const Points pts{{-1, 1}, {0, 0}, {1, 1}};
  const Weights ws{1, 1, 1};
  const auto frame = unit_frame();

  const auto line = fit_poly<double>(frame, pts, ws, 1);
  REQUIRE(line.has_value());
  CHECK(line->coeffs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(line->coeffs[1]) < 1e-12);

  const auto parabola = fit_poly<double>(frame, pts, ws, 2);
  REQUIRE(parabola.has_value());
  CHECK(std::abs(parabola->coeffs[0]) < 1e-12);
  CHECK(std::abs(parabola->coeffs[1]) < 1e-12);
  CHECK(parabola->coeffs[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("poly degeneracy: too few distinct abscissas") {
  const auto frame = unit_frame();
  // two distinct u values: order 1 fits, order 2 cannot
  const Points pts{{0, 0}, {0, 2}, {1, 1}};
  const Weights ws{1, 1, 1};
  CHECK(fit_poly<double>(frame, pts, ws, 1).has_value());
  CHECK_FALSE(fit_poly<double>(frame, pts, ws, 2).has_value());
  // a single u value is degenerate for both
  const Points stacked{{0, 0}, {0, 1}, {0, 2}};
  CHECK_FALSE(fit_poly<double>(frame, stacked, ws, 1).has_value());
  CHECK_FALSE(fit_poly<double>(frame, stacked, ws, 2).has_value());
}

TEST_CASE("poly fit matches QR least squares on random neighborhoods") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto nb = random_neighborhood(rng);
    const auto frame = fit_frame<double>(nb.pts, nb.ws);
    REQUIRE(frame.has_value());
    for (int order : {1, 2}) {
      const auto poly = fit_poly<double>(*frame, nb.pts, nb.ws, order);
      REQUIRE(poly.has_value());
      const Eigen::Vector3d expected = oracles::wls_poly_qr(*frame, nb.pts, nb.ws, order);
      CHECK((poly->coeffs - expected).norm() < 1e-9 * (1 + expected.norm()));
    }
  }
}

TEST_CASE("residual is a local minimum in the coefficients") {
  std::mt19937_64 rng(44);
  const auto residual = [](const LocalFrame<double>& frame, const Points& pts, const Weights& ws,
                           const Eigen::Vector3d& c, int order) {
    double sum = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double u = frame.u_of(pts[j]);
      double f = c[0] + c[1] * u;
      if (order == 2) f += c[2] * u * u;
      const double d = frame.v_of(pts[j]) - f;
      sum += ws[j] * d * d;
    }
    return sum;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto nb = random_neighborhood(rng);
    const auto frame = fit_frame<double>(nb.pts, nb.ws);
    REQUIRE(frame.has_value());
    for (int order : {1, 2}) {
      const auto poly = fit_poly<double>(*frame, nb.pts, nb.ws, order);
      REQUIRE(poly.has_value());
      const double best = residual(*frame, nb.pts, nb.ws, poly->coeffs, order);
      for (int k = 0; k <= order; ++k) {
        for (double delta : {-1e-6, 1e-6}) {
          Eigen::Vector3d perturbed = poly->coeffs;
          perturbed[k] += delta;
          CHECK(residual(*frame, nb.pts, nb.ws, perturbed, order) >= best - 1e-12 * (1 + best));
        }
      }
    }
  }
}

TEST_CASE("projection leaves points on the curve fixed") {
  const auto frame = unit_frame();
  LocalPoly<double> poly;
  poly.order = 2;
  poly.coeffs << 0.5, -0.25, 2.0;
  for (double u : {-1.5, 0.0, 0.75, 3.0}) {
    const Vec2<double> on_curve(u, poly.eval(u));
    CHECK((project(on_curve, frame, poly) - on_curve).norm() < 1e-12);
  }
}

TEST_CASE("projection drops orthogonally onto the axis when the poly is zero") {
  const auto frame = unit_frame();
  LocalPoly<double> zero;
  zero.order = 1;
  const Vec2<double> projected = project(Vec2<double>(0.0, 0.2), frame, zero);
  CHECK(projected.x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(projected.y() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("order-1 pipeline projection is the closest point on the fitted line") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nb = random_neighborhood(rng);
    // query = one of the neighborhood's own points, as in the bundler
    const Vec2<double> site = nb.pts.front();
    const auto frame = fit_frame<double>(nb.pts, nb.ws);
    REQUIRE(frame.has_value());
    const auto poly = fit_poly<double>(*frame, nb.pts, nb.ws, 1);
    REQUIRE(poly.has_value());
    const Vec2<double> projected = project(site, *frame, *poly);
    const double dist = (projected - site).norm();
    for (double offset : {-20.0, -1.0, -0.01, 0.01, 1.0, 20.0}) {
      const double u = frame->u_of(projected) + offset;
      const Vec2<double> other = frame->centroid + u * frame->axis + poly->eval(u) * frame->normal;
      CHECK(dist <= (other - site).norm() + 1e-9);
    }
  }
}

TEST_CASE("rigid-motion equivariance of the projected point") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nb = random_neighborhood(rng);
    const Vec2<double> site(uniform(rng, 0, 400), uniform(rng, 0, 400));

    const double angle = uniform(rng, 0, 2 * std::numbers::pi);
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const Vec2<double> shift(uniform(rng, -100, 100), uniform(rng, -100, 100));

    Points moved;
    for (const auto& p : nb.pts) moved.push_back(rot * p + shift);

    for (int order : {1, 2}) {
      const auto frame = fit_frame<double>(nb.pts, nb.ws);
      const auto frame_m = fit_frame<double>(moved, nb.ws);
      REQUIRE(frame.has_value());
      REQUIRE(frame_m.has_value());
      const auto poly = fit_poly<double>(*frame, nb.pts, nb.ws, order);
      const auto poly_m = fit_poly<double>(*frame_m, moved, nb.ws, order);
      REQUIRE(poly.has_value());
      REQUIRE(poly_m.has_value());
      const Vec2<double> expected = rot * project(site, *frame, *poly) + shift;
      const Vec2<double> actual = project(Vec2<double>(rot * site + shift), *frame_m, *poly_m);
      CHECK((actual - expected).norm() < 1e-9 * (1 + expected.norm()));
    }
  }
}

TEST_CASE("fit is invariant to uniform weight rescaling") {
  std::mt19937_64 rng(47);
  for (double factor : {1e-3, 0.5, 7.0, 1e4}) {
    const auto nb = random_neighborhood(rng);
    Weights scaled = nb.ws;
    for (auto& w : scaled) w *= factor;
    const auto frame_a = fit_frame<double>(nb.pts, nb.ws);
    const auto frame_b = fit_frame<double>(nb.pts, scaled);
    REQUIRE(frame_a.has_value());
    REQUIRE(frame_b.has_value());
    CHECK((frame_a->centroid - frame_b->centroid).norm() < 1e-9 * (1 + frame_a->centroid.norm()));
    CHECK((frame_a->axis - frame_b->axis).norm() < 1e-9);
    for (int order : {1, 2}) {
      const auto poly_a = fit_poly<double>(*frame_a, nb.pts, nb.ws, order);
      const auto poly_b = fit_poly<double>(*frame_a, nb.pts, scaled, order);
      REQUIRE(poly_a.has_value());
      REQUIRE(poly_b.has_value());
      CHECK((poly_a->coeffs - poly_b->coeffs).norm() < 1e-9 * (1 + poly_a->coeffs.norm()));
    }
  }
}

TEST_CASE("float instantiation smoke") {
  const std::vector<Vec2<float>> pts{{0.f, 0.f}, {1.f, 0.1f}, {2.f, -0.1f}, {3.f, 0.f}};
  const std::vector<float> ws{1.f, 1.f, 1.f, 1.f};
  const auto frame = fit_frame<float>(pts, ws);
  REQUIRE(frame.has_value());
  const auto poly = fit_poly<float>(*frame, pts, ws, 2);
  REQUIRE(poly.has_value());
  const Vec2<float> moved = project(Vec2<float>(1.5f, 0.5f), *frame, *poly);
  CHECK(std::isfinite(moved.x()));
  CHECK(std::isfinite(moved.y()));
}
