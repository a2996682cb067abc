#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "holomotion/error.hpp"
#include "holomotion/julia.hpp"

using namespace holomotion;

namespace {

bool contains(const std::vector<Complex>& pts, Complex z, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](Complex p) { return std::abs(p - z) <= tol; });
}

}  // namespace

TEST_CASE("escape radius") {
  CHECK(escape_radius(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(escape_radius(-2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(escape_radius(0.25) == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-15));
  // M^2 - M - |c| = 0.
  for (double c : {0.0, 0.1, 0.5, 2.0}) {
    const double m = escape_radius(Complex(0.0, c));
    CHECK(std::abs(m * m - m - c) < 1e-14);
  }
}

TEST_CASE("annulus bounds") {
  auto a0 = annulus_bounds(0.0);
  CHECK(a0.inner == doctest::Approx(1.0));
  CHECK(a0.outer == doctest::Approx(1.0));
  auto a = annulus_bounds(3.0 / 16.0);
  CHECK(a.inner == doctest::Approx(0.75));
  CHECK(a.outer == doctest::Approx((1.0 + std::sqrt(7.0) / 2.0) / 2.0));
  auto b = annulus_bounds(0.24);
  CHECK(b.inner == doctest::Approx(0.6));
  CHECK(b.outer == doctest::Approx((1.0 + std::sqrt(1.96)) / 2.0));
  CHECK_THROWS_AS(annulus_bounds(0.25), Error);
  CHECK_THROWS_AS(annulus_bounds(-0.1), Error);
}

TEST_CASE("escape-time membership") {
  auto e = membership_escape(0.0, 2.0, 10);
  REQUIRE(std::holds_alternative<Escaped>(e));
  CHECK(std::get<Escaped>(e).at == 1);
  CHECK(is_bounded(membership_escape(0.0, 0.5, 100)));
  CHECK(is_bounded(membership_escape(-2.0, 2.0, 100)));
}

TEST_CASE("inverse iteration at c = 0 gives roots of unity") {
  auto d2 = sample_inverse_iteration(0.0, 2);
  CHECK(d2.points.size() == 4);
  for (Complex z : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
    CHECK(contains(d2.points, z, 1e-15));
  }
  auto d3 = sample_inverse_iteration(0.0, 3);
  CHECK(d3.points.size() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(contains(d3.points, std::polar(1.0, k * std::numbers::pi / 4.0), 1e-15));
  }
}

TEST_CASE("inverse iteration clouds") {
  for (double c : {0.0, 0.1, 0.2, 0.24}) {
    auto cloud = sample_inverse_iteration(c, 10);
    CHECK(cloud.points.size() == 1024);
    CHECK(std::is_sorted(cloud.points.begin(), cloud.points.end(), [](Complex a, Complex b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    }));
    const auto ann = annulus_bounds(c);
    for (const auto& z : cloud.points) {
      CHECK(std::abs(z) >= ann.inner - 1e-12);
      CHECK(std::abs(z) <= ann.outer + 1e-12);
    }
    CHECK(cloud.covering_radius > 0.0);
  }
  auto p = sample_inverse_iteration(0.25, 10);
  for (const auto& z : p.points) CHECK(is_bounded(membership_escape(0.25, z, 1000)));
}

TEST_CASE("forward invariance: each level maps onto the previous one") {
  for (double c : {0.0, 0.15, 0.24}) {
    auto fine = sample_inverse_iteration(c, 9);
    auto coarse = sample_inverse_iteration(c, 8);
    for (const auto& z : fine.points) {
      const Complex w = z * z + c;
      const auto nearest = std::min_element(
          coarse.points.begin(), coarse.points.end(),
          [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
      CHECK(std::abs(*nearest - w) <= 1e-10);
    }
  }
}

TEST_CASE("point budget") {
  CHECK_THROWS_AS(sample_inverse_iteration(0.0, 20, 1000), Error);
  CHECK_THROWS_AS(cantor_sample_real(5.0, 20, 1000), Error);
  CHECK_THROWS_AS(sample_inverse_iteration(0.0, 0), Error);
}

TEST_CASE("real Cantor samples") {
  auto d1 = cantor_sample_real(5.0, 1);
  REQUIRE(d1.points.size() == 2);
  CHECK(d1.points[0].real() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d1.points[1].real() == doctest::Approx(0.8).epsilon(1e-15));

  for (std::size_t k : {3u, 7u, 12u}) {
    auto cloud = cantor_sample_real(5.0, k);
    CHECK(cloud.points.size() == (std::size_t{1} << k));
    for (const auto& z : cloud.points) {
      CHECK(z.imag() == 0.0);
      CHECK(z.real() > 0.0);
      CHECK(z.real() < 1.0);
    }
  }

  auto s = cantor_sample_real(4.01, 8);
  REQUIRE(s.points.size() == 256);
  CHECK(s.points.front().real() > 0.0);
  CHECK(s.points.back().real() < 1.0);
  // Branch symmetry: left(x) + right(x) = 1, so the level is symmetric.
  const std::size_t n = s.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(s.points[i].real() + s.points[n - 1 - i].real() - 1.0) < 1e-14);
  }

  CHECK_THROWS_AS(cantor_sample_real(3.9, 4), Error);
  // mu = 4 is accepted: the Julia set is the whole interval.
  CHECK(cantor_sample_real(4.0, 6).points.size() == 64);
}

TEST_CASE("Cantor levels are forward invariant") {
  const double mu = 4.5;
  auto fine = cantor_sample_real(mu, 9);
  auto coarse = cantor_sample_real(mu, 8);
  for (const auto& z : fine.points) {
    const double w = mu * z.real() * (1.0 - z.real());
    double best = 1.0;
    for (const auto& p : coarse.points) best = std::min(best, std::abs(p.real() - w));
    CHECK(best <= 1e-10);
  }
}

TEST_CASE("inverse branches") {
  const double mu = 4.7;
  for (double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const double l = logistic_left_branch(mu, x);
    const double r = logistic_right_branch(mu, x);
    CHECK(std::abs(mu * l * (1.0 - l) - x) < 1e-15);
    CHECK(std::abs(mu * r * (1.0 - r) - x) < 1e-15);
    CHECK(l <= 0.5);
    CHECK(r >= 0.5);
  }
  CHECK_THROWS_AS(logistic_left_branch(4.0, 1.01), Error);
}

TEST_CASE("canonicalization") {
  std::vector<Complex> pts{{1.0, 0.0}, {-0.0, -0.0}, {1.0 + 1e-14, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  auto out = canonicalize_points(pts);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == Complex(0.0, 0.0));
  CHECK(!std::signbit(out[0].real()));
  CHECK(!std::signbit(out[0].imag()));
  CHECK(out[1] == Complex(0.0, 1.0));
  CHECK(out[2] == Complex(1.0, 0.0));
}

TEST_CASE("number formatting and CSV") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  std::ostringstream out;
  write_csv(out, sample_inverse_iteration(0.0, 1));
  CHECK(out.str() == "re,im\n-1,0\n1,0\n");
}

TEST_CASE("cloud JSON") {
  const auto j = cloud_to_json(sample_inverse_iteration(0.0, 1));
  CHECK(j.find("\"points\":[[-1,0],[1,0]]") != std::string::npos);
  CHECK(j.find("\"family\":\"q\"") != std::string::npos);
}

TEST_CASE("raster and vector output") {
  Viewport view{-2.0, 2.0, -2.0, 2.0, 16, 8};
  std::ostringstream a, b;
  write_escape_ppm(a, Parameter::quadratic(0.0), view, 50);
  write_escape_ppm(b, Parameter::quadratic(0.0), view, 50);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("P6\n16 8\n255\n", 0) == 0);
  CHECK(a.str().size() == std::string("P6\n16 8\n255\n").size() + 16 * 8 * 3);

  // Logistic rendering goes through the conjugacy: f_2 has J = circle |z - 1/2| = 1/2.
  std::ostringstream f;
  write_escape_ppm(f, Parameter::logistic(2.0), Viewport{-1, 2, -1.5, 1.5, 3, 3}, 50);
  const std::string img = f.str().substr(std::string("P6\n3 3\n255\n").size());
  CHECK(static_cast<unsigned char>(img[4 * 3]) == 0);  // center pixel z = 1/2 is bounded
  CHECK(static_cast<unsigned char>(img[0]) != 0);      // corner escapes

  std::ostringstream p;
  write_cloud_ppm(p, sample_inverse_iteration(0.0, 4), view);
  CHECK(p.str().size() == std::string("P6\n16 8\n255\n").size() + 16 * 8 * 3);

  std::ostringstream s;
  write_cloud_svg(s, sample_inverse_iteration(0.0, 2), view);
  CHECK(s.str().rfind("<svg", 0) == 0);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = s.str().find("<circle", pos)) != std::string::npos; ++pos) {
    ++circles;
  }
  CHECK(circles == 4);

  CHECK_THROWS_AS(write_cloud_ppm(p, sample_inverse_iteration(0.0, 2), Viewport{1, 0, 0, 1, 4, 4}),
                  Error);
}
