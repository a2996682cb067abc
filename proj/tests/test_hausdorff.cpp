#include <cmath>
#include <random>

#include "doctest.h"
#include "holomotion/error.hpp"
#include "holomotion/grid_index.hpp"
#include "holomotion/hausdorff.hpp"
#include "support/oracles.hpp"

using namespace holomotion;

namespace {

PointCloud cloud_of(std::vector<Complex> pts, double cover = 0.0) {
  PointCloud c;
  c.points = std::move(pts);
  c.covering_radius = cover;
  return c;
}

// Clouds of several shapes, some with exact ties (integer lattice points).
std::vector<Complex> random_cloud(std::mt19937_64& rng, std::size_t n, int shape) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> lattice(-20, 20);
  std::normal_distribution<double> g(0.0, 0.05);
  std::vector<Complex> pts;
  for (std::size_t i = 0; i < n; ++i) {
    switch (shape % 4) {
      case 0: pts.emplace_back(u(rng), u(rng)); break;
      case 1: pts.emplace_back(lattice(rng) / 8.0, lattice(rng) / 8.0); break;
      case 2: pts.emplace_back(u(rng), 0.0); break;
      default: {
        const double cx = (i % 5) * 0.4 - 0.8;
        pts.emplace_back(cx + g(rng), g(rng));
      }
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("grid nearest neighbor matches a linear scan") {
  std::mt19937_64 rng(3);
  for (int shape = 0; shape < 4; ++shape) {
    auto pts = random_cloud(rng, 700, shape);
    auto queries = random_cloud(rng, 300, shape + 1);
    for (double cell : {1e-3, 0.05, 0.3, 5.0}) {
      GridIndex index(pts, cell);
      for (const auto& q : queries) {
        const auto nb = index.nearest(q);
        double best = INFINITY;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          const double d = oracle::dist2(q, pts[j]);
          if (d < best) {
            best = d;
            arg = j;
          }
        }
        CHECK(nb.dist2 == best);
        CHECK(nb.index == arg);
      }
    }
  }
}

TEST_CASE("nearest with a skipped index") {
  std::vector<Complex> pts{{0, 0}, {1, 0}, {3, 0}};
  GridIndex index(pts, 0.5);
  CHECK(index.nearest({0, 0}, 0).index == 1);
  auto nn = nearest_neighbor_distances(pts);
  CHECK(nn == std::vector<double>{1.0, 1.0, 2.0});
  CHECK(median_spacing(pts) == 1.0);
}

TEST_CASE("Hausdorff examples") {
  auto a = cloud_of({{0, 0}, {1, 0}});
  auto b = cloud_of({{0, 0}});
  auto d = hausdorff_distance(a, b);
  CHECK(d.directed_ab == 1.0);
  CHECK(d.directed_ba == 0.0);
  CHECK(d.hausdorff == 1.0);
  CHECK(d.witness_a == Complex(1, 0));
  CHECK(d.witness_b == Complex(0, 0));

  CHECK(hausdorff_distance(a, a).hausdorff == 0.0);
  CHECK_THROWS_AS(hausdorff_distance(a, cloud_of({})), Error);
}

TEST_CASE("Hausdorff between the circle and the cauliflower") {
  auto a = sample_inverse_iteration(0.0, 12);
  auto b = sample_inverse_iteration(0.25, 12);
  auto d = hausdorff_distance(a, b);
  CHECK(std::abs(d.hausdorff - 0.5) <= d.sampling_error);
  CHECK(d.sampling_error == a.covering_radius + b.covering_radius);
}

TEST_CASE("grid distance equals brute force, including tie-breaking") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(1, 600);
  for (int t = 0; t < 40; ++t) {
    auto a = random_cloud(rng, size(rng), t);
    auto b = random_cloud(rng, size(rng), t / 4);
    auto d = hausdorff_distance(cloud_of(a), cloud_of(b));
    auto ab = oracle::directed(a, b);
    auto ba = oracle::directed(b, a);
    CHECK(d.directed_ab == ab.distance);
    CHECK(d.directed_ba == ba.distance);
    CHECK(d.ab.from == ab.from);
    CHECK(d.ab.to == ab.to);
    CHECK(d.ba.from == ba.from);
    CHECK(d.ba.to == ba.to);
    CHECK(d.hausdorff == std::max(ab.distance, ba.distance));
  }
}

TEST_CASE("Hausdorff distance properties") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto a = cloud_of(random_cloud(rng, 200, t));
    auto b = cloud_of(random_cloud(rng, 150, t + 1));
    auto c = cloud_of(random_cloud(rng, 250, t + 2));
    const double ab = hausdorff_distance(a, b).hausdorff;
    const double ba = hausdorff_distance(b, a).hausdorff;
    const double bc = hausdorff_distance(b, c).hausdorff;
    const double ac = hausdorff_distance(a, c).hausdorff;
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(ac <= ab + bc + 1e-15);
  }
}

TEST_CASE("refining the target never increases the directed distance") {
  for (double c : {0.0, 0.2}) {
    auto from = sample_inverse_iteration(0.1, 9).points;
    double prev = INFINITY;
    for (std::size_t depth = 4; depth <= 12; ++depth) {
      const auto to = sample_inverse_iteration(c, depth).points;
      const double d = directed_distance(from, to).distance;
      CHECK(d <= prev);
      prev = d;
    }
  }
}

TEST_CASE("nearest distances") {
  std::vector<Complex> a{{0, 0}, {2, 0}};
  std::vector<Complex> b{{0, 1}};
  CHECK(nearest_distances(a, b) == std::vector<double>{1.0, std::sqrt(5.0)});
}

TEST_CASE("exact distance to the parabolic Julia set") {
  for (double c : {0.0, 0.1875}) {
    auto r = verify_parabolic_distance(c, 14, 0.01, 0.02);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(std::abs(r.details["distance"]["hausdorff"].get<double>() - std::sqrt(0.25 - c)) <= 0.01);
  }
  CHECK_THROWS_AS(verify_parabolic_distance(0.25, 10, 0.01, 0.02), Error);
}

TEST_CASE("near the parabolic parameter the sampling error dominates") {
  auto r = verify_parabolic_distance(0.249, 12, 0.01, 0.02);
  CHECK(r.verdict != Verdict::Fail);
  CHECK(r.details["distance"]["sampling_error"].get<double>() > std::sqrt(0.25 - 0.249));
}

TEST_CASE("logistic distance bound") {
  auto r = verify_logistic_distance(1.5, 12, 0.01);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["bound"].get<double>() == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0));
  CHECK_THROWS_AS(verify_logistic_distance(2.0, 10, 0.01), Error);
}
