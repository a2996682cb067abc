#include <cmath>
#include <random>

#include "doctest.h"
#include "holomotion/error.hpp"
#include "holomotion/motion.hpp"
#include "support/oracles.hpp"

using namespace holomotion;

namespace {

// dz/dmu of the two preimages of 1, from z(mu) = (1 -+ sqrt(1 - 4/mu))/2.
double preimage_of_one(double mu, int sign) {
  const double s = std::sqrt(1.0 - 4.0 / mu);
  return sign < 0 ? 2.0 / (mu * (1.0 + s)) : 1.0 - 2.0 / (mu * (1.0 + s));
}

}  // namespace

TEST_CASE("dz/dc at the repelling fixed point") {
  const auto r = dzdc_series(0.0, 1.0, 1e-14);
  CHECK(r.value.real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r.rigorous);
  for (double c : {0.0, 0.1, 0.2, 0.24, 0.2499}) {
    const double expected = -1.0 / (2.0 * std::sqrt(0.25 - c));
    const auto s = dzdc_series(c, oracle::beta(c), 1e-13);
    CHECK(std::abs(s.value - expected) <= 1e-12 * std::abs(expected));
  }
  // Complex parameters: beta'(c) = -1/sqrt(1 - 4c).
  for (Complex c : {Complex(-2.0, 0.0), Complex(0.0, 1.0), Complex(0.3, -0.4)}) {
    const auto s = dzdc_series(c, oracle::beta(c), 1e-13);
    CHECK(std::abs(s.value + 1.0 / std::sqrt(1.0 - 4.0 * c)) <= 1e-12);
  }
}

TEST_CASE("dz/dc at a pre-fixed point against finite differences") {
  const auto r = dzdc_series(0.0, -1.0, 1e-14);
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uc(0.01, 0.24);
  std::uniform_int_distribution<int> bit(0, 1), len(1, 8);
  for (int t = 0; t < 50; ++t) {
    std::string w;
    for (int i = len(rng); i > 0; --i) w += bit(rng) ? '+' : '-';
    const double c = uc(rng);
    const Complex z = track_prefixed(c, w);
    const auto s = dzdc_series(c, z, 1e-13);
    const Complex fd = oracle::central_difference([&](double x) { return track_prefixed(x, w); }, c, 1e-5);
    CHECK(std::abs(s.value - fd) <= 1e-6);
    CHECK(s.rigorous);
  }
}

TEST_CASE("dz/dc rigorous tail bound") {
  // A point with an aperiodic orbit on the unit circle: the truncation error
  // of a loose sum is within its stated tail.
  const Complex z = std::polar(1.0, 2.0 * 3.141592653589793 * 0.1234567);
  const auto loose = dzdc_series(0.0, z, 1e-4);
  const auto tight = dzdc_series(0.0, z, 1e-14);
  CHECK(loose.rigorous);
  CHECK(std::abs(loose.value - tight.value) <= loose.tail_estimate + tight.tail_estimate);
  CHECK(loose.terms_used < tight.terms_used);
}

TEST_CASE("dz/dc errors") {
  try {
    dzdc_series(-2.0, 0.0, 1e-10);
    FAIL("expected PreCritical");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreCritical);
  }
  // 0.3 lies in the attracting basin of q_0.
  CHECK_THROWS_AS(dzdc_series(0.0, 0.3, 1e-10), Error);
  CHECK_THROWS_AS(dzdc_series(0.0, 1.0, 0.0), Error);
}

TEST_CASE("dz/dmu closed forms") {
  for (double mu : {4.1, 4.5, 5.0, 6.0}) {
    const auto fp = dzdmu_series(mu, 1.0 - 1.0 / mu, 1e-13);
    CHECK(std::abs(fp.value.real() - 1.0 / (mu * mu)) <= 1e-12);
    const double pre = 1.0 / (mu * std::sqrt(mu) * std::sqrt(mu - 4.0));
    for (int sign : {-1, 1}) {
      const auto r = dzdmu_series(mu, preimage_of_one(mu, sign), 1e-13);
      CHECK(std::abs(r.value.real() - sign * pre) <= 1e-10);
      CHECK(r.rigorous);
    }
    const auto zero = dzdmu_series(mu, 0.0, 1e-13);
    CHECK(zero.value == Complex(0.0));
    CHECK(zero.terms_used == 0);
  }
}

TEST_CASE("dz/dmu on the 2-cycle against finite differences") {
  const double mu = 4.1;
  for (int sign : {-1, 1}) {
    const double z = oracle::period2_point(mu, sign);
    const auto r = dzdmu_series(mu, z, 1e-9);
    const double fd = oracle::central_difference([&](double m) { return oracle::period2_point(m, sign); }, mu, 1e-5);
    CHECK(std::abs(r.value.real() - fd) <= 1e-6);
    CHECK(!r.rigorous);
  }
}

TEST_CASE("dz/dmu at pre-fixed points against finite differences") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> um(4.1, 6.0);
  std::uniform_int_distribution<int> bit(0, 1), len(0, 8);
  for (int t = 0; t < 50; ++t) {
    Word w;
    for (int i = len(rng); i > 0; --i) w.push_back(static_cast<std::uint8_t>(bit(rng)));
    const double mu = um(rng);
    const auto r = dzdmu_series(mu, track_prefixed_logistic(mu, w), 1e-13);
    const double fd = oracle::central_difference([&](double m) { return track_prefixed_logistic(m, w); }, mu, 1e-5);
    CHECK(std::abs(r.value.real() - fd) <= 1e-6);
  }
}

TEST_CASE("dz/dmu errors") {
  CHECK_THROWS_AS(dzdmu_series(Complex(4.5, 0.1), 0.3, 1e-10), Error);
  CHECK_THROWS_AS(dzdmu_series(3.5, 0.3, 1e-10), Error);
  CHECK_THROWS_AS(dzdmu_series(4.5, 1.5, 1e-10), Error);
  try {
    dzdmu_series(4.0, 0.5, 1e-10);
    FAIL("expected PreCritical");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreCritical);
  }
}

TEST_CASE("conjugacy transport") {
  CHECK(std::abs(transport_dwdc(4.0, 0.0, 0.0) - (-1.0 / 3.0)) <= 1e-15);
  // beta(c) at c = -2 moves with derivative -1/3.
  CHECK(std::abs(dzdc_series(-2.0, 2.0, 1e-13).value - (-1.0 / 3.0)) <= 1e-12);

  // The fixed point 1 - 1/mu is carried to alpha(c).
  const double mu = 4.5;
  const double c = param_map(mu).real();
  const auto alpha = [](double x) { return (1.0 - std::sqrt(1.0 - 4.0 * x)) / 2.0; };
  const Complex dw = transport_dwdc(mu, 1.0 - 1.0 / mu, 1.0 / (mu * mu));
  CHECK(std::abs(dw - oracle::central_difference(alpha, c, 1e-5)) <= 1e-8);

  // w = 1 at mu = 2 is G(2, 0): the fixed point 0, which does not move.
  CHECK(transport_dzdmu(2.0, 1.0, -1.0) == Complex(0.0));
  const auto z_of_mu = [](double m) { return inverse_G(m, beta(param_map(m))).real(); };
  CHECK(std::abs(oracle::central_difference(z_of_mu, 2.0, 1e-5)) <= 1e-9);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const Complex m(u(rng), u(rng)), z(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(m) < 1e-2 || std::abs(m - 1.0) < 1e-2) continue;
    const Complex w = conjugacy_G(m, z);
    const Complex back = transport_dzdmu(m, w, transport_dwdc(m, z, d));
    CHECK(std::abs(back - d) <= 1e-11 * (1.0 + std::abs(d)));
  }
  CHECK_THROWS_AS(transport_dwdc(1.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(transport_dzdmu(0.0, 0.0, 0.0), Error);
}

TEST_CASE("branch tracking") {
  CHECK(track_prefixed(0.0, "-") == Complex(-1.0));
  const Complex z = track_prefixed(0.0, "-+");
  CHECK(std::abs(z - Complex(0.0, 1.0)) <= 1e-15);
  for (const auto& w : all_branch_words(5)) {
    CHECK(is_bounded(membership_escape(0.25, track_prefixed(0.25, w), 500)));
    // Pulling back |w| times and pushing forward returns beta.
    Complex x = track_prefixed(0.1, w);
    for (std::size_t i = 0; i < w.size(); ++i) x = x * x + 0.1;
    CHECK(std::abs(x - beta(0.1)) <= 1e-12);
  }
  CHECK_THROWS_AS(track_prefixed(0.3, "+"), Error);
  CHECK_THROWS_AS(track_prefixed(0.1, "+x"), Error);
  CHECK(all_branch_words(2) == std::vector<std::string>{"", "+", "-", "++", "+-", "-+", "--"});
  CHECK(all_branch_words(6).size() == 127);
}

TEST_CASE("derivative bound on clouds") {
  for (double c : {0.0, 0.24}) {
    auto r = verify_derivative_bound(c, sample_inverse_iteration(c, 12), 1e-9);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.max_ratio <= 1.0 + 1e-9);
    CHECK(std::abs(r.details["ratio_at_beta"].get<double>() - 1.0) <= 1e-12);
  }
  PointCloud single;
  single.points = {beta(0.2)};
  auto r = verify_derivative_bound(0.2, single, 1e-9);
  CHECK(std::abs(r.max_ratio - 1.0) <= 1e-12);
  CHECK_THROWS_AS(verify_derivative_bound(0.25, single, 1e-9), Error);
}

TEST_CASE("derivative growth near mu = 4") {
  for (double mu : {4.5, 4.0001}) {
    PointCloud pre;
    pre.points = {preimage_of_one(mu, -1), preimage_of_one(mu, 1)};
    auto r = verify_derivative_growth(mu, pre);
    CHECK(r.max_ratio == doctest::Approx(1.0 / (mu * std::sqrt(mu))).epsilon(1e-9));
  }
  PointCloud fp;
  fp.points = {0.8};
  CHECK(verify_derivative_growth(5.0, fp).max_ratio == doctest::Approx(0.04).epsilon(1e-12));
  const std::vector<double> mus{4.1, 4.01, 4.001, 4.0001};
  auto g = verify_derivative_growth_grid(mus, 10);
  CHECK(g.verdict == Verdict::Pass);
  CHECK(g.details["variation"].get<double>() < 4.0);
}

TEST_CASE("Hoelder bound for tracked preimages") {
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.24};
  auto empty = verify_holder_word("", grid, 1e-9);
  CHECK(empty.verdict == Verdict::Pass);
  CHECK(std::abs(empty.details["worst_slack"].get<double>()) <= 1e-10);
  const std::vector<double> zero{0.0};
  auto minus = verify_holder_word("-", zero, 1e-9);
  CHECK(minus.max_ratio == doctest::Approx(1.0));
  auto all = verify_holder_words(6, grid, 1e-9);
  CHECK(all.verdict == Verdict::Pass);
  CHECK(all.details["beta_equality_deviation"].get<double>() <= 1e-10);
}

TEST_CASE("bounded-orbit derivative bound") {
  CHECK(verify_bounded_orbit_prop(4.5, 7.0 / 9.0, 2.0 / 9.0, 1e-9).verdict == Verdict::Pass);
  auto r = verify_bounded_orbit_prop(5.0, 0.8, 0.2, 1e-9);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["dzdmu"].get<double>() == doctest::Approx(0.04));
  const double s5 = std::sqrt(5.0);
  for (double z : {(5.0 - s5) / 8.0, (5.0 + s5) / 8.0}) {
    CHECK(verify_bounded_orbit_prop(4.0, z, (3.0 - s5) / 8.0, 1e-9).verdict == Verdict::Pass);
    // With delta = (5 - sqrt 5)/8 the cycle point (5 + sqrt 5)/8 lies above 1 - delta.
    CHECK(verify_bounded_orbit_prop(4.0, z, (5.0 - s5) / 8.0, 1e-9).verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("transported derivative bound for mu in (1, 2)") {
  for (double mu : {1.05, 1.5, 1.9}) {
    CHECK(verify_transport_bound(mu, 6, 1e-9).verdict == Verdict::Pass);
  }
  CHECK_THROWS_AS(verify_transport_bound(2.5, 3, 1e-9), Error);
}
