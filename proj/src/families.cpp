#include "holomotion/families.hpp"

#include <cmath>
#include <string>

#include "holomotion/error.hpp"

namespace holomotion {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex fold_zero(Complex z) {
  // -0.0 + 0.0 == +0.0
  return {z.real() + 0.0, z.imag() + 0.0};
}

}  // namespace

Complex principal_sqrt(Complex z) { return fold_zero(std::sqrt(fold_zero(z))); }

Complex apply(const Parameter& p, Complex z) {
  return p.family == Family::Quadratic ? apply_q(p.value, z) : apply_f(p.value, z);
}

Complex deriv(const Parameter& p, Complex z) {
  return p.family == Family::Quadratic ? deriv_q(p.value, z) : deriv_f(p.value, z);
}

Complex beta(Complex c) { return (1.0 + principal_sqrt(1.0 - 4.0 * c)) / 2.0; }

std::vector<FixedPoint> fixed_points(const Parameter& p) {
  if (p.family == Family::Quadratic) {
    const Complex s = principal_sqrt(1.0 - 4.0 * p.value);
    const Complex b = (1.0 + s) / 2.0;
    const Complex a = (1.0 - s) / 2.0;
    return {{b, 2.0 * b}, {a, 2.0 * a}};
  }
  const Complex mu = p.value;
  if (mu == Complex(0.0)) {
    throw Error(ErrorCode::OutOfDomain, "fixed point 1 - 1/mu undefined at mu = 0");
  }
  return {{Complex(0.0), mu}, {1.0 - 1.0 / mu, 2.0 - mu}};
}

OrbitSegment orbit(const Parameter& p, Complex z0, std::size_t n) {
  OrbitSegment seg;
  seg.start = z0;
  seg.points.reserve(n + 1);
  seg.derivs.reserve(n + 1);
  seg.points.push_back(z0);
  seg.derivs.push_back(Complex(1.0));
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = seg.points.back();
    const Complex next = apply(p, z);
    const Complex d = seg.derivs.back() * deriv(p, z);
    if (!finite(next) || !finite(d)) {
      throw Error(ErrorCode::Overflow,
                  "orbit became non-finite at step " + std::to_string(k + 1), k + 1);
    }
    seg.points.push_back(next);
    seg.derivs.push_back(d);
  }
  return seg;
}

Complex conjugacy_G(Complex mu, Complex z) { return -mu * z + mu / 2.0; }

Complex inverse_G(Complex mu, Complex w) {
  if (mu == Complex(0.0)) {
    throw Error(ErrorCode::OutOfDomain, "inverse conjugacy undefined at mu = 0");
  }
  return (mu / 2.0 - w) / mu;
}

Complex param_map(Complex mu) { return mu * (2.0 - mu) / 4.0; }

Complex mu_of_c(Complex c) { return 1.0 + principal_sqrt(1.0 - 4.0 * c); }

}  // namespace holomotion
