#pragma once

// The quadratic family q_c(z) = z^2 + c and the logistic family
// f_mu(z) = mu z (1 - z), their fixed points, orbits with derivative
// cocycles, and the affine conjugacy w = -mu z + mu/2 between them.

#include <complex>
#include <cstddef>
#include <vector>

namespace holomotion {

using Complex = std::complex<double>;

enum class Family { Quadratic, Logistic };

struct Parameter {
  Family family = Family::Quadratic;
  Complex value{};  // c for Quadratic, mu for Logistic

  static Parameter quadratic(Complex c) { return {Family::Quadratic, c}; }
  static Parameter logistic(Complex mu) { return {Family::Logistic, mu}; }

  bool is_real() const noexcept { return value.imag() == 0.0; }
  double real() const noexcept { return value.real(); }
};

struct FixedPoint {
  Complex point;
  Complex multiplier;
};

// Forward orbit z_0..z_n; derivs[k] is the derivative of the k-th iterate at
// z_0, so derivs[0] == 1 and derivs[k+1] == derivs[k] * Dmap(points[k]).
struct OrbitSegment {
  Complex start;
  std::vector<Complex> points;
  std::vector<Complex> derivs;

  std::size_t length() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

inline Complex apply_q(Complex c, Complex z) { return z * z + c; }
inline Complex apply_f(Complex mu, Complex z) { return mu * z * (1.0 - z); }
inline Complex deriv_q(Complex /*c*/, Complex z) { return 2.0 * z; }
inline Complex deriv_f(Complex mu, Complex z) { return mu * (1.0 - 2.0 * z); }

Complex apply(const Parameter& p, Complex z);
Complex deriv(const Parameter& p, Complex z);

/// Quadratic: {beta, alpha} with beta = (1 + sqrt(1 - 4c))/2 on the principal
/// branch. Logistic: {0, 1 - 1/mu}. Throws OutOfDomain for the logistic
/// family at mu == 0.
std::vector<FixedPoint> fixed_points(const Parameter& p);

/// The repelling fixed point beta(c) = (1 + sqrt(1 - 4c))/2.
Complex beta(Complex c);

/// Orbit of length n with chain-rule derivative products. Stops at the first
/// non-finite point or derivative and throws Overflow carrying that index.
OrbitSegment orbit(const Parameter& p, Complex z0, std::size_t n);

Complex conjugacy_G(Complex mu, Complex z);
Complex inverse_G(Complex mu, Complex w);

/// c = mu (2 - mu) / 4
Complex param_map(Complex mu);
/// mu = 1 + sqrt(1 - 4c), the branch with mu -> 1+ as c -> 1/4-.
Complex mu_of_c(Complex c);

// Principal square root with signed zeros folded to +0, so that points on the
// negative real axis always take the +i side of the cut.
Complex principal_sqrt(Complex z);

}  // namespace holomotion
