#pragma once

// The singular conformal metric gamma(z)|dz| = |dz| / sqrt(|z| |z - 1|) on
// C - {0, 1}, under which the real logistic map with mu >= 4 expands by at
// least A = sqrt(mu) along its Julia set, and the Koenigs coordinate at the
// repelling fixed point 0.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "holomotion/families.hpp"
#include "holomotion/report.hpp"

namespace holomotion {

// Inputs closer than this to 0 or 1 are rejected as singular.
inline constexpr double kSingularGuard = 1e-14;

/// 1 / sqrt(|z| |z - 1|). Throws Singular within kSingularGuard of 0 or 1.
double gamma_metric(Complex z);

/// gamma(f(z)) |Df(z)| / gamma(z) for the real logistic map. Needs mu >= 4
/// and both z and f(z) in the open unit interval, away from the guard.
/// Admissible values are >= sqrt(mu) up to round-off.
double expansion_factor(double mu, double z);

/// Whether expansion_factor(mu, z) is defined.
bool expansion_admissible(double mu, double z);

struct InverseDerivativeBound {
  std::vector<double> bound;          // gamma(z_n) / (2 A^n), n = 0..N
  std::vector<double> inverse_deriv;  // 1 / |Df^n(z_0)|
  bool holds = true;                  // inverse_deriv[n] <= bound[n] + 1e-12 for all n
  std::optional<std::size_t> first_violation;
};

/// The inverse-derivative bound along a logistic orbit with every point in
/// (0, 1). Throws Singular for an orbit point on the guard band.
InverseDerivativeBound inv_deriv_bound(double mu, const OrbitSegment& orbit);

struct KoenigsResult {
  double value = 0.0;
  std::size_t iterations = 0;
  // |phi(f(z)) - mu phi(z)|, available when f(z) stays in the branch domain
  // and z lies on the left half where the 0-fixing branch inverts f.
  std::optional<double> residual;
};

/// Koenigs coordinate at 0 for real mu >= 4, normalized phi'(0) = 1, as the
/// limit mu^k g^k(z) of the 0-fixing inverse branch g. Stops early once
/// successive values agree to 1e-14 relative. z must lie in [0, 1).
KoenigsResult koenigs(double mu, double z, std::size_t iters = 60);

/// Expansion factor >= sqrt(mu) over admissible cloud points (at least
/// `min_points` of them per mu), and == 2 at mu = 4.
Report verify_expansion(std::span<const double> mus, std::size_t depth = 14,
                        std::size_t min_points = 10000);

/// Inverse-derivative bound along `orbits` seeded-random orbits of length
/// `length` started from points of depth-14 Cantor samples.
Report verify_inverse_derivative(std::span<const double> mus, std::size_t orbits = 1000,
                                 std::size_t length = 20);

/// Koenigs at mu = 4 against the closed form (arcsin sqrt z)^2, plus the
/// functional-equation residual.
Report verify_koenigs(double mu, std::span<const double> zs, std::size_t iters = 60,
                      double tol = 1e-8, double residual_tol = 1e-10);

}  // namespace holomotion
