#pragma once

// Derivatives of the holomorphic motion of Julia points.
//
// For q_c the motion of z in J(q_c) satisfies dz/dc = -sum_{n>=1} 1/Dq_c^n(z).
// For f_mu it satisfies dz/dmu = -(1/mu) sum_{n>=1} z_n / Df^n(z), with
// z_n = f_mu^n(z). The affine conjugacy G transports one into the other.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holomotion/families.hpp"
#include "holomotion/julia.hpp"
#include "holomotion/report.hpp"
#include "holomotion/symbolic.hpp"

namespace holomotion {

struct SeriesResult {
  Complex value{};
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;  // bound on |truncation error| when rigorous
  bool rigorous = false;
};

inline constexpr std::size_t kMaxSeriesTerms = 2'000'000;

/// dz/dc at a Julia point of q_c.
///
/// For real c in [0, 1/4) every Julia point has |Dq_c| >= 1 + s with
/// s = sqrt(1 - 4c), so the tail after N terms is at most (1 + s)^-N / s and
/// summation stops once that is <= tol (rigorous). Other c use a ratio-based
/// heuristic tail. An orbit that lands on a repelling fixed point p (within
/// its accumulated round-off) is closed exactly with the geometric remainder
/// 1/(Dq^N (2p - 1)) and reported rigorous. Throws PreCritical if the orbit hits 0 and NonConvergence
/// if the orbit numerically leaves the Julia set before the tail is small.
SeriesResult dzdc_series(Complex c, Complex z, double tol);

/// dz/dmu at a Julia point of f_mu, real mu >= 4 and real z.
///
/// Orbits that land on 0 or on 1 - 1/mu (numerically, relative to the
/// accumulated forward error) give an exact finite sum, closed by the
/// geometric remainder in the second case. Otherwise summation stops after 8
/// consecutive terms with |z_n| gamma(z_n) / (2 mu A^n) < tol, A = sqrt(mu),
/// and the tail estimate is that bound times 10 A^-1 / (1 - A^-1).
/// Throws NonReal, PreCritical, NonConvergence.
SeriesResult dzdmu_series(Complex mu, Complex z, double tol);

/// dw/dc = (-mu dz/dmu - z + 1/2) * 2 / (1 - mu) for w = G(mu, z).
Complex transport_dwdc(Complex mu, Complex z, Complex dzdmu);

/// dz/dmu = (mu - 1)/(2 mu) dw/dc + w / mu^2 for z = G^-1(mu, w).
Complex transport_dzdmu(Complex mu, Complex w, Complex dwdc);

/// The point z(c) with q_c^N(z) = beta(c) reached by pulling beta(c) back N
/// times, applying word[0] first: '+' takes the principal square root of
/// z - c, '-' its negative. c must be real in [0, 1/4].
Complex track_prefixed(double c, std::string_view word);

/// The preimage of 1 (hence of the fixed point 0) under f_mu^(N+1) with
/// itinerary `word`; see pullback_real for the symbol convention.
double track_prefixed_logistic(double mu, const Word& word);

/// All words over {+, -} of length <= max_len, shortest first, then
/// lexicographic with '+' < '-'.
std::vector<std::string> all_branch_words(std::size_t max_len);

/// |dz/dc| 2 sqrt(1/4 - c) <= 1 + tol over the cloud, with equality at beta.
Report verify_derivative_bound(double c, const PointCloud& cloud, double tol);

/// sup |dz/dmu| sqrt(mu - 4) over a Cantor cloud. Points whose heuristic
/// tail exceeds 1% of |value| are counted and excluded from the sup.
Report verify_derivative_growth(double mu, const PointCloud& cloud, double series_tol = 1e-13);

/// verify_derivative_growth on depth-`depth` clouds for every mu in the grid. Passes iff
/// every sup is finite and max/min of the sups is below `max_variation`.
Report verify_derivative_growth_grid(std::span<const double> mus, std::size_t depth = 14,
                         double max_variation = 4.0);

/// |track_prefixed(c, word) - track_prefixed(1/4, word)| <= sqrt(1/4 - c) + tol.
Report verify_holder_word(std::string_view word, std::span<const double> c_grid, double tol);

/// verify_holder_word for every word of length <= max_len.
Report verify_holder_words(std::size_t max_len, std::span<const double> c_grid, double tol);

/// |dz/dmu| <= 1/(8 delta) for an orbit confined to [delta, 1 - delta].
/// The band is checked over the steps whose accumulated round-off stays
/// below 1e-10; leaving the band there is a precondition failure
/// (Inconclusive), not a violation.
Report verify_bounded_orbit_prop(double mu, double z, double delta, double tol);

/// For mu in (1, 2): |dz/dmu| <= (2 + sqrt 2)/2 + tol at every pre-fixed
/// point of depth <= max_len, transported from the q-side series.
Report verify_transport_bound(double mu, std::size_t max_len, double tol);

}  // namespace holomotion
