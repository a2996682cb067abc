#pragma once

// Finite samples of Julia sets and the elementary radius bounds for J(q_c).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "holomotion/families.hpp"

namespace holomotion {

struct PointCloud {
  std::vector<Complex> points;  // deduplicated, sorted by (re, im)
  double covering_radius = 0.0;  // estimate, not a bound
  Parameter parameter;
  std::size_t depth = 0;
};

inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 20;
inline constexpr double kDedupTolerance = 1e-12;

/// M(c) = (1 + sqrt(1 + 4|c|))/2; every point of J(q_c) has modulus <= M(c).
double escape_radius(Complex c);

struct Annulus {
  double inner;
  double outer;
};

/// For real c in [0, 1/4): J(q_c) lies in inner <= |z| <= outer.
Annulus annulus_bounds(double c);

struct Escaped {
  std::size_t at;
};
struct Bounded {};
using EscapeResult = std::variant<Escaped, Bounded>;

/// Escaped{k} when |q_c^k(z)| first exceeds escape_radius(c) at k <= max_iter.
EscapeResult membership_escape(Complex c, Complex z, std::size_t max_iter);

inline bool is_bounded(const EscapeResult& r) { return std::holds_alternative<Bounded>(r); }

/// Union of the preimage levels q_c^{-k}(beta), 1 <= k <= depth, pulled back
/// along both branches +-sqrt(z - c).
PointCloud sample_inverse_iteration(Complex c, std::size_t depth,
                                    std::size_t point_budget = kDefaultPointBudget);

/// The two real inverse branches of f_mu on [0, 1]:
/// left(x) = (1 - sqrt(1 - 4x/mu))/2, right(x) = 1 - left(x).
double logistic_left_branch(double mu, double x);
double logistic_right_branch(double mu, double x);

/// Level `depth` of the real pullback of 1 - 1/mu (2^depth points, nested in
/// the lower levels). Accepts mu >= 4; mu = 4 gives a dense sample of [0, 1].
PointCloud cantor_sample_real(double mu, std::size_t depth,
                              std::size_t point_budget = kDefaultPointBudget);

/// Sorts by (re, im), removes points within `tol` of an earlier kept point,
/// and folds -0.0 to +0.0.
std::vector<Complex> canonicalize_points(std::vector<Complex> points,
                                         double tol = kDedupTolerance);

/// Largest nearest-neighbor distance times 2.
double estimate_covering_radius(const std::vector<Complex>& points);

// Output formats shared by the CLI.
std::string format_number(double x);  // 15 significant digits
void write_csv(std::ostream& out, const PointCloud& cloud);
std::string cloud_to_json(const PointCloud& cloud);

struct Viewport {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
  std::size_t width = 512, height = 512;
};

/// Binary PPM (P6) of escape-time membership: bounded pixels black, escaping
/// pixels shaded by escape step. Logistic parameters are tested through the
/// conjugacy, pixel z -> G(mu, z) under q_{c(mu)}.
void write_escape_ppm(std::ostream& out, const Parameter& p, const Viewport& view,
                      std::size_t max_iter);

/// Binary PPM (P6) with every cloud point drawn as a black pixel on white.
void write_cloud_ppm(std::ostream& out, const PointCloud& cloud, const Viewport& view);

/// SVG with one small circle per cloud point.
void write_cloud_svg(std::ostream& out, const PointCloud& cloud, const Viewport& view);

}  // namespace holomotion
