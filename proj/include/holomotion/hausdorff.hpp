#pragma once

// Exact Hausdorff distance between finite point clouds.

#include <cstddef>
#include <span>
#include <vector>

#include "holomotion/families.hpp"
#include "holomotion/julia.hpp"
#include "holomotion/report.hpp"

namespace holomotion {

struct DirectedDistance {
  double distance = 0.0;
  Complex from{};  // the point of the source cloud farthest from the target
  Complex to{};    // its nearest point in the target
};

struct DistanceReport {
  double directed_ab = 0.0;
  double directed_ba = 0.0;
  double hausdorff = 0.0;
  Complex witness_a{};
  Complex witness_b{};
  double sampling_error = 0.0;  // sum of the two covering radii
  DirectedDistance ab;
  DirectedDistance ba;
};

// Nearest-neighbor ties go to the lowest target index; among source points
// at the maximal distance the last one wins, which for canonicalized clouds
// is the lexicographically greatest.
DirectedDistance directed_distance(std::span<const Complex> from, std::span<const Complex> to);

// Distance of every point of `from` to the nearest point of `to`.
std::vector<double> nearest_distances(std::span<const Complex> from, std::span<const Complex> to);

DistanceReport hausdorff_distance(const PointCloud& a, const PointCloud& b);

nlohmann::json to_json(const DistanceReport& r);

/// d_H(J(q_c), J(q_{1/4})) against sqrt(1/4 - c), with the attaining pair
/// checked against the parabolic point 1/2 and beta(c). Distance deviations
/// explained only by sampling error give Inconclusive.
Report verify_parabolic_distance(double c, std::size_t depth, double tol, double witness_tol);

/// d_H(J(f_mu), J(f_1)) <= (2 + sqrt 2)(mu - 1)/2 for mu in (1, 2), with
/// the logistic clouds obtained from quadratic ones through G^-1.
Report verify_logistic_distance(double mu, std::size_t depth, double tol);

}  // namespace holomotion
