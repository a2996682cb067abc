#pragma once

// Uniform-grid bucketing of planar points for exact nearest-neighbor queries.
//
// Distances are compared as squared Euclidean distances dx*dx + dy*dy, and
// ties go to the smallest point index, so a query returns exactly what a
// linear scan with the same rule returns.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace holomotion {

struct Neighbor {
  std::size_t index = std::numeric_limits<std::size_t>::max();
  double dist2 = std::numeric_limits<double>::infinity();
};

inline double squared_distance(std::complex<double> a, std::complex<double> b) {
  const double dx = a.real() - b.real();
  const double dy = a.imag() - b.imag();
  return dx * dx + dy * dy;
}

class GridIndex {
 public:
  // The index keeps a view of `points`; the caller keeps them alive.
  GridIndex(std::span<const std::complex<double>> points, double cell_size);

  // Nearest point to q, skipping index `skip` (pass npos to skip nothing).
  Neighbor nearest(std::complex<double> q, std::size_t skip = npos) const;

  double cell_size() const noexcept { return cell_; }
  std::size_t size() const noexcept { return points_.size(); }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  void scan_cell(std::int64_t ix, std::int64_t iy, std::complex<double> q,
                 std::size_t skip, Neighbor& best) const;

  std::span<const std::complex<double>> points_;
  double cell_ = 1.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::int64_t nx_ = 1;
  std::int64_t ny_ = 1;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_items_;
};

// Cell size for a quasi-uniform sample: sqrt(bounding area / n), falling back
// to extent / n for collinear (e.g. real) samples.
double provisional_cell_size(std::span<const std::complex<double>> points);

// Nearest-neighbor distance of every point to the rest of the set.
std::vector<double> nearest_neighbor_distances(std::span<const std::complex<double>> points);

// Median nearest-neighbor spacing, estimated on a deterministic stride sample
// of at most `max_samples` points.
double median_spacing(std::span<const std::complex<double>> points,
                      std::size_t max_samples = 2048);

}  // namespace holomotion
