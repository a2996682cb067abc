#include "holomotion/grid_index.hpp"

#include <algorithm>
#include <cmath>

#include "holomotion/error.hpp"

namespace holomotion {

namespace {

constexpr double kMaxCellsPerPoint = 4.0;

}  // namespace

GridIndex::GridIndex(std::span<const std::complex<double>> points, double cell_size)
    : points_(points) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptyCloud, "grid index over an empty point set");
  }
  if (points.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::BudgetExceeded, "grid index supports < 2^32 points");
  }
  double xmin = points[0].real(), xmax = xmin;
  double ymin = points[0].imag(), ymax = ymin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  cell_ = (cell_size > 0.0 && std::isfinite(cell_size)) ? cell_size
                                                         : (extent > 0.0 ? extent : 1.0);
  // Keep the cell table proportional to the point count.
  const double budget = kMaxCellsPerPoint * static_cast<double>(points.size()) + 16.0;
  for (;;) {
    const double cx = std::floor((xmax - xmin) / cell_) + 1.0;
    const double cy = std::floor((ymax - ymin) / cell_) + 1.0;
    if (cx * cy <= budget) {
      nx_ = static_cast<std::int64_t>(cx);
      ny_ = static_cast<std::int64_t>(cy);
      break;
    }
    cell_ *= 2.0;
  }
  x0_ = xmin;
  y0_ = ymin;

  const auto ncells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::uint32_t> cell_of(points.size());
  cell_start_.assign(ncells + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto ix = static_cast<std::int64_t>(std::floor((points[i].real() - x0_) / cell_));
    auto iy = static_cast<std::int64_t>(std::floor((points[i].imag() - y0_) / cell_));
    ix = std::clamp<std::int64_t>(ix, 0, nx_ - 1);
    iy = std::clamp<std::int64_t>(iy, 0, ny_ - 1);
    cell_of[i] = static_cast<std::uint32_t>(iy * nx_ + ix);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_items_.resize(points.size());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell_items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }
}

void GridIndex::scan_cell(std::int64_t ix, std::int64_t iy, std::complex<double> q,
                          std::size_t skip, Neighbor& best) const {
  const auto c = static_cast<std::size_t>(iy * nx_ + ix);
  for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
    const std::size_t i = cell_items_[k];
    if (i == skip) continue;
    const double d2 = squared_distance(points_[i], q);
    if (d2 < best.dist2 || (d2 == best.dist2 && i < best.index)) {
      best.dist2 = d2;
      best.index = i;
    }
  }
}

Neighbor GridIndex::nearest(std::complex<double> q, std::size_t skip) const {
  Neighbor best;
  const double fx = std::floor((q.real() - x0_) / cell_);
  const double fy = std::floor((q.imag() - y0_) / cell_);
  // Clamp into a range where int64 arithmetic is safe; far queries still see
  // every ring in order.
  const double lim = 4.0e15;
  const auto qx = static_cast<std::int64_t>(std::clamp(fx, -lim, lim));
  const auto qy = static_cast<std::int64_t>(std::clamp(fy, -lim, lim));

  const std::int64_t dx_out = qx < 0 ? -qx : (qx >= nx_ ? qx - (nx_ - 1) : 0);
  const std::int64_t dy_out = qy < 0 ? -qy : (qy >= ny_ ? qy - (ny_ - 1) : 0);
  const std::int64_t r_start = std::max(dx_out, dy_out);
  const std::int64_t r_end =
      std::max({qx, nx_ - 1 - qx, qy, ny_ - 1 - qy, std::int64_t{0}});

  for (std::int64_t r = r_start; r <= r_end; ++r) {
    const std::int64_t y_lo = std::max<std::int64_t>(qy - r, 0);
    const std::int64_t y_hi = std::min<std::int64_t>(qy + r, ny_ - 1);
    const std::int64_t x_lo = std::max<std::int64_t>(qx - r, 0);
    const std::int64_t x_hi = std::min<std::int64_t>(qx + r, nx_ - 1);
    if (r == 0) {
      if (qx >= 0 && qx < nx_ && qy >= 0 && qy < ny_) scan_cell(qx, qy, q, skip, best);
    } else {
      // Rows qy - r and qy + r, then the two columns between them.
      for (const std::int64_t iy : {qy - r, qy + r}) {
        if (iy < 0 || iy >= ny_) continue;
        for (std::int64_t ix = x_lo; ix <= x_hi; ++ix) scan_cell(ix, iy, q, skip, best);
      }
      for (const std::int64_t ix : {qx - r, qx + r}) {
        if (ix < 0 || ix >= nx_) continue;
        for (std::int64_t iy = std::max(y_lo, qy - r + 1); iy <= std::min(y_hi, qy + r - 1);
             ++iy) {
          scan_cell(ix, iy, q, skip, best);
        }
      }
    }
    // Anything in ring r + 1 or beyond is at least r cells away; half a cell
    // of slack absorbs rounding in the cell assignment and keeps ties exact.
    if (r >= 1) {
      const double reach = (static_cast<double>(r) - 0.5) * cell_;
      if (best.dist2 < reach * reach) break;
    }
  }
  return best;
}

double provisional_cell_size(std::span<const std::complex<double>> points) {
  if (points.empty()) return 1.0;
  double xmin = points[0].real(), xmax = xmin;
  double ymin = points[0].imag(), ymax = ymin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double w = xmax - xmin, h = ymax - ymin;
  const auto n = static_cast<double>(points.size());
  const double extent = std::max(w, h);
  if (extent <= 0.0) return 1.0;
  const double thin = std::min(w, h);
  if (thin <= extent / n) return extent / n;
  return std::sqrt(w * h / n);
}

std::vector<double> nearest_neighbor_distances(std::span<const std::complex<double>> points) {
  std::vector<double> out(points.size(), 0.0);
  if (points.size() < 2) return out;
  const GridIndex index(points, median_spacing(points));
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = std::sqrt(index.nearest(points[i], i).dist2);
  }
  return out;
}

double median_spacing(std::span<const std::complex<double>> points, std::size_t max_samples) {
  if (points.size() < 2) return 1.0;
  const GridIndex coarse(points, provisional_cell_size(points));
  const std::size_t stride = std::max<std::size_t>(1, points.size() / std::max<std::size_t>(1, max_samples));
  std::vector<double> d;
  for (std::size_t i = 0; i < points.size(); i += stride) {
    d.push_back(std::sqrt(coarse.nearest(points[i], i).dist2));
  }
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  const double m = *mid;
  return m > 0.0 ? m : provisional_cell_size(points);
}

}  // namespace holomotion
