#include "holomotion/julia.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "holomotion/error.hpp"
#include "holomotion/grid_index.hpp"

namespace holomotion {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

struct CellKey {
  std::int64_t x;
  std::int64_t y;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
  }
};

std::size_t checked_pow2(std::size_t depth, std::size_t budget, const char* what) {
  if (depth >= 62 || (std::size_t{1} << depth) > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                std::string(what) + ": depth " + std::to_string(depth) +
                    " exceeds the point budget of " + std::to_string(budget));
  }
  return std::size_t{1} << depth;
}

}  // namespace

double escape_radius(Complex c) { return (1.0 + std::sqrt(1.0 + 4.0 * std::abs(c))) / 2.0; }

Annulus annulus_bounds(double c) {
  if (!(c >= 0.0 && c < 0.25)) {
    throw Error(ErrorCode::OutOfDomain, "annulus bounds need real c in [0, 1/4)");
  }
  return {(1.0 + std::sqrt(1.0 - 4.0 * c)) / 2.0, (1.0 + std::sqrt(1.0 + 4.0 * c)) / 2.0};
}

EscapeResult membership_escape(Complex c, Complex z, std::size_t max_iter) {
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  const double radius = escape_radius(c);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    z = apply_q(c, z);
    if (!(std::abs(z) <= radius)) return Escaped{k};
  }
  return Bounded{};
}

std::vector<Complex> canonicalize_points(std::vector<Complex> points, double tol) {
  for (auto& p : points) p = {p.real() + 0.0, p.imag() + 0.0};
  std::sort(points.begin(), points.end(), lex_less);
  if (tol <= 0.0) {
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
  }
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> cells;
  std::vector<Complex> kept;
  kept.reserve(points.size());
  const double tol2 = tol * tol;
  for (const auto& p : points) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.real() / tol));
    const auto cy = static_cast<std::int64_t>(std::floor(p.imag() / tol));
    bool duplicate = false;
    for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy) {
        auto it = cells.find({cx + dx, cy + dy});
        if (it == cells.end()) continue;
        for (std::size_t i : it->second) {
          if (squared_distance(kept[i], p) <= tol2) {
            duplicate = true;
            break;
          }
        }
      }
    }
    if (duplicate) continue;
    cells[{cx, cy}].push_back(kept.size());
    kept.push_back(p);
  }
  return kept;
}

double estimate_covering_radius(const std::vector<Complex>& points) {
  if (points.size() < 2) return 0.0;
  const auto d = nearest_neighbor_distances(points);
  return 2.0 * *std::max_element(d.begin(), d.end());
}

PointCloud sample_inverse_iteration(Complex c, std::size_t depth, std::size_t point_budget) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  // Levels 1..depth together hold 2^(depth+1) - 2 points before dedup.
  checked_pow2(depth + 1, point_budget * 2, "inverse iteration");

  std::vector<Complex> all;
  std::vector<Complex> level{beta(c)};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<Complex> next;
    next.reserve(level.size() * 2);
    for (const auto& z : level) {
      const Complex r = principal_sqrt(z - c);
      next.push_back(r);
      next.push_back(Complex(-r.real() + 0.0, -r.imag() + 0.0));
    }
    level = std::move(next);
    all.insert(all.end(), level.begin(), level.end());
  }

  PointCloud cloud;
  cloud.points = canonicalize_points(std::move(all));
  cloud.covering_radius = estimate_covering_radius(cloud.points);
  cloud.parameter = Parameter::quadratic(c);
  cloud.depth = depth;
  return cloud;
}

double logistic_left_branch(double mu, double x) {
  const double disc = 1.0 - 4.0 * x / mu;
  if (!(disc >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "inverse branch needs x <= mu/4");
  }
  // (1 - sqrt(d))/2 rewritten without cancellation near x = 0.
  return 2.0 * x / (mu * (1.0 + std::sqrt(disc)));
}

double logistic_right_branch(double mu, double x) { return 1.0 - logistic_left_branch(mu, x); }

PointCloud cantor_sample_real(double mu, std::size_t depth, std::size_t point_budget) {
  if (!(mu >= 4.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::OutOfDomain, "real Cantor sampling needs mu >= 4");
  }
  checked_pow2(depth, point_budget, "cantor sample");
  std::vector<double> level{1.0 - 1.0 / mu};
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<double> next;
    next.reserve(level.size() * 2);
    for (double x : level) {
      const double left = logistic_left_branch(mu, x);
      next.push_back(left);
      next.push_back(1.0 - left);
    }
    level = std::move(next);
  }
  std::vector<Complex> pts(level.begin(), level.end());
  PointCloud cloud;
  cloud.points = canonicalize_points(std::move(pts));
  cloud.covering_radius = estimate_covering_radius(cloud.points);
  cloud.parameter = Parameter::logistic(mu);
  cloud.depth = depth;
  return cloud;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_csv(std::ostream& out, const PointCloud& cloud) {
  out << "re,im\n";
  for (const auto& p : cloud.points) {
    out << format_number(p.real()) << ',' << format_number(p.imag()) << '\n';
  }
}

std::string cloud_to_json(const PointCloud& cloud) {
  std::ostringstream out;
  out << "{\"covering_radius\":" << format_number(cloud.covering_radius)
      << ",\"depth\":" << cloud.depth << ",\"family\":\""
      << (cloud.parameter.family == Family::Quadratic ? "q" : "f") << "\",\"parameter\":["
      << format_number(cloud.parameter.value.real()) << ','
      << format_number(cloud.parameter.value.imag()) << "],\"points\":[";
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (i) out << ',';
    out << '[' << format_number(cloud.points[i].real()) << ','
        << format_number(cloud.points[i].imag()) << ']';
  }
  out << "]}\n";
  return out.str();
}

namespace {

void validate(const Viewport& view) {
  if (view.width == 0 || view.height == 0 || !(view.xmax > view.xmin) ||
      !(view.ymax > view.ymin)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate viewport");
  }
}

Complex pixel_center(const Viewport& view, std::size_t col, std::size_t row) {
  const double x = view.xmin + (static_cast<double>(col) + 0.5) * (view.xmax - view.xmin) /
                                   static_cast<double>(view.width);
  const double y = view.ymax - (static_cast<double>(row) + 0.5) * (view.ymax - view.ymin) /
                                   static_cast<double>(view.height);
  return {x, y};
}

void write_ppm_header(std::ostream& out, const Viewport& view) {
  out << "P6\n" << view.width << ' ' << view.height << "\n255\n";
}

}  // namespace

void write_escape_ppm(std::ostream& out, const Parameter& p, const Viewport& view,
                      std::size_t max_iter) {
  validate(view);
  const bool logistic = p.family == Family::Logistic;
  const Complex c = logistic ? param_map(p.value) : p.value;
  write_ppm_header(out, view);
  std::vector<unsigned char> row(view.width * 3);
  for (std::size_t r = 0; r < view.height; ++r) {
    for (std::size_t col = 0; col < view.width; ++col) {
      Complex z = pixel_center(view, col, r);
      if (logistic) z = conjugacy_G(p.value, z);
      const auto res = membership_escape(c, z, max_iter);
      unsigned char shade = 0;
      if (const auto* e = std::get_if<Escaped>(&res)) {
        const double t = std::log1p(static_cast<double>(e->at)) /
                         std::log1p(static_cast<double>(max_iter));
        shade = static_cast<unsigned char>(255.0 - 200.0 * std::min(1.0, t));
      }
      row[3 * col] = shade;
      row[3 * col + 1] = shade;
      row[3 * col + 2] = shade;
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

void write_cloud_ppm(std::ostream& out, const PointCloud& cloud, const Viewport& view) {
  validate(view);
  std::vector<unsigned char> img(view.width * view.height * 3, 255);
  const double sx = static_cast<double>(view.width) / (view.xmax - view.xmin);
  const double sy = static_cast<double>(view.height) / (view.ymax - view.ymin);
  for (const auto& p : cloud.points) {
    const double fx = std::floor((p.real() - view.xmin) * sx);
    const double fy = std::floor((view.ymax - p.imag()) * sy);
    if (fx < 0 || fy < 0 || fx >= static_cast<double>(view.width) ||
        fy >= static_cast<double>(view.height)) {
      continue;
    }
    const auto idx = (static_cast<std::size_t>(fy) * view.width + static_cast<std::size_t>(fx)) * 3;
    img[idx] = img[idx + 1] = img[idx + 2] = 0;
  }
  write_ppm_header(out, view);
  out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));
}

void write_cloud_svg(std::ostream& out, const PointCloud& cloud, const Viewport& view) {
  validate(view);
  const double sx = static_cast<double>(view.width) / (view.xmax - view.xmin);
  const double sy = static_cast<double>(view.height) / (view.ymax - view.ymin);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << view.width << "\" height=\""
      << view.height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& p : cloud.points) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"0.6\"/>\n",
                  (p.real() - view.xmin) * sx, (view.ymax - p.imag()) * sy);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace holomotion
