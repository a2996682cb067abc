#include "holomotion/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "holomotion/error.hpp"
#include "holomotion/grid_index.hpp"

namespace holomotion {

namespace {

double index_cell(std::span<const Complex> a, std::span<const Complex> b) {
  const auto larger = a.size() >= b.size() ? a : b;
  double h = median_spacing(larger);
  if (!(h > 0.0)) h = provisional_cell_size(larger);
  return h;
}

DirectedDistance directed_with_index(std::span<const Complex> from, std::span<const Complex> to,
                                     const GridIndex& index) {
  DirectedDistance out;
  double best = -1.0;
  for (const auto& p : from) {
    const Neighbor nb = index.nearest(p);
    if (nb.dist2 >= best) {
      best = nb.dist2;
      out.from = p;
      out.to = to[nb.index];
    }
  }
  out.distance = std::sqrt(best);
  return out;
}

void require_nonempty(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyCloud, "Hausdorff distance of an empty cloud");
}

}  // namespace

DirectedDistance directed_distance(std::span<const Complex> from, std::span<const Complex> to) {
  require_nonempty(from, to);
  const GridIndex index(to, index_cell(from, to));
  return directed_with_index(from, to, index);
}

std::vector<double> nearest_distances(std::span<const Complex> from, std::span<const Complex> to) {
  require_nonempty(from, to);
  const GridIndex index(to, index_cell(from, to));
  std::vector<double> out;
  out.reserve(from.size());
  for (const auto& p : from) out.push_back(std::sqrt(index.nearest(p).dist2));
  return out;
}

DistanceReport hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  const std::span<const Complex> pa(a.points), pb(b.points);
  require_nonempty(pa, pb);
  const double h = index_cell(pa, pb);
  const GridIndex index_a(pa, h), index_b(pb, h);
  DistanceReport r;
  r.ab = directed_with_index(pa, pb, index_b);
  r.ba = directed_with_index(pb, pa, index_a);
  r.directed_ab = r.ab.distance;
  r.directed_ba = r.ba.distance;
  if (r.directed_ab >= r.directed_ba) {
    r.hausdorff = r.directed_ab;
    r.witness_a = r.ab.from;
    r.witness_b = r.ab.to;
  } else {
    r.hausdorff = r.directed_ba;
    r.witness_a = r.ba.to;
    r.witness_b = r.ba.from;
  }
  r.sampling_error = a.covering_radius + b.covering_radius;
  return r;
}

nlohmann::json to_json(const DistanceReport& r) {
  return {{"directed_ab", r.directed_ab},
          {"directed_ba", r.directed_ba},
          {"hausdorff", r.hausdorff},
          {"witness_a", to_json(r.witness_a)},
          {"witness_b", to_json(r.witness_b)},
          {"sampling_error", r.sampling_error}};
}

Report verify_parabolic_distance(double c, std::size_t depth, double tol, double witness_tol) {
  if (!(c >= 0.0 && c < 0.25)) throw Error(ErrorCode::OutOfDomain, "c must lie in [0, 1/4)");
  Report rep;
  rep.claim = "corollary";
  rep.parameters["c"] = c;
  rep.parameters["depth"] = depth;
  rep.tolerances["distance"] = tol;
  rep.tolerances["witness"] = witness_tol;

  const auto parabolic = sample_inverse_iteration(0.25, depth);
  const auto cloud = sample_inverse_iteration(c, depth);
  const auto d = hausdorff_distance(parabolic, cloud);
  const double expected = std::sqrt(0.25 - c);
  const double slack = std::abs(d.hausdorff - expected);
  const Complex b = beta(c);
  // The attaining pair comes from the parabolic side: sup over J(q_{1/4}) of
  // the distance to J(q_c) is reached at 1/2, whose nearest point is beta.
  const double wq = std::abs(d.ab.from - 0.5);
  const double wc = std::abs(d.ab.to - b);

  rep.max_ratio = d.hausdorff / expected;
  rep.witness_point = d.ab.to;
  rep.details["distance"] = to_json(d);
  rep.details["expected"] = expected;
  rep.details["deviation"] = slack;
  rep.details["witness_parabolic"] = to_json(d.ab.from);
  rep.details["witness_c"] = to_json(d.ab.to);
  rep.details["witness_parabolic_offset"] = wq;
  rep.details["witness_c_offset"] = wc;
  rep.details["points"] = {parabolic.points.size(), cloud.points.size()};

  rep.verdict = graded(slack, tol, d.sampling_error);
  if (rep.verdict == Verdict::Fail) {
    rep.violation = "|d_H - sqrt(1/4 - c)| = " + format_number(slack) + " > tol + sampling_error";
  }
  if (!(wq <= witness_tol && wc <= witness_tol) && rep.verdict == Verdict::Pass) {
    rep.verdict = Verdict::Fail;
    rep.violation = "attaining pair (" + format_number(d.ab.from.real()) + "," +
                    format_number(d.ab.from.imag()) + ") -> (" + format_number(d.ab.to.real()) +
                    "," + format_number(d.ab.to.imag()) + ") is not (1/2, beta(c))";
  }
  return rep;
}

Report verify_logistic_distance(double mu, std::size_t depth, double tol) {
  if (!(mu > 1.0 && mu < 2.0)) throw Error(ErrorCode::OutOfDomain, "mu must lie in (1, 2)");
  Report rep;
  rep.claim = "remark22";
  rep.parameters["mu"] = mu;
  rep.parameters["depth"] = depth;
  rep.tolerances["distance"] = tol;

  auto to_logistic = [](const PointCloud& q, double m) {
    std::vector<Complex> pts;
    pts.reserve(q.points.size());
    for (const auto& w : q.points) pts.push_back(inverse_G(m, w));
    PointCloud f;
    f.points = canonicalize_points(std::move(pts));
    f.covering_radius = q.covering_radius / m;
    f.parameter = Parameter::logistic(m);
    f.depth = q.depth;
    return f;
  };
  const auto fmu = to_logistic(sample_inverse_iteration(param_map(mu), depth), mu);
  const auto f1 = to_logistic(sample_inverse_iteration(0.25, depth), 1.0);
  const auto d = hausdorff_distance(fmu, f1);
  const double bound = (2.0 + std::sqrt(2.0)) * (mu - 1.0) / 2.0;

  rep.max_ratio = d.hausdorff / bound;
  rep.witness_point = d.witness_a;
  rep.details["distance"] = to_json(d);
  rep.details["bound"] = bound;
  rep.verdict = graded(d.hausdorff - bound, tol, d.sampling_error);
  if (rep.verdict == Verdict::Fail) {
    rep.violation = "d_H = " + format_number(d.hausdorff) + " > (2 + sqrt 2)(mu - 1)/2 = " +
                    format_number(bound);
  }
  return rep;
}

}  // namespace holomotion
