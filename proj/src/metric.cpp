#include "holomotion/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "holomotion/error.hpp"
#include "holomotion/julia.hpp"

namespace holomotion {

double gamma_metric(Complex z) {
  const double a = std::abs(z);
  const double b = std::abs(z - 1.0);
  if (a < kSingularGuard || b < kSingularGuard) {
    throw Error(ErrorCode::Singular, "metric density is singular at 0 and 1");
  }
  return 1.0 / std::sqrt(a * b);
}

bool expansion_admissible(double mu, double z) {
  const auto inside = [](double x) {
    return x >= kSingularGuard && x <= 1.0 - kSingularGuard;
  };
  return mu >= 4.0 && inside(z) && inside(apply_f(mu, z).real());
}

double expansion_factor(double mu, double z) {
  if (!(mu >= 4.0)) throw Error(ErrorCode::OutOfDomain, "expansion factor needs mu >= 4");
  if (!expansion_admissible(mu, z)) {
    throw Error(ErrorCode::Singular, "z and f(z) must lie in (0, 1) away from the endpoints");
  }
  // gamma(f(z)) |Df(z)| / gamma(z) = sqrt(mu) |u| / sqrt(1 - f(z)) with
  // u = 1 - 2z and 1 - f(z) = (1 - mu/4) + (mu/4) u^2, which avoids the
  // cancellation in 1 - f(z) near the critical point.
  const double u = 1.0 - 2.0 * z;
  const double one_minus_f = (1.0 - mu / 4.0) + (mu / 4.0) * u * u;
  return std::sqrt(mu) * std::abs(u) / std::sqrt(one_minus_f);
}

InverseDerivativeBound inv_deriv_bound(double mu, const OrbitSegment& orbit) {
  if (!(mu >= 4.0)) throw Error(ErrorCode::OutOfDomain, "inverse-derivative bound needs mu >= 4");
  const double a = std::sqrt(mu);
  InverseDerivativeBound out;
  out.bound.reserve(orbit.points.size());
  out.inverse_deriv.reserve(orbit.points.size());
  double a_pow = 1.0;
  for (std::size_t n = 0; n < orbit.points.size(); ++n) {
    const Complex zn = orbit.points[n];
    const double x = zn.real();
    if (zn.imag() != 0.0 || !(x > 0.0 && x < 1.0)) {
      throw Error(ErrorCode::Singular, "orbit point outside (0, 1)", n);
    }
    const double b = gamma_metric(zn) / (2.0 * a_pow);
    const double inv = 1.0 / std::abs(orbit.derivs[n]);
    out.bound.push_back(b);
    out.inverse_deriv.push_back(inv);
    if (!(inv <= b + 1e-12) && out.holds) {
      out.holds = false;
      out.first_violation = n;
    }
    a_pow *= a;
  }
  return out;
}

namespace {

double left_branch_unchecked(double mu, double x) {
  return 2.0 * x / (mu * (1.0 + std::sqrt(1.0 - 4.0 * x / mu)));
}

double koenigs_value(double mu, double z, std::size_t iters, std::size_t* used) {
  double x = z;
  double scale = 1.0;
  double prev = z;
  std::size_t k = 0;
  while (k < iters) {
    ++k;
    x = left_branch_unchecked(mu, x);
    scale *= mu;
    const double val = scale * x;
    const bool settled = std::abs(val - prev) <= 1e-14 * std::abs(val);
    prev = val;
    if (settled) break;
  }
  if (used) *used = k;
  return prev;
}

}  // namespace

KoenigsResult koenigs(double mu, double z, std::size_t iters) {
  if (!(mu >= 4.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::OutOfDomain, "Koenigs coordinate needs real mu >= 4");
  }
  if (!(z >= 0.0 && z < 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "z outside the branch domain [0, 1)");
  }
  KoenigsResult r;
  if (z == 0.0) {
    r.residual = 0.0;
    return r;
  }
  r.value = koenigs_value(mu, z, iters, &r.iterations);
  const double fz = apply_f(mu, z).real();
  if (z <= 0.5 && fz >= 0.0 && fz < 1.0) {
    const double phi_f = koenigs_value(mu, fz, iters, nullptr);
    r.residual = std::abs(phi_f - mu * r.value);
  }
  return r;
}

Report verify_expansion(std::span<const double> mus, std::size_t depth, std::size_t min_points) {
  Report rep;
  rep.claim = "expansion";
  rep.parameters["mu"] = std::vector<double>(mus.begin(), mus.end());
  rep.parameters["depth"] = depth;
  rep.tolerances["lower_bound_slack"] = 1e-12;
  rep.tolerances["mu4_equality"] = 1e-9;
  rep.verdict = Verdict::Pass;
  double worst_margin = std::numeric_limits<double>::infinity();
  nlohmann::json per_mu = nlohmann::json::array();
  for (const double mu : mus) {
    const PointCloud cloud = cantor_sample_real(mu, depth);
    const double a = std::sqrt(mu);
    std::size_t used = 0;
    double min_factor = std::numeric_limits<double>::infinity();
    double max_dev4 = 0.0;
    Complex witness{};
    for (const auto& p : cloud.points) {
      if (!expansion_admissible(mu, p.real())) continue;
      const double e = expansion_factor(mu, p.real());
      ++used;
      if (e < min_factor) {
        min_factor = e;
        witness = p;
      }
      if (mu == 4.0) max_dev4 = std::max(max_dev4, std::abs(e - 2.0));
    }
    const double margin = min_factor - a;
    nlohmann::json entry{{"mu", mu},
                         {"points", used},
                         {"min_factor", min_factor},
                         {"sqrt_mu", a},
                         {"witness", to_json(witness)}};
    if (mu == 4.0) entry["max_deviation_from_2"] = max_dev4;
    per_mu.push_back(entry);
    if (margin < worst_margin) {
      worst_margin = margin;
      rep.witness_point = witness;
      rep.max_ratio = min_factor / a;
    }
    if (used < min_points) {
      rep.verdict = Verdict::Fail;
      rep.violation = "fewer than " + std::to_string(min_points) + " admissible points at mu=" +
                      format_number(mu);
    } else if (!(margin >= -1e-12)) {
      rep.verdict = Verdict::Fail;
      rep.violation = "expansion factor " + format_number(min_factor) + " < sqrt(mu) = " +
                      format_number(a) + " at z=" + format_number(witness.real());
    } else if (mu == 4.0 && !(max_dev4 <= 1e-9)) {
      rep.verdict = Verdict::Fail;
      rep.violation = "expansion factor differs from 2 at mu=4 by " + format_number(max_dev4);
    }
  }
  rep.details["per_mu"] = per_mu;
  return rep;
}

Report verify_inverse_derivative(std::span<const double> mus, std::size_t orbits,
                                 std::size_t length) {
  Report rep;
  rep.claim = "inverse_derivative";
  rep.parameters["mu"] = std::vector<double>(mus.begin(), mus.end());
  rep.parameters["orbits"] = orbits;
  rep.parameters["length"] = length;
  rep.tolerances["absolute"] = 1e-12;
  rep.verdict = Verdict::Pass;
  if (mus.empty()) throw Error(ErrorCode::InvalidArgument, "empty mu grid");
  std::mt19937_64 rng(0x5eed'1eafULL);
  std::vector<PointCloud> clouds;
  for (const double mu : mus) clouds.push_back(cantor_sample_real(mu, 14));
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orbits; ++i) {
    const std::size_t which = i % clouds.size();
    const auto& cloud = clouds[which];
    std::uniform_int_distribution<std::size_t> pick(0, cloud.points.size() - 1);
    const Complex z0 = cloud.points[pick(rng)];
    const double mu = mus[which];
    const auto seg = orbit(Parameter::logistic(mu), z0, length);
    const auto b = inv_deriv_bound(mu, seg);
    for (std::size_t n = 0; n < b.bound.size(); ++n) {
      const double excess = b.inverse_deriv[n] - b.bound[n];
      if (excess > worst) {
        worst = excess;
        rep.witness_point = z0;
      }
    }
    if (!b.holds && rep.verdict == Verdict::Pass) {
      rep.verdict = Verdict::Fail;
      rep.violation = "1/|Df^n(z)| > gamma(z_n)/(2 A^n) at n=" +
                      std::to_string(*b.first_violation) + ", mu=" + format_number(mu) +
                      ", z=" + format_number(z0.real());
    }
  }
  rep.max_ratio = worst;
  rep.details["max_excess"] = worst;
  return rep;
}

Report verify_koenigs(double mu, std::span<const double> zs, std::size_t iters, double tol,
                      double residual_tol) {
  Report rep;
  rep.claim = "koenigs";
  rep.parameters["mu"] = mu;
  rep.parameters["z"] = std::vector<double>(zs.begin(), zs.end());
  rep.parameters["iters"] = iters;
  rep.tolerances["closed_form"] = tol;
  rep.tolerances["residual_relative"] = residual_tol;
  rep.verdict = Verdict::Pass;
  nlohmann::json rows = nlohmann::json::array();
  for (const double z : zs) {
    const auto k = koenigs(mu, z, iters);
    nlohmann::json row{{"z", z}, {"phi", k.value}, {"iterations", k.iterations}};
    const double scale = std::max(1.0, std::abs(k.value));
    if (k.residual) {
      row["residual"] = *k.residual;
      if (!(*k.residual <= residual_tol * scale)) {
        rep.verdict = Verdict::Fail;
        rep.violation = "functional equation residual " + format_number(*k.residual) +
                        " at z=" + format_number(z);
      }
    }
    if (mu == 4.0) {
      const double t = std::asin(std::sqrt(z));
      const double err = std::abs(k.value - t * t);
      row["closed_form"] = t * t;
      row["error"] = err;
      if (err > rep.max_ratio) {
        rep.max_ratio = err;
        rep.witness_point = Complex(z);
      }
      if (!(err <= tol)) {
        rep.verdict = Verdict::Fail;
        rep.violation = "|phi(z) - asin(sqrt z)^2| = " + format_number(err) + " at z=" +
                        format_number(z);
      }
    }
    rows.push_back(row);
  }
  rep.details["rows"] = rows;
  return rep;
}

}  // namespace holomotion
