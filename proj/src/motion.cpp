#include "holomotion/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holomotion/error.hpp"
#include "holomotion/metric.hpp"

namespace holomotion {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "series tolerance must be > 0");
}

void require_transport_mu(Complex mu) {
  if (mu == Complex(0.0) || mu == Complex(1.0)) {
    throw Error(ErrorCode::OutOfDomain, "conjugacy transport is undefined at mu = 0 and mu = 1");
  }
}

// Fixed points of q_c with |Dq| > 1. An orbit that lands on one (relative to
// its accumulated round-off) has a geometric remainder, summed in closed form.
struct RepellingPoint {
  Complex point;
  Complex tail_factor;  // sum_{m>=1} (2p)^-m = 1/(2p - 1)
};

std::vector<RepellingPoint> repelling_fixed_points(Complex c) {
  std::vector<RepellingPoint> out;
  for (const auto& fp : fixed_points(Parameter::quadratic(c))) {
    if (std::abs(fp.multiplier) > 1.0 + 1e-9) out.push_back({fp.point, 1.0 / (fp.multiplier - 1.0)});
  }
  return out;
}

SeriesResult dzdc_impl(Complex c, Complex z, double tol, bool rigorous) {
  const auto fixed = repelling_fixed_points(c);
  double s = 0.0, log_rate = 0.0, floor = 0.0;
  if (rigorous) {
    s = std::sqrt(1.0 - 4.0 * c.real());
    log_rate = std::log1p(s);
    // |2 z_n| >= 1 + s holds on J(q_c); a clear shortfall means round-off has
    // pushed the orbit into the attracting basin.
    floor = (1.0 + s) * (1.0 - 1e-3);
  }
  const double radius = escape_radius(c) * (1.0 + 1e-9) + 1e-12;
  constexpr std::size_t kWindow = 8;
  Complex d(1.0);
  Complex sum(0.0);
  double err = kEps * std::abs(z);  // forward error of the computed orbit
  double prev_abs = 0.0;
  double worst_ratio = 0.0;
  std::size_t small_run = 0;
  for (std::size_t n = 1; n <= kMaxSeriesTerms; ++n) {
    for (const auto& fp : fixed) {
      if (std::abs(z - fp.point) <= 16.0 * err) return {-(sum + fp.tail_factor / d), n - 1, 0.0, true};
    }
    const Complex dq = deriv_q(c, z);
    if (dq == Complex(0.0)) {
      throw Error(ErrorCode::PreCritical, "orbit hits the critical point", n - 1);
    }
    if (rigorous && std::abs(dq) < floor) {
      throw Error(ErrorCode::NonConvergence,
                  "orbit left the Julia set numerically (|Dq| below 1 + sqrt(1 - 4c))", n - 1);
    }
    d *= dq;
    const Complex term = 1.0 / d;
    if (!finite(term)) throw Error(ErrorCode::NonConvergence, "derivative product is not finite", n);
    sum += term;
    z = apply_q(c, z);
    err = std::abs(dq) * err + 4.0 * kEps * (std::abs(z) + std::abs(c));
    if (rigorous) {
      const double tail = std::exp(-static_cast<double>(n) * log_rate) / s;
      if (tail <= tol) return {-sum, n, tail, true};
      continue;
    }
    if (!(std::abs(z) <= radius)) {
      throw Error(ErrorCode::NonConvergence, "orbit left the Julia set numerically", n);
    }
    const double a = std::abs(term);
    const double ratio = prev_abs > 0.0 ? a / prev_abs : 0.0;
    prev_abs = a;
    if (a < tol) {
      worst_ratio = small_run == 0 ? ratio : std::max(worst_ratio, ratio);
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= kWindow && worst_ratio < 1.0) {
      const double tail = a * worst_ratio / (1.0 - worst_ratio) * 10.0;
      return {-sum, n, tail, false};
    }
  }
  throw Error(ErrorCode::NonConvergence, "terms do not decay");
}

}  // namespace

SeriesResult dzdc_series(Complex c, Complex z, double tol) {
  require_positive_tol(tol);
  const bool rigorous = c.imag() == 0.0 && c.real() >= 0.0 && c.real() < 0.25;
  return dzdc_impl(c, z, tol, rigorous);
}

SeriesResult dzdmu_series(Complex mu_c, Complex z_c, double tol) {
  require_positive_tol(tol);
  if (mu_c.imag() != 0.0 || z_c.imag() != 0.0) {
    throw Error(ErrorCode::NonReal, "the logistic series is implemented for real mu and z");
  }
  const double mu = mu_c.real();
  double x = z_c.real();
  if (!(mu >= 4.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::OutOfDomain, "the logistic series needs mu >= 4");
  }
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfDomain, "z must lie in J(f_mu), a subset of [0, 1]");
  }
  constexpr std::size_t kWindow = 8;
  const double a = std::sqrt(mu);
  // Landing on the fixed point p = 1 - 1/mu leaves the geometric remainder
  // sum_{k>=1} p (2 - mu)^-k / D = p / ((1 - mu) D).
  const double p = 1.0 - 1.0 / mu;
  double d = 1.0;
  double err = kEps * std::abs(x);  // forward error of the computed orbit
  double a_pow = 1.0;
  double sum = 0.0;
  std::size_t small_run = 0;
  for (std::size_t n = 1; n <= kMaxSeriesTerms; ++n) {
    if (std::abs(x - p) <= 16.0 * err) {
      return {Complex(-(sum + p / ((1.0 - mu) * d)) / mu), n - 1, 0.0, true};
    }
    const double df = mu * (1.0 - 2.0 * x);
    const double next = mu * x * (1.0 - x);
    err = std::abs(df) * err + 4.0 * kEps * std::abs(next);
    d *= df;
    x = next;
    a_pow *= a;
    if (std::abs(x) <= 16.0 * err) {
      // Landed on the fixed point 0: every later numerator vanishes.
      return {Complex(-sum / mu), n - 1, 0.0, true};
    }
    if (d == 0.0) throw Error(ErrorCode::PreCritical, "orbit hits the critical point 1/2", n - 1);
    sum += x / d;
    if (!(x >= -0.5 && x <= 1.5) || !std::isfinite(sum)) {
      throw Error(ErrorCode::NonConvergence, "orbit left the Julia set numerically", n);
    }
    const bool near_singular = std::abs(x) < kSingularGuard || std::abs(x - 1.0) < kSingularGuard;
    const double bound = near_singular ? std::numeric_limits<double>::infinity()
                                       : std::abs(x) * gamma_metric(x) / (2.0 * mu * a_pow);
    small_run = bound < tol ? small_run + 1 : 0;
    if (small_run >= kWindow) {
      const double tail = bound * (1.0 / a) / (1.0 - 1.0 / a) * 10.0;
      return {Complex(-sum / mu), n, tail, false};
    }
  }
  throw Error(ErrorCode::NonConvergence, "series did not reach the requested tolerance");
}

Complex transport_dwdc(Complex mu, Complex z, Complex dzdmu) {
  require_transport_mu(mu);
  return (-mu * dzdmu - z + 0.5) * 2.0 / (1.0 - mu);
}

Complex transport_dzdmu(Complex mu, Complex w, Complex dwdc) {
  require_transport_mu(mu);
  return (mu - 1.0) / (2.0 * mu) * dwdc + w / (mu * mu);
}

Complex track_prefixed(double c, std::string_view word) {
  if (!(c >= 0.0 && c <= 0.25)) {
    throw Error(ErrorCode::OutOfDomain, "branch tracking is defined for real c in [0, 1/4]");
  }
  Complex z = beta(c);
  for (const char ch : word) {
    const Complex r = principal_sqrt(z - c);
    if (ch == '+') {
      z = r;
    } else if (ch == '-') {
      z = Complex(-r.real() + 0.0, -r.imag() + 0.0);
    } else {
      throw Error(ErrorCode::InvalidArgument, "branch words use only '+' and '-'");
    }
  }
  return z;
}

double track_prefixed_logistic(double mu, const Word& word) {
  return pullback_real(mu, word, 1.0);
}

std::vector<std::string> all_branch_words(std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      out.push_back(out[i] + '+');
      out.push_back(out[i] + '-');
    }
    begin = end;
  }
  return out;
}

Report verify_derivative_bound(double c, const PointCloud& cloud, double tol) {
  if (!(c >= 0.0 && c < 0.25)) {
    throw Error(ErrorCode::OutOfDomain, "the derivative bound is checked for c in [0, 1/4)");
  }
  Report rep;
  rep.claim = "thm12";
  rep.parameters["c"] = c;
  rep.parameters["depth"] = cloud.depth;
  rep.parameters["points"] = cloud.points.size();
  rep.tolerances["ratio"] = tol;

  const double scale = 2.0 * std::sqrt(0.25 - c);
  const double series_tol = 1e-3 * tol / scale;
  rep.tolerances["series_absolute"] = series_tol;

  double max_ratio = -1.0;
  Complex witness{};
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& z : cloud.points) {
    try {
      const double ratio = std::abs(dzdc_series(c, z, series_tol).value) * scale;
      if (ratio >= max_ratio) {
        max_ratio = ratio;
        witness = z;
      }
    } catch (const Error& e) {
      failures.push_back({{"point", to_json(z)}, {"error", e.what()}});
    }
  }
  const Complex b = beta(c);
  const double ratio_beta = std::abs(dzdc_series(c, b, series_tol).value) * scale;
  rep.max_ratio = max_ratio;
  rep.witness_point = witness;
  rep.details["beta"] = to_json(b);
  rep.details["ratio_at_beta"] = ratio_beta;
  rep.details["max_minus_ratio_at_beta"] = max_ratio - ratio_beta;
  rep.details["failures"] = failures;

  if (!(max_ratio <= 1.0 + tol)) {
    rep.verdict = Verdict::Fail;
    rep.violation = "|dz/dc| 2 sqrt(1/4 - c) = " + format_number(max_ratio) + " > 1 + tol at z=(" +
                    format_number(witness.real()) + "," + format_number(witness.imag()) + ")";
  } else if (!(std::abs(ratio_beta - 1.0) <= tol)) {
    rep.verdict = Verdict::Fail;
    rep.violation = "ratio at beta is " + format_number(ratio_beta) + ", not 1";
  } else {
    rep.verdict = failures.empty() ? Verdict::Pass : Verdict::Inconclusive;
  }
  return rep;
}

Report verify_derivative_growth(double mu, const PointCloud& cloud, double series_tol) {
  if (!(mu > 4.0)) throw Error(ErrorCode::OutOfDomain, "the O(1/sqrt(mu - 4)) check needs mu > 4");
  Report rep;
  rep.claim = "thm13";
  rep.parameters["mu"] = mu;
  rep.parameters["depth"] = cloud.depth;
  rep.parameters["points"] = cloud.points.size();
  rep.tolerances["series_absolute"] = series_tol;
  rep.tolerances["max_tail_fraction"] = 0.01;

  const double scale = std::sqrt(mu - 4.0);
  double sup = 0.0;
  Complex witness{};
  std::size_t excluded = 0, included = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& z : cloud.points) {
    try {
      const auto r = dzdmu_series(mu, z, series_tol);
      const double mag = std::abs(r.value);
      if (!r.rigorous && r.tail_estimate > 0.01 * mag) {
        ++excluded;
        continue;
      }
      ++included;
      if (mag * scale >= sup) {
        sup = mag * scale;
        witness = z;
      }
    } catch (const Error& e) {
      failures.push_back({{"point", to_json(z)}, {"error", e.what()}});
    }
  }
  rep.max_ratio = sup;
  rep.witness_point = witness;
  rep.details["included"] = included;
  rep.details["excluded_heuristic_tail"] = excluded;
  rep.details["failures"] = failures;
  if (included == 0 || !std::isfinite(sup)) {
    rep.verdict = Verdict::Fail;
    rep.violation = "no finite sup of |dz/dmu| sqrt(mu - 4)";
  } else {
    rep.verdict = failures.empty() ? Verdict::Pass : Verdict::Inconclusive;
  }
  return rep;
}

Report verify_derivative_growth_grid(std::span<const double> mus, std::size_t depth, double max_variation) {
  if (mus.empty()) throw Error(ErrorCode::InvalidArgument, "empty mu grid");
  Report rep;
  rep.claim = "thm13";
  rep.parameters["mu"] = std::vector<double>(mus.begin(), mus.end());
  rep.parameters["depth"] = depth;
  rep.tolerances["max_variation"] = max_variation;
  rep.verdict = Verdict::Pass;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  nlohmann::json per_mu = nlohmann::json::array();
  for (const double mu : mus) {
    const auto sub = verify_derivative_growth(mu, cantor_sample_real(mu, depth));
    per_mu.push_back({{"mu", mu},
                      {"sup", sub.max_ratio},
                      {"witness", to_json(sub.witness_point.value_or(Complex{}))},
                      {"verdict", to_string(sub.verdict)},
                      {"excluded", sub.details["excluded_heuristic_tail"]},
                      {"failures", sub.details["failures"].size()}});
    rep.verdict = combine(rep.verdict, sub.verdict);
    lo = std::min(lo, sub.max_ratio);
    if (sub.max_ratio >= hi) {
      hi = sub.max_ratio;
      rep.witness_point = sub.witness_point;
    }
  }
  const double variation = hi / lo;
  rep.max_ratio = hi;  // the empirical constant
  rep.details["per_mu"] = per_mu;
  rep.details["empirical_constant"] = hi;
  rep.details["variation"] = variation;
  if (!(lo > 0.0) || !std::isfinite(hi) || !(variation < max_variation)) {
    rep.verdict = Verdict::Fail;
    rep.violation = "sup |dz/dmu| sqrt(mu - 4) varies by a factor " + format_number(variation) +
                    " across the grid";
  }
  return rep;
}

Report verify_holder_word(std::string_view word, std::span<const double> c_grid, double tol) {
  Report rep;
  rep.claim = "holder14";
  rep.parameters["word"] = std::string(word);
  rep.parameters["c"] = std::vector<double>(c_grid.begin(), c_grid.end());
  rep.tolerances["absolute"] = tol;
  const Complex z14 = track_prefixed(0.25, word);
  double worst_slack = -std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  for (const double c : c_grid) {
    if (!(c >= 0.0 && c < 0.25)) throw Error(ErrorCode::OutOfDomain, "c grid must lie in [0, 1/4)");
    const Complex zc = track_prefixed(c, word);
    const double dist = std::abs(zc - z14);
    const double bound = std::sqrt(0.25 - c);
    if (dist - bound > worst_slack) {
      worst_slack = dist - bound;
      worst_ratio = dist / bound;
      rep.witness_point = zc;
      rep.details["worst_c"] = c;
    }
  }
  rep.max_ratio = worst_ratio;
  rep.details["worst_slack"] = worst_slack;
  rep.details["limit_point"] = to_json(z14);
  rep.verdict = worst_slack <= tol ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) {
    rep.violation = "|z(c) - z(1/4)| exceeds sqrt(1/4 - c) by " + format_number(worst_slack);
  }
  return rep;
}

Report verify_holder_words(std::size_t max_len, std::span<const double> c_grid, double tol) {
  Report rep;
  rep.claim = "holder14";
  rep.parameters["max_word_length"] = max_len;
  rep.parameters["c"] = std::vector<double>(c_grid.begin(), c_grid.end());
  rep.tolerances["absolute"] = tol;
  rep.verdict = Verdict::Pass;
  double worst_slack = -std::numeric_limits<double>::infinity();
  const auto words = all_branch_words(max_len);
  for (const auto& w : words) {
    const auto sub = verify_holder_word(w, c_grid, tol);
    const double slack = sub.details["worst_slack"].get<double>();
    if (slack > worst_slack) {
      worst_slack = slack;
      rep.max_ratio = sub.max_ratio;
      rep.witness_point = sub.witness_point;
      rep.details["worst_word"] = w;
      rep.details["worst_c"] = sub.details["worst_c"];
    }
    if (sub.verdict == Verdict::Fail && rep.verdict == Verdict::Pass) {
      rep.verdict = Verdict::Fail;
      rep.violation = "word '" + w + "': " + sub.violation;
    }
  }
  double equality_dev = 0.0;
  for (const double c : c_grid) {
    const double d = std::abs(track_prefixed(c, "") - track_prefixed(0.25, ""));
    equality_dev = std::max(equality_dev, std::abs(d - std::sqrt(0.25 - c)));
  }
  rep.details["words"] = words.size();
  rep.details["worst_slack"] = worst_slack;
  rep.details["beta_equality_deviation"] = equality_dev;
  return rep;
}

Report verify_bounded_orbit_prop(double mu, double z, double delta, double tol) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/2]");
  }
  Report rep;
  rep.claim = "prop_delta";
  rep.parameters["mu"] = mu;
  rep.parameters["z"] = z;
  rep.parameters["delta"] = delta;
  rep.tolerances["absolute"] = tol;
  rep.tolerances["band_slack"] = 1e-10;
  rep.witness_point = Complex(z);

  const auto series = dzdmu_series(mu, z, 1e-13);
  const double bound = 1.0 / (8.0 * delta);

  // Band check over the trustworthy horizon of the computed orbit.
  constexpr double kSlack = 1e-10;
  double x = z;
  double err = kEps * std::abs(x);
  std::size_t horizon = 0;
  const std::size_t max_steps = std::max<std::size_t>(series.terms_used, 1);
  for (std::size_t n = 0;; ++n) {
    if (x < delta - kSlack || x > 1.0 - delta + kSlack) {
      rep.verdict = Verdict::Inconclusive;
      rep.violation = "precondition: z_" + std::to_string(n) + " = " + format_number(x) +
                      " leaves [delta, 1 - delta]";
      rep.details["horizon"] = n;
      rep.details["dzdmu"] = series.value.real();
      return rep;
    }
    horizon = n;
    if (n >= max_steps) break;
    const double df = mu * (1.0 - 2.0 * x);
    x = mu * x * (1.0 - x);
    err = std::abs(df) * err + 4.0 * kEps * std::abs(x);
    if (err > kSlack) break;
  }
  const double mag = std::abs(series.value) + (series.rigorous ? 0.0 : series.tail_estimate);
  rep.max_ratio = mag / bound;
  rep.details["horizon"] = horizon;
  rep.details["dzdmu"] = series.value.real();
  rep.details["bound"] = bound;
  rep.details["terms_used"] = series.terms_used;
  rep.verdict = mag <= bound + tol ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) {
    rep.violation = "|dz/dmu| = " + format_number(mag) + " > 1/(8 delta) = " + format_number(bound);
  }
  return rep;
}

Report verify_transport_bound(double mu, std::size_t max_len, double tol) {
  if (!(mu > 1.0 && mu < 2.0)) throw Error(ErrorCode::OutOfDomain, "mu must lie in (1, 2)");
  Report rep;
  rep.claim = "transported_derivative";
  rep.parameters["mu"] = mu;
  rep.parameters["max_word_length"] = max_len;
  rep.tolerances["absolute"] = tol;
  const double c = param_map(mu).real();
  const double bound = (2.0 + std::sqrt(2.0)) / 2.0;
  double worst = 0.0;
  for (const auto& w : all_branch_words(max_len)) {
    const Complex pt = track_prefixed(c, w);
    const auto d = dzdc_series(c, pt, 1e-13);
    const Complex dz = transport_dzdmu(mu, pt, d.value);
    const double mag = std::abs(dz) + (mu - 1.0) / (2.0 * mu) * d.tail_estimate;
    if (mag >= worst) {
      worst = mag;
      rep.witness_point = inverse_G(mu, pt);
      rep.details["worst_word"] = w;
    }
  }
  rep.max_ratio = worst / bound;
  rep.details["max_dzdmu"] = worst;
  rep.details["bound"] = bound;
  rep.verdict = worst <= bound + tol ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) {
    rep.violation = "|dz/dmu| = " + format_number(worst) + " > (2 + sqrt 2)/2";
  }
  return rep;
}

}  // namespace holomotion
