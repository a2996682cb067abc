// holomotion: sample Julia sets, verify the derivative and distance claims,
// and emit figure data.
//
// Exit status: 0 PASS, 2 FAIL, 3 INCONCLUSIVE, 64 usage or range error,
// 74 I/O error, 1 anything else.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holomotion/error.hpp"
#include "holomotion/families.hpp"
#include "holomotion/hausdorff.hpp"
#include "holomotion/julia.hpp"
#include "holomotion/metric.hpp"
#include "holomotion/motion.hpp"
#include "holomotion/report.hpp"
#include "holomotion/symbolic.hpp"

namespace hm = holomotion;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct SampleOptions {
  std::string family = "q";
  double c = 0.0;
  double c_im = 0.0;
  double mu = 4.5;
  std::size_t depth = 10;
  std::string format = "csv";
  std::string out;
  std::vector<double> view{-2.0, 2.0, -2.0, 2.0};
  std::vector<std::size_t> px{512, 512};
  std::size_t max_iter = 256;
  bool escape = false;
};

struct VerifyOptions {
  std::string claim;
  std::vector<double> c;
  std::vector<double> mu;
  std::vector<double> z;
  std::optional<std::size_t> depth;
  std::optional<double> tol;
  std::optional<double> witness_tol;
  std::optional<double> delta;
  std::size_t n = 64;
  std::size_t word_length = 6;
  std::string out;
};

struct FigureOptions {
  std::string which;
  std::string out = ".";
};

hm::Viewport make_view(const SampleOptions& o) {
  hm::Viewport v;
  v.xmin = o.view[0];
  v.xmax = o.view[1];
  v.ymin = o.view[2];
  v.ymax = o.view[3];
  v.width = o.px[0];
  v.height = o.px[1];
  if (!(v.xmin < v.xmax && v.ymin < v.ymax) || v.width == 0 || v.height == 0) {
    throw hm::Error(hm::ErrorCode::InvalidArgument, "empty viewport");
  }
  return v;
}

// Writes through `emit` to `path`, or to stdout when the path is empty.
template <class Emit>
void write_output(const std::string& path, Emit emit) {
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    if (!std::cout) throw hm::Error(hm::ErrorCode::Io, "write to stdout failed");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw hm::Error(hm::ErrorCode::Io, "cannot open " + path);
  emit(f);
  f.close();
  if (!f) throw hm::Error(hm::ErrorCode::Io, "write to " + path + " failed");
}

hm::PointCloud logistic_cloud(double mu, std::size_t depth) {
  if (mu >= 4.0) return hm::cantor_sample_real(mu, depth);
  if (mu == 0.0) throw hm::Error(hm::ErrorCode::OutOfDomain, "mu must be nonzero");
  // J(f_mu) = G^-1(J(q_c(mu))).
  const auto q = hm::sample_inverse_iteration(hm::param_map(mu), depth);
  std::vector<hm::Complex> pts;
  pts.reserve(q.points.size());
  for (const auto& w : q.points) pts.push_back(hm::inverse_G(mu, w));
  hm::PointCloud f;
  f.points = hm::canonicalize_points(std::move(pts));
  f.covering_radius = q.covering_radius / std::abs(mu);
  f.parameter = hm::Parameter::logistic(mu);
  f.depth = depth;
  return f;
}

int run_sample(const SampleOptions& o) {
  hm::Parameter p;
  if (o.family == "q") {
    p = hm::Parameter::quadratic(hm::Complex(o.c, o.c_im));
  } else {
    p = hm::Parameter::logistic(o.mu);
  }
  if (o.format == "ppm" && o.escape) {
    const auto view = make_view(o);
    write_output(o.out, [&](std::ostream& s) { hm::write_escape_ppm(s, p, view, o.max_iter); });
    return 0;
  }
  const hm::PointCloud cloud = o.family == "q"
                                   ? hm::sample_inverse_iteration(p.value, o.depth)
                                   : logistic_cloud(o.mu, o.depth);
  if (o.format == "csv") {
    write_output(o.out, [&](std::ostream& s) { hm::write_csv(s, cloud); });
  } else if (o.format == "json") {
    write_output(o.out, [&](std::ostream& s) { s << hm::cloud_to_json(cloud) << '\n'; });
  } else if (o.format == "ppm") {
    const auto view = make_view(o);
    write_output(o.out, [&](std::ostream& s) { hm::write_cloud_ppm(s, cloud, view); });
  } else {
    const auto view = make_view(o);
    write_output(o.out, [&](std::ostream& s) { hm::write_cloud_svg(s, cloud, view); });
  }
  return 0;
}

// One report out of several runs of the same claim.
hm::Report aggregate(const std::string& claim, const std::vector<hm::Report>& parts) {
  if (parts.size() == 1) return parts.front();
  hm::Report r;
  r.claim = claim;
  r.verdict = hm::Verdict::Pass;
  r.max_ratio = -std::numeric_limits<double>::infinity();
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& p : parts) {
    cases.push_back(hm::to_json(p));
    if (p.max_ratio > r.max_ratio) {
      r.max_ratio = p.max_ratio;
      r.witness_point = p.witness_point;
    }
    if (r.violation.empty() && !p.violation.empty() && p.verdict != hm::Verdict::Pass) {
      r.violation = p.claim + " " + p.parameters.dump() + ": " + p.violation;
      r.witness_point = p.witness_point;
    }
    r.verdict = hm::combine(r.verdict, p.verdict);
  }
  r.details["cases"] = cases;
  return r;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

hm::Report run_claim(const VerifyOptions& o) {
  const auto& claim = o.claim;
  std::vector<hm::Report> parts;
  if (claim == "thm12") {
    const std::size_t depth = o.depth.value_or(12);
    for (const double c : or_default(o.c, {0.2})) {
      parts.push_back(hm::verify_derivative_bound(c, hm::sample_inverse_iteration(c, depth), o.tol.value_or(1e-9)));
    }
  } else if (claim == "thm13") {
    const auto mus = or_default(o.mu, {4.1, 4.01, 4.001, 4.0001});
    parts.push_back(hm::verify_derivative_growth_grid(mus, o.depth.value_or(14)));
  } else if (claim == "corollary") {
    const double tol = o.tol.value_or(0.01);
    for (const double c : or_default(o.c, {0.0})) {
      parts.push_back(
          hm::verify_parabolic_distance(c, o.depth.value_or(16), tol, o.witness_tol.value_or(2.0 * tol)));
    }
  } else if (claim == "holder14") {
    const auto cs = or_default(o.c, {0.0, 0.1, 0.2, 0.24});
    parts.push_back(hm::verify_holder_words(o.word_length, cs, o.tol.value_or(1e-9)));
  } else if (claim == "prop_delta") {
    const double tol = o.tol.value_or(1e-9);
    if (!o.z.empty()) {
      if (o.mu.size() != 1 || !o.delta) {
        throw hm::Error(hm::ErrorCode::InvalidArgument, "prop_delta with --z needs one --mu and --delta");
      }
      for (const double z : o.z) {
        parts.push_back(hm::verify_bounded_orbit_prop(o.mu.front(), z, *o.delta, tol));
      }
    } else {
      // Fixed points 1 - 1/mu and the period-2 cycle of f_4, (5 -+ sqrt 5)/8.
      for (const double mu : or_default(o.mu, {4.0, 4.5})) {
        const double z = 1.0 - 1.0 / mu;
        parts.push_back(hm::verify_bounded_orbit_prop(mu, z, o.delta.value_or(1.0 - z), tol));
      }
      const double s5 = std::sqrt(5.0);
      const double delta2 = o.delta.value_or((3.0 - s5) / 8.0);
      parts.push_back(hm::verify_bounded_orbit_prop(4.0, (5.0 - s5) / 8.0, delta2, tol));
      parts.push_back(hm::verify_bounded_orbit_prop(4.0, (5.0 + s5) / 8.0, delta2, tol));
    }
  } else if (claim == "remark22") {
    for (const double mu : or_default(o.mu, {1.5})) {
      parts.push_back(hm::verify_logistic_distance(mu, o.depth.value_or(16), o.tol.value_or(0.01)));
      parts.push_back(hm::verify_transport_bound(mu, o.word_length, 1e-9));
    }
  } else if (claim == "expansion") {
    parts.push_back(hm::verify_expansion(or_default(o.mu, {4.0, 4.1, 4.5}), o.depth.value_or(14)));
  } else if (claim == "koenigs") {
    const auto zs = or_default(o.z, {0.01, 0.05, 0.09});
    for (const double mu : or_default(o.mu, {4.0})) {
      parts.push_back(hm::verify_koenigs(mu, zs, 60, o.tol.value_or(1e-8)));
    }
  } else {  // kneading
    parts.push_back(hm::verify_kneading(o.n));
  }
  return aggregate(claim, parts);
}

int run_verify(const VerifyOptions& o) {
  if (o.tol && !(*o.tol >= 0.0)) throw hm::Error(hm::ErrorCode::InvalidArgument, "--tol must be >= 0");
  const hm::Report r = run_claim(o);
  write_output(o.out, [&](std::ostream& s) { s << hm::to_json(r).dump(2) << '\n'; });
  return hm::exit_code(r.verdict);
}

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string word_string(const hm::Word& w) {
  std::string s;
  for (const auto b : w) s += static_cast<char>('0' + b);
  return s;
}

int run_figure(const FigureOptions& o) {
  std::filesystem::create_directories(o.out);
  const std::filesystem::path dir(o.out);
  if (o.which == "fig1_top") {
    hm::Viewport view{-1.6, 1.6, -1.2, 1.2, 640, 480};
    for (int k = 0; k <= 5; ++k) {
      const double c = k / 20.0;
      const auto cloud = hm::sample_inverse_iteration(c, 14);
      write_output((dir / ("fig1_top_c" + fixed2(c) + ".ppm")).string(),
                   [&](std::ostream& s) { hm::write_cloud_ppm(s, cloud, view); });
    }
  } else if (o.which == "fig1_bottom") {
    const auto words = hm::all_branch_words(6);
    write_output((dir / "fig1_bottom.csv").string(), [&](std::ostream& s) {
      s << "word,c,re,im\n";
      for (const auto& w : words) {
        for (int i = 0; i < 128; ++i) {
          const double c = 0.25 * i / 127.0;
          const auto z = hm::track_prefixed(c, w);
          s << w << ',' << hm::format_number(c) << ',' << hm::format_number(z.real()) << ','
            << hm::format_number(z.imag()) << '\n';
        }
      }
    });
  } else {  // fig2
    constexpr std::size_t kLevel = 8;
    write_output((dir / "fig2.csv").string(), [&](std::ostream& s) {
      s << "mu,word,x\n";
      for (const double mu : {4.0, 4.1, 4.3, 4.6, 5.0}) {
        for (std::size_t code = 0; code < (std::size_t{1} << kLevel); ++code) {
          hm::Word w(kLevel);
          for (std::size_t i = 0; i < kLevel; ++i) w[i] = (code >> (kLevel - 1 - i)) & 1u;
          s << hm::format_number(mu) << ',' << word_string(w) << ','
            << hm::format_number(hm::code_point(mu, w)) << '\n';
        }
      }
    });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holomorphic motion of quadratic and logistic Julia sets"};
  app.require_subcommand(1);

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Sample a Julia set or render it");
  sample->add_option("--family", so.family, "q (z^2 + c) or f (mu z (1 - z))")
      ->check(CLI::IsMember({"q", "f"}));
  sample->add_option("--c", so.c, "quadratic parameter (real part)");
  sample->add_option("--c-im", so.c_im, "quadratic parameter (imaginary part)");
  sample->add_option("--mu", so.mu, "logistic parameter");
  sample->add_option("--depth", so.depth, "inverse-iteration depth")->check(CLI::Range(1, 40));
  sample->add_option("--format", so.format, "csv, json, ppm or svg")
      ->check(CLI::IsMember({"csv", "json", "ppm", "svg"}));
  sample->add_option("--out", so.out, "output file (default stdout)");
  sample->add_option("--view", so.view, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
  sample->add_option("--px", so.px, "W,H")->delimiter(',')->expected(2);
  sample->add_option("--max-iter", so.max_iter, "escape-time iterations for --escape");
  sample->add_flag("--escape", so.escape, "ppm: escape-time membership raster instead of the cloud");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check one claim and print a JSON report");
  verify->add_option("claim", vo.claim)
      ->required()
      ->check(CLI::IsMember({"thm12", "thm13", "corollary", "holder14", "prop_delta", "remark22",
                             "expansion", "koenigs", "kneading"}));
  verify->add_option("--c", vo.c, "quadratic parameter(s)")->delimiter(',');
  verify->add_option("--mu", vo.mu, "logistic parameter(s)")->delimiter(',');
  verify->add_option("--z", vo.z, "point(s)")->delimiter(',');
  verify->add_option("--depth", vo.depth, "sample depth")->check(CLI::Range(1, 40));
  verify->add_option("--tol", vo.tol, "tolerance");
  verify->add_option("--witness-tol", vo.witness_tol, "corollary: witness tolerance (default 2 tol)");
  verify->add_option("--delta", vo.delta, "prop_delta: band width");
  verify->add_option("--n", vo.n, "kneading: number of symbols");
  verify->add_option("--word-length", vo.word_length, "longest branch word")->check(CLI::Range(0, 16));
  verify->add_option("--out", vo.out, "report file (default stdout)");

  FigureOptions fo;
  auto* figure = app.add_subcommand("figure", "Write figure data");
  figure->add_option("which", fo.which)
      ->required()
      ->check(CLI::IsMember({"fig1_top", "fig1_bottom", "fig2"}));
  figure->add_option("--out", fo.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) return run_sample(so);
    if (*verify) return run_verify(vo);
    return run_figure(fo);
  } catch (const hm::Error& e) {
    std::cerr << "holomotion: " << e.what() << '\n';
    switch (e.code()) {
      case hm::ErrorCode::Io: return kExitIo;
      case hm::ErrorCode::InvalidArgument:
      case hm::ErrorCode::OutOfDomain:
      case hm::ErrorCode::BudgetExceeded: return kExitUsage;
      default: return 1;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "holomotion: " << e.what() << '\n';
    return kExitIo;
  }
}
