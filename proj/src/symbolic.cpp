#include "holomotion/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "holomotion/error.hpp"
#include "holomotion/julia.hpp"

namespace holomotion {

namespace {

constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 62;
constexpr std::size_t kMaxOrbit = 1u << 22;

// Sign of a/b - c/d for positive b, d.
int compare(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const __int128 lhs = static_cast<__int128>(a) * d;
  const __int128 rhs = static_cast<__int128>(c) * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Symbol of x relative to theta's semicircles, or -1 on a dividing point.
int kneading_symbol(Angle theta, Angle x) {
  // theta/2 = num/(2 den) and (theta+1)/2 = (num+den)/(2 den) split [0,1)
  // into an inner arc, which contains theta when theta != 0, and the rest.
  const std::int64_t d2 = 2 * theta.den;
  const int lo = compare(x.num, x.den, theta.num, d2);
  const int hi = compare(x.num, x.den, theta.num + theta.den, d2);
  if (lo == 0 || hi == 0) return -1;
  return (lo > 0 && hi < 0) ? 0 : 1;
}

Word minimal_period(const Word& p) {
  const std::size_t n = p.size();
  for (std::size_t len = 1; len <= n; ++len) {
    if (n % len) continue;
    bool ok = true;
    for (std::size_t i = len; i < n && ok; ++i) ok = p[i] == p[i - len];
    if (ok) return Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return p;
}

void check_binary(const Word& w) {
  for (auto s : w) {
    if (s > 1) throw Error(ErrorCode::InvalidArgument, "symbols must be 0 or 1");
  }
}

}  // namespace

Angle Angle::make(std::int64_t p, std::int64_t q) {
  if (q <= 0 || q >= kMaxDenominator) {
    throw Error(ErrorCode::InvalidArgument, "angle denominator must be in (0, 2^62)");
  }
  std::int64_t r = p % q;
  if (r < 0) r += q;
  const std::int64_t g = std::gcd(r, q);
  return {r / g, q / g};
}

Angle double_angle(Angle theta) {
  // 2 num < 2 den < 2^63, no overflow.
  return Angle::make(2 * theta.num, theta.den);
}

SymbolSequence SymbolSequence::finite(Word symbols) {
  check_binary(symbols);
  SymbolSequence s;
  s.head_ = std::move(symbols);
  return s;
}

SymbolSequence SymbolSequence::eventually_periodic(Word head, Word period) {
  if (period.empty()) {
    throw Error(ErrorCode::InvalidArgument, "an infinite sequence needs a non-empty period");
  }
  check_binary(head);
  check_binary(period);
  period = minimal_period(period);
  while (!head.empty() && head.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    head.pop_back();
  }
  SymbolSequence s;
  s.head_ = std::move(head);
  s.period_ = std::move(period);
  return s;
}

std::uint8_t SymbolSequence::at(std::size_t i) const {
  if (i < head_.size()) return head_[i];
  if (period_.empty()) throw Error(ErrorCode::OutOfDomain, "index past the end of a finite word", i);
  return period_[(i - head_.size()) % period_.size()];
}

Word SymbolSequence::prefix(std::size_t n) const {
  if (is_finite() && n > head_.size()) {
    throw Error(ErrorCode::OutOfDomain, "prefix longer than the finite word", n);
  }
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

SymbolSequence SymbolSequence::shift(std::size_t k) const {
  SymbolSequence s;
  if (k <= head_.size()) {
    s.head_.assign(head_.begin() + static_cast<std::ptrdiff_t>(k), head_.end());
    s.period_ = period_;
    return s;
  }
  if (period_.empty()) return s;
  s.period_ = period_;
  const std::size_t r = (k - head_.size()) % period_.size();
  std::rotate(s.period_.begin(), s.period_.begin() + static_cast<std::ptrdiff_t>(r),
              s.period_.end());
  return s;
}

std::string SymbolSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < head_.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + head_[i]);
  }
  if (!period_.empty()) {
    if (!head_.empty()) out += ',';
    out += '(';
    for (std::size_t i = 0; i < period_.size(); ++i) {
      if (i) out += ',';
      out += static_cast<char>('0' + period_[i]);
    }
    out += ')';
  }
  return out;
}

SymbolSequence kneading_E(Angle theta, std::size_t n) {
  Word w;
  w.reserve(n);
  Angle x = theta;
  for (std::size_t k = 0; k < n; ++k) {
    const int s = kneading_symbol(theta, x);
    if (s < 0) {
      throw Error(ErrorCode::OrbitHitsBoundary,
                  "T^" + std::to_string(k) + "(theta) is a dividing point", k);
    }
    w.push_back(static_cast<std::uint8_t>(s));
    x = double_angle(x);
  }
  return SymbolSequence::finite(std::move(w));
}

SymbolSequence kneading_sequence(Angle theta) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  Word w;
  Angle x = theta;
  for (std::size_t k = 0; k < kMaxOrbit; ++k) {
    const auto key = std::make_pair(x.num, x.den);
    if (auto it = seen.find(key); it != seen.end()) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      return SymbolSequence::eventually_periodic(Word(w.begin(), w.begin() + start),
                                                 Word(w.begin() + start, w.end()));
    }
    seen.emplace(key, k);
    const int s = kneading_symbol(theta, x);
    if (s < 0) {
      throw Error(ErrorCode::OrbitHitsBoundary,
                  "T^" + std::to_string(k) + "(theta) is a dividing point", k);
    }
    w.push_back(static_cast<std::uint8_t>(s));
    x = double_angle(x);
  }
  throw Error(ErrorCode::InvalidArgument, "doubling orbit of theta too long to resolve exactly");
}

SymbolSequence itinerary_I(double mu, std::size_t n) {
  if (mu != 4.0) {
    throw Error(ErrorCode::CriticalNotInJulia,
                "the critical point 1/2 lies in the real Julia set only at mu = 4");
  }
  Word w;
  w.reserve(n);
  double x = apply_f(mu, 0.5).real();
  for (std::size_t k = 0; k < n; ++k) {
    if (x == 0.5) {
      throw Error(ErrorCode::HitsCritical,
                  "f^" + std::to_string(k + 1) + "(1/2) returns to the critical point", k);
    }
    w.push_back(x < 0.5 ? 1 : 0);
    x = apply_f(mu, x).real();
  }
  return SymbolSequence::finite(std::move(w));
}

bool equiv_e(const SymbolSequence& a, const SymbolSequence& s, const SymbolSequence& e) {
  if (a.is_finite() || s.is_finite() || e.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "equivalence is defined on infinite sequences");
  }
  // Canonical form: e is fixed by some shift n >= 1 iff it is purely periodic.
  if (e.head().empty()) {
    throw Error(ErrorCode::PeriodicKneading, "e must be aperiodic");
  }
  if (a == s) return true;
  // sigma^m(a) == e forces m = |head(a)| - |head(e)|, and m = k + 1 >= 1.
  if (a.head().size() <= e.head().size()) return false;
  const std::size_t m = a.head().size() - e.head().size();
  if (!(a.shift(m) == e) || !(s.shift(m) == e)) return false;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (a.at(i) != s.at(i)) return false;
  }
  return true;
}

double pullback_real(double mu, const Word& word, double seed) {
  if (!(mu >= 4.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::OutOfDomain, "real coding needs mu >= 4");
  }
  check_binary(word);
  double z = seed;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const double left = logistic_left_branch(mu, z);
    z = *it ? left : 1.0 - left;
  }
  return z;
}

double code_point(double mu, const Word& word) {
  return pullback_real(mu, word, 1.0 - 1.0 / mu);
}

Word parse_word(const std::string& text) {
  Word w;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch != '0' && ch != '1') {
      throw Error(ErrorCode::InvalidArgument, "binary word may contain only 0 and 1");
    }
    w.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return w;
}

Report verify_kneading(std::size_t n) {
  Report rep;
  rep.claim = "kneading";
  rep.parameters["n"] = n;
  rep.parameters["theta"] = "1/2";
  rep.parameters["mu"] = 4.0;
  const auto e = kneading_E(Angle::make(1, 2), n);
  const auto itin = itinerary_I(4.0, n);
  Word expected(n, 1);
  if (n > 0) expected[0] = 0;
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i) mismatches += e.at(i) != itin.at(i);
  rep.details["E"] = e.to_string();
  rep.details["I"] = itin.to_string();
  rep.details["E_exact"] = kneading_sequence(Angle::make(1, 2)).to_string();
  rep.details["mismatches"] = mismatches;
  rep.max_ratio = static_cast<double>(mismatches);
  const bool ok = mismatches == 0 && e.head() == expected;
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.violation = "E(1/2) != I(f_4) or not of the form 0,1,1,...";
  return rep;
}

}  // namespace holomotion
