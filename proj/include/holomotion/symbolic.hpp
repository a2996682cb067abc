#pragma once

// Symbolic dynamics: exact rational angles under doubling, binary sequences in
// eventually-periodic form, kneading sequences of angles, itineraries of the
// logistic critical orbit, the equivalence ~e on the one-sided shift, and the
// coding of real Cantor Julia sets by inverse branches.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "holomotion/report.hpp"

namespace holomotion {

// theta = num/den in [0, 1), reduced.
struct Angle {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Reduces p/q modulo 1. Throws InvalidArgument for q <= 0 or q >= 2^62.
  static Angle make(std::int64_t p, std::int64_t q);

  bool operator==(const Angle&) const = default;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

/// 2 theta mod 1, exactly.
Angle double_angle(Angle theta);

using Word = std::vector<std::uint8_t>;

/// A finite word, or an infinite sequence head . period . period . ...
/// Infinite sequences are kept canonical (shortest period, then shortest
/// head), so equality of representations is equality of sequences.
class SymbolSequence {
 public:
  SymbolSequence() = default;

  static SymbolSequence finite(Word symbols);
  static SymbolSequence eventually_periodic(Word head, Word period);

  bool is_finite() const noexcept { return period_.empty(); }
  const Word& head() const noexcept { return head_; }
  const Word& period() const noexcept { return period_; }

  /// Symbol at position i. Throws OutOfDomain past the end of a finite word.
  std::uint8_t at(std::size_t i) const;
  /// First n symbols as a word (n may not exceed a finite word's length).
  Word prefix(std::size_t n) const;
  /// Left shift by k.
  SymbolSequence shift(std::size_t k = 1) const;

  /// "0,1,1" for finite words, "0,(1)" with the period in parentheses.
  std::string to_string() const;

  bool operator==(const SymbolSequence&) const = default;

 private:
  Word head_;
  Word period_;
};

/// First n symbols of the kneading sequence of theta: 0 while T^k(theta)
/// lies on the open semicircle between theta/2 and (theta+1)/2 that contains
/// theta, 1 on the other one. Throws OrbitHitsBoundary(k) when T^k(theta)
/// is one of the two dividing points.
SymbolSequence kneading_E(Angle theta, std::size_t n);

/// The whole kneading sequence, exact and eventually periodic.
SymbolSequence kneading_sequence(Angle theta);

/// First n symbols of the itinerary of f_mu^(1+k)(1/2): 1 on [0, 1/2],
/// 0 on [1/2, 1]. Only mu = 4 has its critical point in the Julia set;
/// other mu throw CriticalNotInJulia.
SymbolSequence itinerary_I(double mu, std::size_t n);

/// a ~e s: a == s, or for some k >= 0 they agree off position k and both
/// shift by k + 1 onto e. All three must be infinite; e must be aperiodic
/// (no shift n >= 1 fixes it) or PeriodicKneading is thrown.
bool equiv_e(const SymbolSequence& a, const SymbolSequence& s, const SymbolSequence& e);

/// g_{w_0} o g_{w_1} o ... o g_{w_{n-1}} (seed) for the real inverse branches
/// of f_mu: symbol 1 takes the left branch into [0, 1/2], symbol 0 the
/// right branch into [1/2, 1].
double pullback_real(double mu, const Word& word, double seed);

/// The point of the Cantor Julia set coded by `word`, pulled back from the
/// fixed point 1 - 1/mu. Its itinerary starts with `word`.
double code_point(double mu, const Word& word);

/// Parses "0110" or "0,1,1,0".
Word parse_word(const std::string& text);

/// E(1/2) against I(f_4) for n symbols.
Report verify_kneading(std::size_t n);

}  // namespace holomotion
