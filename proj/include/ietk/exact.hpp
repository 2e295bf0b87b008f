#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ietk {

using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a comparison cannot be decided within the refinement budget,
// or when the enclosures of the symbols involved cannot be refined further.
// Never silently resolved: callers either propagate or surface it as a
// partial/undecided verdict.
struct UndecidedComparison : Error {
  using Error::Error;
};

enum class Ordering { LT, EQ, GT };

/// Parse "p/q" or "p" (arbitrary precision). Throws Error on malformed input
/// or zero denominator.
Rational parse_rational(const std::string& s);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_str(const Rational& q);

/// Fixed-point decimal rendering, round half away from zero.
std::string decimal_str(const Rational& q, int digits);

std::size_t hash_rational(const Rational& q);
std::size_t hash_combine(std::size_t a, std::size_t b);

/// A real symbol known only through a shrinking sequence of rational
/// enclosures.  Level 0 is the declared interval [lo, hi]; level r >= 1 is
/// the bracket spanned by the (r-1)-th and r-th convergent of the continued
/// fraction, intersected with all previous levels so the sequence nests.
struct SymbolSpec {
  std::string name;
  Rational lo, hi;
  std::vector<long> cf_terms;  // continued fraction [a0; a1, a2, ...]
};

class SymbolBasis {
 public:
  static std::shared_ptr<const SymbolBasis> make(std::vector<SymbolSpec> symbols,
                                                 bool independent = true,
                                                 int refine_budget = 64);

  std::size_t size() const { return symbols_.size(); }
  const SymbolSpec& symbol(std::size_t i) const { return symbols_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool independent() const { return independent_; }
  int refine_budget() const { return budget_; }

  /// Enclosure of symbol i at refinement level <= max_level(i).
  std::pair<Rational, Rational> enclosure(std::size_t i, int level) const;
  /// Deepest available level for symbol i (0 when no CF terms usable).
  int max_level(std::size_t i) const;

 private:
  SymbolBasis() = default;
  std::vector<SymbolSpec> symbols_;
  bool independent_ = true;
  int budget_ = 64;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<std::pair<Rational, Rational>>> cache_;
};

using BasisPtr = std::shared_ptr<const SymbolBasis>;

/// Element of the Q-vector space spanned by 1 and the basis symbols:
///   unit + sum_i coeff_i * sym_i.
/// Values are immutable; arithmetic is exact; mixing bases is an error.
class ExactReal {
 public:
  ExactReal() = default;  // zero over the null basis; usable only via rational()

  static ExactReal rational(Rational q, BasisPtr basis);
  static ExactReal rational(long p, long q, BasisPtr basis);
  static ExactReal symbol(std::size_t index, BasisPtr basis);
  static ExactReal symbol(const std::string& name, BasisPtr basis);
  static ExactReal from_coeffs(Rational unit,
                               std::vector<std::pair<std::size_t, Rational>> coeffs,
                               BasisPtr basis);

  const Rational& unit() const { return unit_; }
  /// Sorted by symbol index, zero coefficients dropped.
  const std::vector<std::pair<std::size_t, Rational>>& sym_coeffs() const { return coeffs_; }
  const BasisPtr& basis() const { return basis_; }
  bool is_rational() const { return coeffs_.empty(); }
  /// Throws if symbolic.
  const Rational& to_rational() const;

  ExactReal operator+(const ExactReal& o) const;
  ExactReal operator-(const ExactReal& o) const;
  ExactReal operator-() const;
  ExactReal scaled(const Rational& q) const;

  /// Coefficient-wise equality; equals numeric equality when the basis is
  /// independent (which SymbolBasis asserts).
  bool operator==(const ExactReal& o) const;
  bool operator!=(const ExactReal& o) const { return !(*this == o); }
  bool is_zero() const { return coeffs_.empty() && unit_ == 0; }

  /// Rational interval certainly containing the value, at refinement `level`.
  std::pair<Rational, Rational> enclosure(int level) const;

  std::size_t hash() const;
  std::string str() const;
  /// Decimal rendering with `digits` fractional digits; refines symbol
  /// enclosures until the value is pinned to less than half an ulp.
  std::string decimal(int digits = 12) const;

 private:
  BasisPtr basis_;
  Rational unit_{0};
  std::vector<std::pair<std::size_t, Rational>> coeffs_;
};

/// Decidable comparison by enclosure refinement.  Throws UndecidedComparison
/// after the basis budget is spent (or refiners are exhausted) without
/// separating the values.
Ordering cmp(const ExactReal& a, const ExactReal& b);
int sign(const ExactReal& a);  // -1 / 0 / +1

inline bool operator<(const ExactReal& a, const ExactReal& b) { return cmp(a, b) == Ordering::LT; }
inline bool operator>(const ExactReal& a, const ExactReal& b) { return cmp(a, b) == Ordering::GT; }
inline bool operator<=(const ExactReal& a, const ExactReal& b) { return cmp(a, b) != Ordering::GT; }
inline bool operator>=(const ExactReal& a, const ExactReal& b) { return cmp(a, b) != Ordering::LT; }

/// Representative of x modulo len*Z in [0, len).  Requires len > 0.
ExactReal mod_interval(const ExactReal& x, const ExactReal& len);
/// The integer n with x - n*len in [0, len).
long mod_interval_quotient(const ExactReal& x, const ExactReal& len);

/// Exact rational coordinates of x in the Q-span of gens, if any: returns q
/// with x == sum q_i * gens_i (free coordinates set to 0), or nullopt when x
/// lies outside the span.  Solved by Gaussian elimination over Q on the
/// coefficient vectors, so the answer is exact and independence of the basis
/// symbols is exactly what makes it sound.
std::optional<std::vector<Rational>> in_q_span(const ExactReal& x,
                                               const std::vector<ExactReal>& gens);

}  // namespace ietk
