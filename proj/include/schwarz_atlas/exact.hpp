#pragma once

/**
 * Exact rational arithmetic and the unit-fraction predicates that every
 * Schwarz condition is phrased in.
 *
 * Rationals are always kept in lowest terms with a positive denominator;
 * zero is represented uniquely as 0/1. Numerator and denominator are
 * arbitrary precision, so no predicate here can overflow.
 */

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace schwarz_atlas {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Accepts "p/q" or a plain integer "p". Decimal notation is rejected so
  /// that condition checks stay exact end to end.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }

  /// Canonical "p/q" (or "p" when q = 1) serialization.
  std::string str() const;
  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
/// Largest integer not exceeding r.
BigInt floor(const Rational& r);

/// x = 1/n for some integer n >= 1.
bool is_unit_fraction(const Rational& x);

/// The "x in 1/N if x > 0" rule: vacuously true for x <= 0.
bool conditional_unit_fraction(const Rational& x);

/// x = 2/n for some integer n >= 1.
bool is_two_over_natural(const Rational& x);

/// Mirror parameter k solving (1 - 2k)/2 = 1/p. Requires p >= 3.
Rational k_from_p(long long p);

/// Exponent differences (kappa, lambda, mu) at 0, 1 and infinity.
struct ExponentTriple {
  Rational kappa;
  Rational lambda;
  Rational mu;

  /// 0 <= kappa, lambda, mu and every pairwise sum <= 1.
  bool is_reduced() const;
  bool operator==(const ExponentTriple&) const = default;
};

/// Raw exponent differences (1 - gamma, gamma - alpha - beta, beta - alpha).
ExponentTriple exponent_differences(const Rational& alpha, const Rational& beta,
                                    const Rational& gamma);

/// How a reduced triple was reached from the raw differences: each raw
/// difference is multiplied by its sign, then alpha, beta, gamma are shifted
/// by the integers in `parameter_shift`.
struct ReductionWitness {
  std::array<int, 3> signs{1, 1, 1};
  std::array<long long, 3> parameter_shift{0, 0, 0};  // added to (alpha, beta, gamma)
};

struct ReducedParameters {
  ExponentTriple raw;
  ExponentTriple reduced;
  ReductionWitness witness;
};

/// Applies a witness to raw exponent differences.
ExponentTriple apply_witness(const ExponentTriple& raw, const ReductionWitness& w);

/// Bounded exhaustive search for a reduced representative. Shifts of
/// (alpha, beta, gamma) range over [-bound, bound]^3, tried in order of
/// increasing L1 norm, each with all eight sign patterns.
/// Throws ValidationError when nothing within the bound is reduced.
ReducedParameters reduce_parameters(const Rational& alpha, const Rational& beta,
                                    const Rational& gamma, int bound = 4);

}  // namespace schwarz_atlas
