#include "schwarz_atlas/exact.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "schwarz_atlas/errors.hpp"

namespace schwarz_atlas {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  // cpp_int's string constructor rejects a leading '+'.
  std::string digits(text.substr(start));
  out = BigInt(digits);
  if (text[0] == '-') out = -out;
  return true;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ValidationError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g < 0) g = -g;
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);

  BigInt num;
  BigInt den{1};
  auto slash = trimmed.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_integer(trimmed, num))
      throw ValidationError("malformed rational '" + std::string(text) + "'");
  } else {
    auto num_text = trimmed.substr(0, slash);
    auto den_text = trimmed.substr(slash + 1);
    if (!parse_integer(num_text, num) || !parse_integer(den_text, den))
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    if (den.is_zero())
      throw ValidationError("rational with zero denominator '" + std::string(text) + "'");
  }
  return Rational(std::move(num), std::move(den));
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
  using boost::multiprecision::cpp_bin_float_double_extended;
  cpp_bin_float_double_extended n(num_);
  cpp_bin_float_double_extended d(den_);
  return static_cast<double>(n / d);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw ValidationError("division by zero rational");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

BigInt floor(const Rational& r) {
  BigInt q = r.num() / r.den();  // truncates toward zero
  if (r.sign() < 0 && q * r.den() != r.num()) q -= 1;
  return q;
}

bool is_unit_fraction(const Rational& x) { return x.sign() > 0 && x.num() == 1; }

bool conditional_unit_fraction(const Rational& x) {
  if (x.sign() <= 0) return true;
  return is_unit_fraction(x);
}

bool is_two_over_natural(const Rational& x) {
  if (x.sign() <= 0) return false;
  // x = 2/n  <=>  2/x = n is a positive integer.
  Rational n = Rational(2) / x;
  return n.is_integer();
}

Rational k_from_p(long long p) {
  if (p < 3) throw ValidationError("p must be at least 3, got " + std::to_string(p));
  return Rational(p - 2, 2 * p);
}

bool ExponentTriple::is_reduced() const {
  const Rational one(1);
  return kappa.sign() >= 0 && lambda.sign() >= 0 && mu.sign() >= 0 &&
         kappa + lambda <= one && kappa + mu <= one && lambda + mu <= one;
}

ExponentTriple exponent_differences(const Rational& alpha, const Rational& beta,
                                    const Rational& gamma) {
  return {Rational(1) - gamma, gamma - (alpha + beta), beta - alpha};
}

ExponentTriple apply_witness(const ExponentTriple& raw, const ReductionWitness& w) {
  const auto [a, b, c] = w.parameter_shift;
  // Shifting (alpha, beta, gamma) by (a, b, c) moves the differences by
  // (-c, c - a - b, b - a).
  return {raw.kappa * Rational(w.signs[0]) - Rational(c),
          raw.lambda * Rational(w.signs[1]) + Rational(c - a - b),
          raw.mu * Rational(w.signs[2]) + Rational(b - a)};
}

ReducedParameters reduce_parameters(const Rational& alpha, const Rational& beta,
                                    const Rational& gamma, int bound) {
  if (bound < 0) throw ValidationError("reduction search bound must be nonnegative");
  ReducedParameters out;
  out.raw = exponent_differences(alpha, beta, gamma);

  std::vector<std::array<long long, 3>> shifts;
  for (long long a = -bound; a <= bound; ++a)
    for (long long b = -bound; b <= bound; ++b)
      for (long long c = -bound; c <= bound; ++c) shifts.push_back({a, b, c});
  std::stable_sort(shifts.begin(), shifts.end(), [](const auto& x, const auto& y) {
    auto l1 = [](const auto& v) { return std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]); };
    return l1(x) < l1(y);
  });

  static constexpr std::array<std::array<int, 3>, 8> kSignPatterns{{
      {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1},
      {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1},
  }};

  for (const auto& shift : shifts) {
    for (const auto& signs : kSignPatterns) {
      ReductionWitness w{signs, shift};
      ExponentTriple candidate = apply_witness(out.raw, w);
      if (candidate.is_reduced()) {
        out.reduced = std::move(candidate);
        out.witness = w;
        return out;
      }
    }
  }
  throw ValidationError("no reduced representative within shift bound " +
                        std::to_string(bound));
}

}  // namespace schwarz_atlas
