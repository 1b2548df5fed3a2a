#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP) plus
// elements of a real quadratic field Q(sqrt(D)).

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace asymvol {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<long long>;

inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }
inline RatVec to_rat(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(to_rat(x));
  return out;
}

/// Builds num/den in lowest terms. Throws InvalidScalar on a zero denominator.
Rat make_rat(const Int& num, const Int& den = 1);

/// Parses "p", "-p", "p/q" (whitespace tolerant). Throws Parse on failure.
Rat parse_rat(std::string_view text);

/// "p/q" with q > 1, or "p" when the value is an integer.
std::string format_rat(const Rat& value);

Int floor_rat(const Rat& value);
Int ceil_rat(const Rat& value);
bool is_integer(const Rat& value);
Rat pow_rat(const Rat& base, unsigned exponent);

/// Exact d-th root of a nonnegative rational when it exists.
bool exact_root(const Rat& value, unsigned degree, Rat& root);

/// Splits n > 0 as square^2 * core with core square-free.
void square_free_split(const Int& n, Int& square_root_part, Int& core);

/// a + b*sqrt(D) with D a positive square-free integer. Always stored in
/// canonical form: when b == 0 the discriminant is 1.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rat& rational);  // NOLINT(google-explicit-constructor)
  QuadExt(long value) : QuadExt(Rat(value)) {}  // NOLINT
  QuadExt(const Rat& rational, const Rat& radical, const Int& discriminant);

  const Rat& rational_part() const { return rational_; }
  const Rat& radical_coefficient() const { return radical_; }
  const Int& discriminant() const { return discriminant_; }
  bool is_rational() const { return radical_ == 0; }

  /// Exact sign in {-1, 0, 1}, computed with integer arithmetic only.
  int sign() const;

  QuadExt conjugate() const;
  /// Field norm a^2 - b^2 D.
  Rat norm() const;

  QuadExt operator-() const;
  QuadExt& operator+=(const QuadExt& other);
  QuadExt& operator-=(const QuadExt& other);
  QuadExt& operator*=(const QuadExt& other);
  QuadExt& operator/=(const QuadExt& other);

  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }

  friend bool operator==(const QuadExt& a, const QuadExt& b);
  friend std::strong_ordering operator<=>(const QuadExt& a, const QuadExt& b);

  /// "a", "b*sqrt(D)", "a + b*sqrt(D)" or "a - |b|*sqrt(D)".
  std::string to_string() const;
  static QuadExt parse(std::string_view text);

  double to_double() const;
  /// Decimal rendering with `digits` significant digits (round to nearest).
  std::string to_decimal(int digits = 17) const;

 private:
  Rat rational_{0};
  Rat radical_{0};
  Int discriminant_{1};
};

/// Normalizes (rational, radical, discriminant) to square-free form.
/// Throws InvalidScalar for a non-positive discriminant.
QuadExt canonicalize(const Rat& rational, const Rat& radical,
                     const Int& discriminant);

/// Exact total order; throws InvalidComparison when both values carry a
/// radical over different fields.
std::strong_ordering quad_compare(const QuadExt& a, const QuadExt& b);

/// Roots of alpha t^2 + beta t + gamma = 0 (alpha may vanish). Sorted
/// ascending; empty when there are no real roots.
std::vector<QuadExt> quadratic_roots(const Rat& alpha, const Rat& beta,
                                     const Rat& gamma);

std::ostream& operator<<(std::ostream& os, const QuadExt& value);

}  // namespace asymvol
