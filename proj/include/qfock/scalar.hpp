// Exact scalars for q-deformed computations.
//
// A Scalar lives in one of three modes:
//   Rational  - a plain rational number (q has already been substituted),
//   Poly      - a polynomial in the formal variable q over Q,
//   RatFunc   - a ratio of two such polynomials in lowest terms.
// Mixed-mode arithmetic promotes to the larger mode; division of two
// polynomials always promotes to RatFunc.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qfock {

using Rational = mpq_class;

/// Canonicalized num/den.
Rational frac(long num, long den);

/// Parses "p/q", an integer, or a finite decimal literal ("0.25", "-1e-3")
/// into an exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Correctly rounded (to nearest, ties to even) conversion to double.
double to_nearest_double(const Rational& r);

std::string to_string(const Rational& r);

/// Dense univariate polynomial in q with rational coefficients.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(Rational constant);
  explicit QPoly(std::vector<Rational> coefficients);

  static QPoly variable();
  static QPoly monomial(Rational coefficient, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Rational coefficient(int k) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& at) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const Rational& c);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator-(QPoly a) {
    a *= Rational(-1);
    return a;
  }
  friend bool operator==(const QPoly& a, const QPoly& b) = default;

  /// Euclidean division; throws std::domain_error on a zero divisor.
  static void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder);
  /// Monic gcd (zero when both inputs are zero).
  static QPoly gcd(QPoly a, QPoly b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Ratio of polynomials, canonical: gcd(num, den) = 1 and den monic.
class QRatFunc {
 public:
  QRatFunc() : num_(), den_(Rational(1)) {}
  explicit QRatFunc(QPoly numerator) : num_(std::move(numerator)), den_(Rational(1)) {}
  QRatFunc(QPoly numerator, QPoly denominator);

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws std::domain_error when the denominator vanishes at the point.
  Rational evaluate(const Rational& at) const;

  QRatFunc& operator+=(const QRatFunc& o);
  QRatFunc& operator-=(const QRatFunc& o);
  QRatFunc& operator*=(const QRatFunc& o);
  QRatFunc& operator/=(const QRatFunc& o);

  friend bool operator==(const QRatFunc& a, const QRatFunc& b) = default;

  std::string to_string() const;

 private:
  void normalize();
  QPoly num_;
  QPoly den_;
};

class Scalar {
 public:
  enum class Mode : std::uint8_t { Rational = 0, Poly = 1, RatFunc = 2 };

  Scalar() : value_(qfock::Rational(0)) {}
  Scalar(long v) : value_(qfock::Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(qfock::Rational(v)) {}   // NOLINT(google-explicit-constructor)
  Scalar(qfock::Rational v) : value_(std::move(v)) {}  // NOLINT
  Scalar(QPoly p) : value_(std::move(p)) {}            // NOLINT
  Scalar(QRatFunc f) : value_(std::move(f)) {}         // NOLINT

  /// The formal variable q (Poly mode).
  static Scalar q();
  static Scalar fraction(long num, long den);

  Mode mode() const { return static_cast<Mode>(value_.index()); }
  bool is_zero() const;
  bool is_one() const;

  const qfock::Rational& as_rational() const;  // Rational mode only
  QPoly as_poly() const;                        // Rational or Poly mode
  QRatFunc as_ratfunc() const;

  /// Exact value at q = at (identity for Rational mode).
  qfock::Rational evaluate(const qfock::Rational& at) const;
  /// Exact evaluation at q0 followed by a single rounding to double.
  double float_eval(double q0) const;
  /// Largest absolute coefficient (numerator coefficients for RatFunc).
  qfock::Rational magnitude() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error on division by an exact zero.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(0) - a; }

  /// Mode-independent mathematical equality.
  friend bool operator==(const Scalar& a, const Scalar& b);

  Scalar pow(int exponent) const;

  std::string to_string() const;

 private:
  using Value = std::variant<qfock::Rational, QPoly, QRatFunc>;
  Value value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const QPoly& p);

}  // namespace qfock
