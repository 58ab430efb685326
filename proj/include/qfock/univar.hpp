// One-variable structure: q-Hermite and Chebyshev polynomials, the
// rescaling identity between them, Chebyshev traces and the series
// identities behind the one-variable conjugate variable.

#pragma once

#include <vector>

#include "qfock/scalar.hpp"

namespace qfock {

/// Dense polynomial in x with Scalar coefficients.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<Scalar> coefficients);
  static Poly1 x();
  static Poly1 constant(const Scalar& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Scalar coefficient(int k) const;
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  /// Coefficients evaluated at q = q0 (exact, then rounded once).
  std::vector<double> evaluate_coefficients(double q0) const;

  Poly1& operator+=(const Poly1& o);
  Poly1& operator-=(const Poly1& o);
  Poly1& operator*=(const Scalar& c);
  Poly1 times_x() const;

  friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
  friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
  friend Poly1 operator*(Poly1 a, const Scalar& c) { return a *= c; }
  friend bool operator==(const Poly1& a, const Poly1& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

enum class ChebKind { U, C };

/// H_0 = 1, H_1 = x, H_{n+1} = x H_n - [n]_q H_{n-1}.
Poly1 hermite(int n, const Scalar& q = Scalar::q());
/// U_{n+1} = x U_n - U_{n-1}; C_1 = U_1 and C_n = U_n - U_{n-2}. C_0 is rejected.
Poly1 cheb(ChebKind kind, int n);

/// Largest coefficient of U_n(x s) - sum_k (-1)^k q^{k(k+1)/2} binom(n-k,k)_q
/// s^{n-2k} H_{n-2k}(x|q) with s = sqrt(1-q0).
double rescale_identity_residual(int n, double q0);

/// tau(U_{2n}(A sqrt(1-q))) computed from the one-variable vacuum moments.
/// Only integer powers of (1-q) occur, so the result is exact.
Scalar trace_cheb(int n, const Scalar& q = Scalar::q());
/// tau(U_{2n-1}(A sqrt(1-q))) / sqrt(1-q), which is a polynomial in q.
Scalar trace_cheb_odd(int n, const Scalar& q = Scalar::q());

struct SeriesCheck {
  double value = 0;       ///< truncated sum
  double target = 0;      ///< closed form
  double residual = 0;    ///< |value - target|
  double tail_bound = 0;  ///< bound on the dropped terms
  double rounding_bound = 0;  ///< a priori bound on the floating error of value and target
};

/// (1-q)^{m+1} sum_{n=m}^{N} q^{(n+1)(n-m)} (1+q^{n+1}) binom(n+m+1, n-m)_q
/// against [m]_q!/[2m+1]_q!.
SeriesCheck q_identity_residual(int m, double q0, int N);

/// sqrt(1-q0) sum_{n<=M} (-1)^n q0^{n(n+1)/2} C_{2n+1}(x sqrt(1-q0)) as
/// monomial coefficients in x.
std::vector<double> conjugate_cheb_series(int M, double q0);

/// Fock coefficients (levels 0..max_level) of the Chebyshev conjugate series
/// applied to the vacuum, with the series continued until its terms fall
/// below 1e-17 at those levels. Uses the three-term recurrence on vectors.
struct ChebVector {
  std::vector<double> coefficients;
  int terms = 0;
  double tail_estimate = 0;
};
ChebVector conjugate_cheb_vector(int max_level, double q0);

/// Floating coefficients of the one-variable conjugate closed form at levels
/// 0..max_level.
std::vector<double> conjugate_closed_form_coefficients(int max_level, double q0);

}  // namespace qfock
