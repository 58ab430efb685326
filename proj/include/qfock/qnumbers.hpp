// q-integers, q-factorials and the analytic constants w(q), C_q.

#pragma once

#include "qfock/scalar.hpp"

namespace qfock {

/// [n]_q = 1 + q + ... + q^{n-1}, built as a sum (never divides by 1-q).
/// `q` defaults to the formal variable.
Scalar q_int(int n, const Scalar& q = Scalar::q());

/// [n]_q! = [1]_q [2]_q ... [n]_q.
Scalar q_factorial(int n, const Scalar& q = Scalar::q());

/// [n]_q [n-1]_q ... [n-k+1]_q  (= [n]_q! / [n-k]_q!). Rejects k > n.
Scalar q_falling(int n, int k, const Scalar& q = Scalar::q());

/// Gaussian binomial [n choose k]_q as a polynomial, via the q-Pascal rule.
Scalar q_binom(int n, int k, const Scalar& q = Scalar::q());

/// Floating q-integer and q-factorial, used by the numeric checks.
double q_int_f(int n, double q);
double q_factorial_f(int n, double q);

struct AnalyticConstants {
  double w;  ///< w(q) with w^2 = (1-q^2)^{-1} prod (1-|q|^k)/(1+|q|^k)
  double C;  ///< C_{|q|} with C^{-1} = prod (1-|q|^m)
};

/// Both products depend on |q0| only. Throws std::domain_error for |q0| >= 1.
AnalyticConstants analytic_constants(double q0);

}  // namespace qfock
