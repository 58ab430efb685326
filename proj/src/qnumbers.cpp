#include "qfock/qnumbers.hpp"

#include <cmath>
#include <stdexcept>

namespace qfock {

Scalar q_int(int n, const Scalar& q) {
  if (n < 0) throw std::invalid_argument("q_int: negative argument");
  Scalar sum(0);
  Scalar power(1);
  for (int k = 0; k < n; ++k) {
    sum += power;
    power *= q;
  }
  return sum;
}

Scalar q_factorial(int n, const Scalar& q) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
  Scalar out(1);
  for (int m = 2; m <= n; ++m) out *= q_int(m, q);
  return out;
}

Scalar q_falling(int n, int k, const Scalar& q) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("q_falling: need 0 <= k <= n");
  Scalar out(1);
  for (int m = n - k + 1; m <= n; ++m) out *= q_int(m, q);
  return out;
}

Scalar q_binom(int n, int k, const Scalar& q) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("q_binom: need 0 <= k <= n");
  // [n choose k] = [n-1 choose k-1] + q^k [n-1 choose k]; row by row.
  std::vector<Scalar> row{Scalar(1)};
  for (int m = 1; m <= n; ++m) {
    std::vector<Scalar> next(static_cast<std::size_t>(m) + 1);
    next[0] = Scalar(1);
    next[static_cast<std::size_t>(m)] = Scalar(1);
    Scalar qk = q;
    for (int j = 1; j < m; ++j) {
      next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + qk * row[static_cast<std::size_t>(j)];
      qk *= q;
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

double q_int_f(int n, double q) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += power;
    power *= q;
  }
  return sum;
}

double q_factorial_f(int n, double q) {
  double out = 1.0;
  for (int m = 2; m <= n; ++m) out *= q_int_f(m, q);
  return out;
}

AnalyticConstants analytic_constants(double q0) {
  if (!(std::fabs(q0) < 1.0)) throw std::domain_error("analytic_constants: need |q| < 1");
  const double x = std::fabs(q0);
  if (x == 0.0) return {1.0, 1.0};

  // log of each product, accumulated until the bound on the neglected
  // log-tail drops under 1e-15.
  double log_c_inv = 0.0;   // sum log(1 - x^k)
  double log_ratio = 0.0;   // sum log((1 - x^k) / (1 + x^k))
  double xk = x;
  for (int k = 1; k < 1000000; ++k) {
    log_c_inv += std::log1p(-xk);
    log_ratio += std::log1p(-xk) - std::log1p(xk);
    xk *= x;
    // sum_{j>k} |log(1-x^j)| + log(1+x^j) <= 2 x^{k+1} / ((1-x)(1-x^{k+1}))
    double tail = 2.0 * xk / ((1.0 - x) * (1.0 - xk));
    if (tail < 1e-15) break;
  }
  double w2 = std::exp(log_ratio) / (1.0 - x * x);
  return {std::sqrt(w2), std::exp(-log_c_inv)};
}

}  // namespace qfock
