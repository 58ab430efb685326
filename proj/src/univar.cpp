#include "qfock/univar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qfock/deformation.hpp"
#include "qfock/fock.hpp"
#include "qfock/qnumbers.hpp"

namespace qfock {

Poly1::Poly1(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly1 Poly1::x() { return Poly1({Scalar(0), Scalar(1)}); }

Poly1 Poly1::constant(const Scalar& c) { return Poly1({c}); }

void Poly1::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Poly1::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

std::vector<double> Poly1::evaluate_coefficients(double q0) const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.float_eval(q0));
  return out;
}

Poly1& Poly1::operator+=(const Poly1& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly1& Poly1::operator-=(const Poly1& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly1& Poly1::operator*=(const Scalar& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Poly1 Poly1::times_x() const {
  if (coeffs_.empty()) return {};
  std::vector<Scalar> out;
  out.reserve(coeffs_.size() + 1);
  out.emplace_back(0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return Poly1(std::move(out));
}

bool operator==(const Poly1& a, const Poly1& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
    if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
  return true;
}

std::string Poly1::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[k] << ")";
    if (k) os << "*x^" << k;
  }
  return os.str();
}

Poly1 hermite(int n, const Scalar& q) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  Poly1 prev = Poly1::constant(Scalar(1));
  if (n == 0) return prev;
  Poly1 cur = Poly1::x();
  for (int k = 1; k < n; ++k) {
    Poly1 next = cur.times_x() - prev * q_int(k, q);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

Poly1 cheb_u(int n) {
  Poly1 prev = Poly1::constant(Scalar(1));
  if (n == 0) return prev;
  Poly1 cur = Poly1::x();
  for (int k = 1; k < n; ++k) {
    Poly1 next = cur.times_x() - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> to_doubles(const Poly1& p) {
  std::vector<double> out;
  for (const auto& c : p.coefficients()) out.push_back(to_nearest_double(c.as_rational()));
  return out;
}

}  // namespace

Poly1 cheb(ChebKind kind, int n) {
  if (n < 0) throw std::invalid_argument("cheb: negative degree");
  if (kind == ChebKind::U) return cheb_u(n);
  if (n == 0) throw std::invalid_argument("cheb: C_0 is not defined by the reduction");
  if (n == 1) return cheb_u(1);
  return cheb_u(n) - cheb_u(n - 2);
}

double rescale_identity_residual(int n, double q0) {
  if (!(std::abs(q0) < 1)) throw std::domain_error("rescale_identity_residual needs |q| < 1");
  const Scalar q{Rational(q0)};
  const double s = std::sqrt(1 - q0);
  std::vector<double> lhs = to_doubles(cheb_u(n));
  for (std::size_t j = 0; j < lhs.size(); ++j) lhs[j] *= std::pow(s, static_cast<double>(j));
  std::vector<double> rhs(lhs.size(), 0.0);
  for (int k = 0; 2 * k <= n; ++k) {
    Scalar c = q.pow(k * (k + 1) / 2) * q_binom(n - k, k, q);
    if (k % 2) c = -c;
    const double scale = c.float_eval(q0) * std::pow(s, n - 2 * k);
    auto h = hermite(n - 2 * k, q).evaluate_coefficients(q0);
    for (std::size_t j = 0; j < h.size(); ++j) rhs[j] += scale * h[j];
  }
  double worst = 0;
  for (std::size_t j = 0; j < lhs.size(); ++j) worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
  return worst;
}

namespace {

// sum_j u_{2j+parity} (1-q)^j tau(A^{2j+parity}) for the one-variable space.
Scalar rescaled_trace(const Poly1& u, int parity, const Scalar& q) {
  const int deg = std::max(u.degree(), 0);
  FockSpace space(DeformationMatrix::constant(1, q), deg);
  std::vector<Scalar> moments(static_cast<std::size_t>(deg + 1));
  FockVector v = basis(Word{});
  moments[0] = Scalar(1);
  for (int k = 1; k <= deg; ++k) {
    v = space.gaussian(1, v);
    moments[static_cast<std::size_t>(k)] = FockSpace::trace(v);
  }
  const Scalar one_minus_q = Scalar(1) - q;
  Scalar total(0);
  for (int k = parity; k <= u.degree(); k += 2)
    total += u.coefficient(k) * one_minus_q.pow((k - parity) / 2) * moments[static_cast<std::size_t>(k)];
  return total;
}

}  // namespace

Scalar trace_cheb(int n, const Scalar& q) { return rescaled_trace(cheb_u(2 * n), 0, q); }

Scalar trace_cheb_odd(int n, const Scalar& q) {
  if (n < 1) throw std::invalid_argument("trace_cheb_odd needs n >= 1");
  return rescaled_trace(cheb_u(2 * n - 1), 1, q);
}

namespace {

// Gaussian binomial [a choose b]_q in floating point via the product over
// the smaller side.
double q_binom_f(int a, int b, double q) {
  const int k = std::min(b, a - b);
  double r = 1;
  for (int t = 1; t <= k; ++t) r *= (1 - std::pow(q, a - k + t)) / (1 - std::pow(q, t));
  return r;
}

}  // namespace

SeriesCheck q_identity_residual(int m, double q0, int N) {
  if (!(std::abs(q0) < 1)) throw std::domain_error("q_identity_residual needs |q| < 1");
  if (N < m) throw std::invalid_argument("q_identity_residual needs N >= m");
  const double aq = std::abs(q0);
  double sum = 0;
  double abs_sum = 0;
  int terms = 0;
  for (int n = m; n <= N; ++n) {
    const double e = static_cast<double>(n + 1) * static_cast<double>(n - m);
    const double qp = e == 0 ? 1.0 : std::pow(q0, e);
    if (qp == 0) break;
    const double term = qp * (1 + std::pow(q0, n + 1)) * q_binom_f(n + m + 1, n - m, q0);
    sum += term;
    abs_sum += std::abs(term);
    ++terms;
  }
  SeriesCheck out;
  out.value = std::pow(1 - q0, m + 1) * sum;
  out.target = q_factorial_f(m, q0) / q_factorial_f(2 * m + 1, q0);
  out.residual = std::abs(out.value - out.target);
  // Each term carries O(m) rounded products and quotients, the sum adds one
  // rounding per term, and the target is a quotient of two q-factorials.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  out.rounding_bound = eps * ((8.0 * m + 16 + terms) * std::pow(std::abs(1 - q0), m + 1) * abs_sum +
                              (8.0 * m + 8) * std::abs(out.target));
  // |binom| <= (2/(1-|q|))^{2m+1}; consecutive exponents grow by at least 2N+4-m.
  if (aq > 0) {
    const double n1 = N + 1;
    const double log_term = (m + 1) * std::log(std::abs(1 - q0)) + std::log(2.0) +
                            (2 * m + 1) * std::log(2 / (1 - aq)) + (n1 + 1) * (n1 - m) * std::log(aq);
    const double ratio = std::pow(aq, 2 * N + 4 - m);
    out.tail_bound = std::exp(log_term) / (1 - ratio);
  }
  return out;
}

std::vector<double> conjugate_cheb_series(int M, double q0) {
  if (!(std::abs(q0) < 1)) throw std::domain_error("conjugate_cheb_series needs |q| < 1");
  const double s = std::sqrt(1 - q0);
  std::vector<double> out;
  for (int n = 0; n <= M; ++n) {
    auto c = to_doubles(cheb(ChebKind::C, 2 * n + 1));
    const double w = (n % 2 ? -1.0 : 1.0) * std::pow(q0, n * (n + 1) / 2) * s;
    if (out.size() < c.size()) out.resize(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) out[j] += w * c[j] * std::pow(s, static_cast<double>(j));
  }
  return out;
}

ChebVector conjugate_cheb_vector(int max_level, double q0) {
  if (!(std::abs(q0) < 1)) throw std::domain_error("conjugate_cheb_vector needs |q| < 1");
  const double s = std::sqrt(1 - q0);
  const int cap = 400;
  const std::size_t size = static_cast<std::size_t>(2 * cap + 3);
  std::vector<double> qint(size + 1);
  for (std::size_t k = 0; k <= size; ++k) qint[k] = q_int_f(static_cast<int>(k), q0);
  // X v with X = s A, A e_k = e_{k+1} + [k] e_{k-1}
  auto apply_x = [&](const std::vector<double>& v) {
    std::vector<double> out(v.size() + 1, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      out[k + 1] += s * v[k];
      if (k) out[k - 1] += s * qint[k] * v[k];
    }
    return out;
  };
  ChebVector result;
  result.coefficients.assign(static_cast<std::size_t>(max_level + 1), 0.0);
  std::vector<std::vector<double>> u{{1.0}};
  u.push_back(apply_x(u[0]));
  int quiet = 0;
  for (int n = 0; n <= cap; ++n) {
    const std::size_t deg = static_cast<std::size_t>(2 * n + 1);
    while (u.size() <= deg) {
      auto next = apply_x(u.back());
      const auto& prev = u[u.size() - 2];
      for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
      u.push_back(std::move(next));
    }
    std::vector<double> c = u[deg];
    if (deg >= 2)
      for (std::size_t k = 0; k < u[deg - 2].size(); ++k) c[k] -= u[deg - 2][k];
    const double w = (n % 2 ? -1.0 : 1.0) * std::pow(q0, static_cast<double>(n) * (n + 1) / 2) * s;
    double biggest = 0;
    for (std::size_t k = 0; k < result.coefficients.size() && k < c.size(); ++k) {
      result.coefficients[k] += w * c[k];
      biggest = std::max(biggest, std::abs(w * c[k]));
    }
    result.terms = n + 1;
    result.tail_estimate = biggest;
    quiet = biggest < 1e-17 ? quiet + 1 : 0;
    if (quiet >= 3 && 2 * n + 1 > max_level) break;
  }
  return result;
}

std::vector<double> conjugate_closed_form_coefficients(int max_level, double q0) {
  std::vector<double> out(static_cast<std::size_t>(max_level + 1), 0.0);
  for (int m = 1; 2 * m - 1 <= max_level; ++m) {
    double c = std::pow(q0, m * (m - 1) / 2) * q_factorial_f(m - 1, q0) / q_factorial_f(2 * m - 1, q0);
    out[static_cast<std::size_t>(2 * m - 1)] = m % 2 ? c : -c;
  }
  return out;
}

}  // namespace qfock
