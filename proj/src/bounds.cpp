#include "qfock/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "qfock/qnumbers.hpp"
#include "qfock/word.hpp"

namespace qfock {

FloatDeformation FloatDeformation::constant(int d, double q0) {
  FloatDeformation f;
  f.d = d;
  f.q.assign(static_cast<std::size_t>(d * d), q0);
  return f;
}

FloatDeformation FloatDeformation::from(const DeformationMatrix& m, double formal_value) {
  FloatDeformation f;
  f.d = m.d();
  for (int i = 1; i <= m.d(); ++i)
    for (int j = 1; j <= m.d(); ++j) f.q.push_back(m(i, j).float_eval(formal_value));
  return f;
}

double FloatDeformation::max_abs() const {
  double best = 0;
  for (double x : q) best = std::max(best, std::abs(x));
  return best;
}

bool FloatDeformation::is_constant() const {
  return std::all_of(q.begin(), q.end(), [&](double x) { return x == q.front(); });
}

namespace {

std::size_t power(int d, int n) {
  std::size_t p = 1;
  for (int k = 0; k < n; ++k) p *= static_cast<std::size_t>(d);
  return p;
}

}  // namespace

Eigen::MatrixXd gram_float(const FloatDeformation& q, int n) {
  const int d = q.d;
  Eigen::MatrixXd g = Eigen::MatrixXd::Ones(1, 1);
  for (int level = 1; level <= n; ++level) {
    const std::size_t prev = power(d, level - 1);
    const std::size_t size = prev * static_cast<std::size_t>(d);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t wi = 0; wi < size; ++wi) {
      Word w = Word::from_index(wi, static_cast<std::size_t>(level), d);
      for (int i = 1; i <= d; ++i) {
        double weight = 1;
        for (std::size_t p = 0; p < w.size(); ++p) {
          if (w[p] == i) {
            const auto col = static_cast<Eigen::Index>(w.erase(p).index(d));
            const auto base = static_cast<Eigen::Index>(static_cast<std::size_t>(i - 1) * prev);
            next.col(static_cast<Eigen::Index>(wi)).segment(base, static_cast<Eigen::Index>(prev)) += weight * g.col(col);
          }
          weight *= q(i, w[p]);
        }
      }
    }
    g = std::move(next);
  }
  return g;
}

namespace {

// Largest eigenvalue of the pencil (a, b) with b positive definite.
double max_generalized_eigenvalue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const std::string& what) {
  Eigen::LLT<Eigen::MatrixXd> llt(b);
  if (llt.info() != Eigen::Success) throw GramFactorizationError("Gram factorization failed: " + what);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw GramFactorizationError("generalized eigensolve failed: " + what);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

double gram_domination_residual(int m, double q0, int d) {
  const auto consts = analytic_constants(q0);
  const auto q = FloatDeformation::constant(d, q0);
  const Eigen::MatrixXd big = gram_float(q, m + 1);
  const Eigen::MatrixXd small = gram_float(q, m);
  Eigen::MatrixXd diff = big / consts.w;
  const Eigen::Index dd = d;
  for (Eigen::Index r = 0; r < small.rows(); ++r)
    for (Eigen::Index c = 0; c < small.cols(); ++c)
      for (Eigen::Index j = 0; j < dd; ++j) diff(r * dd + j, c * dd + j) -= small(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double right_annihilation_norm(int i, const FloatDeformation& q, int L) {
  const int d = q.d;
  double best = 0;
  Eigen::MatrixXd lower = gram_float(q, 0);
  for (int n = 0; n < L; ++n) {
    Eigen::MatrixXd upper = gram_float(q, n + 1);
    const auto size = upper.rows();
    Eigen::MatrixXd pulled = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index u = 0; u < lower.rows(); ++u)
      for (Eigen::Index v = 0; v < lower.cols(); ++v) pulled(u * d + (i - 1), v * d + (i - 1)) = lower(u, v);
    best = std::max(best, max_generalized_eigenvalue(pulled, upper, "level " + std::to_string(n + 1)));
    lower = std::move(upper);
  }
  return std::sqrt(std::max(best, 0.0));
}

HaagerupResult haagerup_residual(int m, const FloatDeformation& q, int L, int trials, std::uint64_t seed) {
  if (m > L) throw std::invalid_argument("haagerup_residual needs m <= L");
  const int d = q.d;
  std::vector<std::size_t> offset(static_cast<std::size_t>(L + 2), 0);
  for (int k = 0; k <= L; ++k) offset[static_cast<std::size_t>(k + 1)] = offset[static_cast<std::size_t>(k)] + power(d, k);
  const auto total = static_cast<Eigen::Index>(offset[static_cast<std::size_t>(L + 1)]);
  const auto domain = static_cast<Eigen::Index>(offset[static_cast<std::size_t>(L - m + 1)]);
  auto position = [&](const Word& w) {
    return static_cast<Eigen::Index>(offset[w.size()] + w.index(d));
  };

  std::vector<Eigen::MatrixXd> gaussians;
  for (int i = 1; i <= d; ++i) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);
    for (int k = 0; k <= L; ++k)
      for (const auto& w : Word::all(d, static_cast<std::size_t>(k))) {
        const auto col = position(w);
        if (k < L) a(position(w.prepend(i)), col) += 1;
        double weight = 1;
        for (std::size_t p = 0; p < w.size(); ++p) {
          if (w[p] == i) a(position(w.erase(p)), col) += weight;
          weight *= q(i, w[p]);
        }
      }
    gaussians.push_back(std::move(a));
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(total, total);
  for (int k = 0; k <= L; ++k) {
    const auto off = static_cast<Eigen::Index>(offset[static_cast<std::size_t>(k)]);
    const Eigen::MatrixXd g = gram_float(q, k);
    gram.block(off, off, g.rows(), g.cols()) = g;
  }
  const Eigen::MatrixXd gram_domain = gram.topLeftCorner(domain, domain);

  // Wick matrices Q[v] restricted to the domain columns.
  std::map<Word, Eigen::MatrixXd> wick;
  wick.emplace(Word{}, Eigen::MatrixXd::Identity(total, domain));
  for (int k = 1; k <= m; ++k)
    for (const auto& v : Word::all(d, static_cast<std::size_t>(k))) {
      const int j = v[0];
      const Word rest = v.slice(1, v.size());
      Eigen::MatrixXd x = gaussians[static_cast<std::size_t>(j - 1)] * wick.at(rest);
      double weight = 1;
      for (std::size_t p = 0; p < rest.size(); ++p) {
        if (rest[p] == j) x -= weight * wick.at(rest.erase(p));
        weight *= q(j, rest[p]);
      }
      wick.emplace(v, std::move(x));
    }

  const auto consts = analytic_constants(q.max_abs());
  HaagerupResult result;
  result.bound = (m + 1) * std::pow(consts.C, 1.5);
  result.heuristic = !q.is_constant();
  result.residual = -std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd gm = gram_float(q, m);
  const auto words = Word::all(d, static_cast<std::size_t>(m));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd eta(static_cast<Eigen::Index>(words.size()));
    for (Eigen::Index k = 0; k < eta.size(); ++k) eta(k) = normal(rng);
    eta /= std::sqrt(eta.dot(gm * eta));
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(total, domain);
    for (std::size_t k = 0; k < words.size(); ++k) x += eta(static_cast<Eigen::Index>(k)) * wick.at(words[k]);
    const Eigen::MatrixXd pencil = x.transpose() * gram * x;
    const double norm = std::sqrt(std::max(0.0, max_generalized_eigenvalue(pencil, gram_domain, "Haagerup domain")));
    const double r = norm - result.bound;
    if (r > result.residual) {
      result.residual = r;
      result.worst_norm = norm;
    }
  }
  return result;
}

std::string to_string(SeriesId id) {
  switch (id) {
    case SeriesId::Xi:
      return "xi";
    case SeriesId::Fisher:
      return "fisher";
    case SeriesId::Lipschitz:
      return "lipschitz";
    case SeriesId::Gibbs:
      return "gibbs";
  }
  return "?";
}

SeriesId series_from_string(const std::string& s) {
  if (s == "xi") return SeriesId::Xi;
  if (s == "fisher") return SeriesId::Fisher;
  if (s == "lipschitz") return SeriesId::Lipschitz;
  if (s == "gibbs") return SeriesId::Gibbs;
  throw std::invalid_argument("unknown series: " + s);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log of |q|^e, with 0^0 = 1.
double log_power(double aq, double e) {
  if (e == 0) return 0;
  if (aq == 0) return kNegInf;
  return e * std::log(aq);
}

// log [n]_{|q|}!, extended on demand.
class LogQFactorial {
 public:
  explicit LogQFactorial(double aq) : aq_(aq) {}
  double operator()(int n) {
    while (static_cast<int>(values_.size()) <= n)
      values_.push_back(values_.back() + std::log(q_int_f(static_cast<int>(values_.size()), aq_)));
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  double aq_;
  std::vector<double> values_{0.0};
};

// Index K from which the term ratio stays below 1/2 (checked as falling for
// a stretch of ten terms), scanning from the first index of the series.
template <class F>
int settling_index(F log_term, int start) {
  double prev = log_term(start);
  double prev_ratio = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int m = start + 1; m < start + 100000; ++m) {
    const double cur = log_term(m);
    if (cur == kNegInf) return m;
    const double ratio = cur - prev;
    settled = (ratio < -std::log(2.0) && ratio <= prev_ratio) ? settled + 1 : 0;
    prev_ratio = ratio;
    prev = cur;
    if (settled >= 10) return m;
  }
  return -1;
}

// sum_{m >= first} t_m, bounded by the exact sum up to K = max(K0, first)
// plus t_K for the geometric remainder. K0 does not depend on `first`, so
// the result is nonincreasing in `first`.
template <class F>
double log_tail(F log_term, int start, int first) {
  const int k0 = settling_index(log_term, start);
  if (k0 < 0) return std::numeric_limits<double>::infinity();
  const int k = std::max(k0, first);
  double acc = kNegInf;
  for (int m = first; m <= k; ++m) acc = log_add(acc, log_term(m));
  return log_add(acc, log_term(k));
}

}  // namespace

TailReport series_tail(SeriesId id, int M, double q0, int d) {
  if (!(std::abs(q0) < 1)) throw std::domain_error("series_tail needs |q| < 1");
  const double aq = std::abs(q0);
  const auto consts = analytic_constants(q0);
  const double log_c = std::log(consts.C);
  const double log_w = std::log(consts.w);
  const double log_d = std::log(static_cast<double>(d));
  LogQFactorial log_q_factorial(aq);
  TailReport report;
  report.series = id;
  report.M = M;
  double log_tail_value = 0;
  switch (id) {
    case SeriesId::Xi: {
      report.formula = "sum_{m>M} d^m |q|^{m(m+1)/2} (2m+2) C^{3/2} w^{-(m+1)/2} sqrt([m]_{|q|}!)";
      auto term = [&](int m) {
        return m * log_d + log_power(aq, m * (m + 1) / 2.0) + std::log(2.0 * m + 2) + 1.5 * log_c -
               0.5 * (m + 1) * log_w + 0.5 * log_q_factorial(m);
      };
      log_tail_value = log_tail(term, 0, M + 1);
      break;
    }
    case SeriesId::Fisher: {
      report.formula = "d (sum_{m>=M+2} |q|^{m(m-1)/2} d^{m-1} C^m sqrt([m-1]_{|q|}!))^2";
      auto term = [&](int m) {
        return log_power(aq, m * (m - 1) / 2.0) + (m - 1) * log_d + m * log_c + 0.5 * log_q_factorial(m - 1);
      };
      const double t = log_tail(term, 1, M + 2);
      log_tail_value = t == kNegInf ? kNegInf : log_d + 2 * t;
      break;
    }
    case SeriesId::Lipschitz: {
      report.formula = "sum_{m>M} C |q|^{m(m+1)/2} (2m+1)^2 (2m+2)! (d/sqrt w)^{3m} sqrt([m]_{|q|}!) [2m]_{|q|}!";
      auto term = [&](int m) {
        return log_c + log_power(aq, m * (m + 1) / 2.0) + 2 * std::log(2.0 * m + 1) + std::lgamma(2.0 * m + 3) +
               3.0 * m * (log_d - 0.5 * log_w) + 0.5 * log_q_factorial(m) + log_q_factorial(2 * m);
      };
      log_tail_value = log_tail(term, 0, M + 1);
      break;
    }
    case SeriesId::Gibbs: {
      report.formula = "sum_{m>M} |q|^{m(m+1)/2} (d/sqrt w)^{3m+2} sqrt([m]_{|q|}!) (2m+1)! A^{2m+1}, A = 2/sqrt(1-q)";
      const double log_a = std::log(2.0) - 0.5 * std::log(1 - q0);
      auto term = [&](int m) {
        return log_power(aq, m * (m + 1) / 2.0) + (3.0 * m + 2) * (log_d - 0.5 * log_w) +
               0.5 * log_q_factorial(m) + std::lgamma(2.0 * m + 2) + (2.0 * m + 1) * log_a;
      };
      log_tail_value = log_tail(term, 0, M + 1);
      break;
    }
  }
  report.log10_bound = log_tail_value / std::log(10.0);
  report.bound = std::exp(log_tail_value);
  return report;
}

}  // namespace qfock
