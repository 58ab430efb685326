#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "qfock/bounds.hpp"
#include "qfock/fock.hpp"
#include "qfock/qnumbers.hpp"

using namespace qfock;

namespace {

// Smallest c with G_{m+1} >= c (G_m (x) I), as a generalized eigenvalue.
double sharp_constant(int m, double q0, int d) {
  const auto q = FloatDeformation::constant(d, q0);
  Eigen::MatrixXd big = gram_float(q, m + 1);
  Eigen::MatrixXd small = gram_float(q, m);
  Eigen::MatrixXd lifted = Eigen::MatrixXd::Zero(big.rows(), big.cols());
  for (Eigen::Index r = 0; r < small.rows(); ++r)
    for (Eigen::Index c = 0; c < small.cols(); ++c)
      for (Eigen::Index j = 0; j < d; ++j) lifted(r * d + j, c * d + j) = small(r, c);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(big, lifted, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("floating Gram matrices match the exact ones") {
  for (const auto& [num, den] : {std::pair{1L, 2L}, std::pair{-9L, 10L}, std::pair{1L, 3L}}) {
    const Rational q0 = frac(num, den);
    FockSpace exact(DeformationMatrix::constant(2, Scalar(q0)), 5);
    const auto fq = FloatDeformation::constant(2, to_nearest_double(q0));
    for (int n = 0; n <= 5; ++n) {
      Eigen::MatrixXd g = gram_float(fq, n);
      const auto& e = exact.gram(n);
      double worst = 0;
      for (std::size_t r = 0; r < e.size; ++r)
        for (std::size_t c = 0; c < e.size; ++c)
          worst = std::max(worst, std::abs(g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                                           to_nearest_double(e(r, c).as_rational())));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("floating Gram matrices are positive definite") {
  for (double q0 : {0.9, -0.9})
    for (int n = 0; n <= 6; ++n) {
      Eigen::LLT<Eigen::MatrixXd> llt(gram_float(FloatDeformation::constant(2, q0), n));
      CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("Gram domination") {
  for (int m = 0; m <= 4; ++m) CHECK(std::abs(gram_domination_residual(m, 0.0, 2)) < 1e-12);
  for (int m = 0; m <= 3; ++m) CHECK(gram_domination_residual(m, -0.9, 2) >= -1e-9);
  for (int m = 0; m <= 2; ++m) CHECK(gram_domination_residual(m, 0.5, 2) >= -1e-9);
}

TEST_CASE("sharp domination constants against w(q)") {
  // The sharp constant decreases with the level; at q = 0.5 it drops below
  // w(0.5) from m = 3 on, so the domination with w(q) fails there.
  const double w = analytic_constants(0.5).w;
  double prev = 2;
  for (int m = 0; m <= 5; ++m) {
    const double c = sharp_constant(m, 0.5, 2);
    CHECK(c > 0);
    CHECK(c <= prev + 1e-12);
    prev = c;
    if (m <= 2) CHECK(c >= w);
    if (m >= 3) {
      CHECK(c < w);
      CHECK(gram_domination_residual(m, 0.5, 2) < -1e-9);
    }
  }
}

TEST_CASE("right annihilation norms") {
  CHECK(right_annihilation_norm(1, FloatDeformation::constant(2, 0.0), 5) == doctest::Approx(1.0).epsilon(1e-12));
  for (double q0 : {0.5, -0.9}) {
    const double bound = 1 / std::sqrt(analytic_constants(q0).w);
    for (int i = 1; i <= 2; ++i) CHECK(right_annihilation_norm(i, FloatDeformation::constant(2, q0), 6) <= bound + 1e-9);
  }
  double prev = 0;
  for (int L = 3; L <= 5; ++L) {
    const double r = right_annihilation_norm(1, FloatDeformation::constant(2, 0.5), L);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK_THROWS_AS(right_annihilation_norm(1, FloatDeformation::constant(2, 0.9999999), 6), GramFactorizationError);
}

TEST_CASE("Haagerup-type inequality") {
  const auto free = FloatDeformation::constant(2, 0.0);
  CHECK(haagerup_residual(0, free, 4, 10, 1).residual == doctest::Approx(0.0));
  auto two = haagerup_residual(2, free, 6, 50, 42);
  CHECK(two.bound == doctest::Approx(3.0));
  CHECK(two.residual <= 0);
  for (double q0 : {0.5, -0.9})
    for (int m = 0; m <= 4; ++m) {
      auto r = haagerup_residual(m, FloatDeformation::constant(2, q0), std::max(6, m + 2), 50, 42);
      CHECK(r.residual <= 0);
      CHECK(!r.heuristic);
    }
  auto a = haagerup_residual(3, FloatDeformation::constant(2, 0.5), 6, 20, 9);
  auto b = haagerup_residual(3, FloatDeformation::constant(2, 0.5), 6, 20, 9);
  CHECK(a.residual == b.residual);

  auto mixed = FloatDeformation::from(DeformationMatrix::from_entries(
      2, {Scalar(frac(1, 3)), Scalar(frac(1, 5)), Scalar(frac(1, 5)), Scalar(frac(-1, 4))}));
  CHECK(!mixed.is_constant());
  CHECK(mixed.max_abs() == doctest::Approx(1.0 / 3));
  CHECK(haagerup_residual(2, mixed, 5, 10, 42).heuristic);
}

TEST_CASE("series tails") {
  CHECK(series_tail(SeriesId::Xi, 0, 0.0, 2).bound == 0);
  CHECK(series_tail(SeriesId::Xi, 8, 0.5, 2).bound < series_tail(SeriesId::Xi, 6, 0.5, 2).bound);
  CHECK(series_tail(SeriesId::Xi, 20, 0.9, 2).finite());
  for (SeriesId id : {SeriesId::Xi, SeriesId::Fisher, SeriesId::Lipschitz, SeriesId::Gibbs}) {
    CHECK(series_from_string(to_string(id)) == id);
    for (double q0 : {0.9, -0.9, 0.5, -0.5, 0.1}) {
      for (int d : {1, 2, 3}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int M = 0; M <= 25; ++M) {
          auto t = series_tail(id, M, q0, d);
          CHECK(t.finite());
          CHECK(t.bound >= 0);
          CHECK(t.log10_bound <= prev);
          prev = t.log10_bound;
        }
      }
    }
  }
}
