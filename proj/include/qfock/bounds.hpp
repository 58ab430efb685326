// Floating-point checks of the analytic inequalities (Gram domination,
// right-annihilation norms, the Haagerup-type inequality) and majorant
// tails for the truncated series.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfock/deformation.hpp"

namespace qfock {

/// Raised when a floating Gram matrix fails to factor as positive definite.
class GramFactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deformation matrix evaluated to doubles.
struct FloatDeformation {
  int d = 1;
  std::vector<double> q;  // row-major
  static FloatDeformation constant(int d, double q0);
  static FloatDeformation from(const DeformationMatrix& m, double formal_value = 0.0);
  double operator()(int i, int j) const { return q[static_cast<std::size_t>((i - 1) * d + (j - 1))]; }
  double max_abs() const;
  bool is_constant() const;
};

/// Level-n Gram matrix built with the annihilation recursion in doubles.
Eigen::MatrixXd gram_float(const FloatDeformation& q, int n);

/// Smallest eigenvalue of w^{-1} G_{m+1} - G_m (x) I_d.
double gram_domination_residual(int m, double q0, int d);

/// max over levels n+1 <= L of the norm of r_i : level n+1 -> level n in the
/// twisted inner products.
double right_annihilation_norm(int i, const FloatDeformation& q, int L);

struct HaagerupResult {
  double residual = 0;     ///< max over trials of ||X|| - (m+1) C^{3/2}
  double worst_norm = 0;   ///< truncated operator norm attaining it
  double bound = 0;        ///< (m+1) C^{3/2}
  bool heuristic = false;  ///< mixed deformation with the max|q_ij| surrogate
};

/// Random level-m vectors eta with ||eta||_q = 1 and X = sum_v eta_v Q[v](A)
/// on levels <= L, restricted to the domain of levels <= L - m.
HaagerupResult haagerup_residual(int m, const FloatDeformation& q, int L, int trials, std::uint64_t seed);

enum class SeriesId { Xi, Fisher, Lipschitz, Gibbs };
std::string to_string(SeriesId id);
SeriesId series_from_string(const std::string& s);

struct TailReport {
  SeriesId series = SeriesId::Xi;
  int M = 0;
  double bound = 0;        ///< may be +inf when the majorant exceeds double range
  double log10_bound = 0;  ///< -inf for an exactly vanishing tail
  std::string formula;
  bool finite() const { return log10_bound < std::numeric_limits<double>::infinity(); }
};

/// Tail sum over terms beyond the truncation of the majorant for the given
/// series, with q0 in (-1, 1).
TailReport series_tail(SeriesId id, int M, double q0, int d);

}  // namespace qfock
