// Normalized dual system D_i, conjugate variables xi_i and Fisher
// information partial sums.

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "qfock/fock.hpp"
#include "qfock/partitions.hpp"

namespace qfock {

enum class DualStrategy { Recursive, Partition };

/// D_i e_w from the crossing-partition formula over B(|w|+1). Vertex 0 carries
/// the letter i and vertex k the k-th letter of w from the right.
FockVector dual_partition(const FockSpace& space, int i, const Word& w);

/// Weight of a drawn partition whose vertex v carries letters[v]: the product
/// of q_{ab} over crossings, zero when some pair joins different letters.
Scalar crossing_weight(const DeformationMatrix& q, const DrawnPartition& p, const std::vector<int>& letters);

class DualOperator {
 public:
  DualOperator(const FockSpace& space, int i, DualStrategy strategy = DualStrategy::Recursive)
      : space_(space), i_(i), strategy_(strategy) {}

  int index() const { return i_; }
  DualStrategy strategy() const { return strategy_; }

  FockVector apply(const Word& w) const;
  FockVector apply(const FockVector& v) const;

 private:
  FockVector recursive(const Word& w) const;

  const FockSpace& space_;
  int i_;
  DualStrategy strategy_;
  mutable std::mutex memo_mutex_;
  mutable std::map<Word, FockVector> memo_;
};

struct ResidualReport {
  Rational max_magnitude{0};
  std::size_t checked = 0;
  std::optional<Word> first_counterexample;
  bool zero() const { return max_magnitude == 0; }
};

/// Largest coefficient of (D_i A_j - A_j D_i - delta_ij P0) e_w over all
/// words |w| <= level_limit, with D_i from the partition formula.
ResidualReport commutator_residual(const FockSpace& space, int i, int j, int level_limit);

/// Partial sum over |w| <= M of (-1)^{|w|} q(w) r_{iw}^* e_w.
FockVector conjugate_series(const FockSpace& space, int i, int M);

/// Sum over i of <xi_i, xi_i> for the partial sums.
Scalar fisher_info(const FockSpace& space, int M);

/// One-variable closed form: sum_k (-1)^{k-1} q^{k(k-1)/2} P_q(n-k,k-1) e_{n-2k+1}.
FockVector dual_closed_form_1d(int n, const Scalar& q = Scalar::q());

/// One-variable conjugate series:
/// sum_{m=1}^{M+1} (-1)^{m-1} q^{m(m-1)/2} [m-1]_q!/[2m-1]_q! e_{2m-1}.
FockVector conjugate_closed_form_1d(int M, const Scalar& q = Scalar::q());

/// Terms |q|^{m(m-1)} ([m-1]_q!)^2 / [2m-1]_q! of the one-variable Fisher series.
Scalar fisher_term_1d(int m, const Scalar& q);

}  // namespace qfock
