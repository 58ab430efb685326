#include "qfock/dual.hpp"

#include "qfock/qnumbers.hpp"

namespace qfock {

Scalar crossing_weight(const DeformationMatrix& q, const DrawnPartition& p, const std::vector<int>& letters) {
  const auto& blocks = p.blocks();
  for (const auto& b : blocks)
    if (!b.singleton() && letters[static_cast<std::size_t>(b.lo)] != letters[static_cast<std::size_t>(b.hi)])
      return Scalar(0);
  Scalar weight(1);
  for (const auto& c : p.crossing_list()) {
    int la = letters[static_cast<std::size_t>(blocks[static_cast<std::size_t>(c.a)].lo)];
    int lb = letters[static_cast<std::size_t>(blocks[static_cast<std::size_t>(c.b)].lo)];
    weight *= q(la, lb).pow(c.count);
  }
  return weight;
}

FockVector dual_partition(const FockSpace& space, int i, const Word& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> letters(static_cast<std::size_t>(n + 1));
  letters[0] = i;
  for (int k = 1; k <= n; ++k) letters[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(n - k)];
  FockVector out;
  for (const auto& p : *enumerate(Family::B, n + 1)) {
    Scalar weight = crossing_weight(space.deformation(), p, letters);
    if (weight.is_zero()) continue;
    if (p.partner0() % 2 == 0) weight = -weight;
    std::vector<Letter> s;
    for (int v : p.singletons()) s.push_back(static_cast<Letter>(letters[static_cast<std::size_t>(v)]));
    out.add(Word(std::move(s)), weight);
  }
  return out;
}

FockVector DualOperator::apply(const Word& w) const {
  if (strategy_ == DualStrategy::Partition) return dual_partition(space_, i_, w);
  return recursive(w);
}

FockVector DualOperator::apply(const FockVector& v) const {
  FockVector out;
  for (const auto& [w, c] : v) out.add(apply(w), c);
  return out;
}

// D_i e_{jw} = A_j D_i e_w + delta_ij P0 e_w - D_i l_j e_w
FockVector DualOperator::recursive(const Word& w) const {
  if (w.empty()) return {};
  {
    std::lock_guard lock(memo_mutex_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  const int j = w[0];
  const Word rest = w.slice(1, w.size());
  FockVector out = space_.gaussian(j, recursive(rest));
  if (j == i_ && rest.empty()) out.add(Word{}, Scalar(1));
  for (const auto& [u, c] : space_.annihilate(j, basis(rest))) out.add(recursive(u), -c);
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(w, out);
  return out;
}

ResidualReport commutator_residual(const FockSpace& space, int i, int j, int level_limit) {
  DualOperator dual(space, i, DualStrategy::Partition);
  ResidualReport report;
  for (const auto& w : Word::all_up_to(space.d(), static_cast<std::size_t>(level_limit))) {
    FockVector e = basis(w);
    FockVector r = dual.apply(space.gaussian(j, e));
    r -= space.gaussian(j, dual.apply(e));
    if (i == j && w.empty()) r.add(Word{}, Scalar(-1));
    ++report.checked;
    Rational m = r.max_magnitude();
    if (m > report.max_magnitude) report.max_magnitude = m;
    if (m != 0 && !report.first_counterexample) report.first_counterexample = w;
  }
  return report;
}

FockVector conjugate_series(const FockSpace& space, int i, int M) {
  if (2 * M + 1 > space.level()) throw TruncationError("conjugate_series needs 2M+1 <= L");
  const auto& q = space.deformation();
  FockVector xi;
  for (int m = 0; m <= M; ++m) {
    for (const auto& w : Word::all(space.d(), static_cast<std::size_t>(m))) {
      std::vector<int> letters{i};
      for (std::size_t p = 0; p < w.size(); ++p) letters.push_back(w[p]);
      Scalar coeff(m % 2 ? -1 : 1);
      for (std::size_t k = 1; k < letters.size() && !coeff.is_zero(); ++k)
        for (std::size_t l = 0; l < k; ++l) coeff *= q(letters[k], letters[l]);
      if (coeff.is_zero()) continue;
      FockVector x = space.right_annihilate_adjoint(i, basis(w));
      for (std::size_t p = 0; p < w.size(); ++p) x = space.right_annihilate_adjoint(w[p], x);
      xi.add(x, coeff);
    }
  }
  return xi;
}

Scalar fisher_info(const FockSpace& space, int M) {
  Scalar total(0);
  for (int i = 1; i <= space.d(); ++i) total += space.norm_squared(conjugate_series(space, i, M));
  return total;
}

FockVector dual_closed_form_1d(int n, const Scalar& q) {
  FockVector out;
  for (int k = 1; 2 * k - 1 <= n; ++k) {
    Scalar c = q.pow(k * (k - 1) / 2) * q_falling(n - k, k - 1, q);
    if (k % 2 == 0) c = -c;
    out.add(Word::repeat(1, static_cast<std::size_t>(n - 2 * k + 1)), c);
  }
  return out;
}

FockVector conjugate_closed_form_1d(int M, const Scalar& q) {
  FockVector out;
  for (int m = 1; m <= M + 1; ++m) {
    Scalar c = q.pow(m * (m - 1) / 2) * q_factorial(m - 1, q) / q_factorial(2 * m - 1, q);
    if (m % 2 == 0) c = -c;
    out.add(Word::repeat(1, static_cast<std::size_t>(2 * m - 1)), c);
  }
  return out;
}

Scalar fisher_term_1d(int m, const Scalar& q) {
  Scalar f = q_factorial(m - 1, q);
  return q.pow(m * (m - 1)) * f * f / q_factorial(2 * m - 1, q);
}

}  // namespace qfock
