#include "qfock/calculus.hpp"

#include <sstream>

#include "qfock/dual.hpp"
#include "qfock/partitions.hpp"

namespace qfock {

NCPoly monomial(const Word& w, Scalar c) { return NCPoly(w, std::move(c)); }

NCPoly multiply(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) out.add(u + v, cu * cv);
  return out;
}

int degree(const NCPoly& p) {
  int d = -1;
  for (const auto& [w, c] : p) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

NCPoly degree_part(const NCPoly& p, std::size_t k) {
  return p.filter([k](const Word& w) { return w.size() == k; });
}

FockVector apply(const FockSpace& space, const NCPoly& p, const FockVector& v) {
  FockVector out;
  for (const auto& [w, c] : p) {
    FockVector x = v;
    for (std::size_t k = w.size(); k-- > 0;) x = space.gaussian(w[k], x);
    out.add(x, c);
  }
  return out;
}

FockVector evaluate(const FockSpace& space, const NCPoly& p) { return apply(space, p, basis(Word{})); }

Scalar trace(const FockSpace& space, const NCPoly& p) { return FockSpace::trace(evaluate(space, p)); }

NCPoly WickExpander::recursive(const Word& w) const {
  if (w.empty()) return monomial(Word{});
  {
    std::lock_guard lock(memo_mutex_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  const int j = w[0];
  const Word rest = w.slice(1, w.size());
  NCPoly out;
  for (const auto& [u, c] : recursive(rest)) out.add(u.prepend(j), c);
  for (const auto& [u, c] : space_.annihilate(j, basis(rest))) out.add(recursive(u), -c);
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(w, out);
  return out;
}

NCPoly WickExpander::partition(const Word& w) const {
  const int n = static_cast<int>(w.size());
  std::vector<int> letters(static_cast<std::size_t>(n + 1), 0);
  for (int k = 1; k <= n; ++k) letters[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(n - k)];
  NCPoly out;
  for (const auto& p : *enumerate(Family::D, n)) {
    Scalar weight = crossing_weight(space_.deformation(), p, letters);
    if (weight.is_zero()) continue;
    if (p.pairs().size() % 2) weight = -weight;
    std::vector<Letter> s;
    for (int v : p.singletons()) s.push_back(static_cast<Letter>(letters[static_cast<std::size_t>(v)]));
    out.add(Word(std::move(s)), weight);
  }
  return out;
}

NCPoly WickExpander::vector_to_poly(const FockVector& v) const {
  NCPoly out;
  for (const auto& [w, c] : v) out.add(recursive(w), c);
  return out;
}

NCTensorPoly WickExpander::tensor_to_poly(const NCTensorPoly& t) const {
  NCTensorPoly out;
  for (const auto& [key, c] : t) {
    NCPoly left = recursive(key.first);
    NCPoly right = recursive(key.second);
    for (const auto& [a, ca] : left)
      for (const auto& [b, cb] : right) out.add({a, b}, c * ca * cb);
  }
  return out;
}

NCTensorPoly diff_quotient(int i, const NCPoly& p) {
  NCTensorPoly out;
  for (const auto& [w, c] : p)
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] == i) out.add({w.slice(0, k), w.slice(k + 1, w.size())}, c);
  return out;
}

NCTensorPoly diff_partition_vectors(const FockSpace& space, int i, const Word& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> letters(static_cast<std::size_t>(n + 1));
  letters[0] = i;
  for (int k = 1; k <= n; ++k) letters[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(n - k)];
  const auto& q = space.deformation();
  NCTensorPoly out;
  for (const auto& p : *enumerate(Family::C, n + 1)) {
    const auto& blocks = p.blocks();
    bool matched = true;
    for (const auto& b : blocks)
      if (!b.singleton() && letters[static_cast<std::size_t>(b.lo)] != letters[static_cast<std::size_t>(b.hi)])
        matched = false;
    if (!matched) continue;
    const int zero_block = p.block_of(0);
    Scalar weight(p.pairs().size() % 2 ? 1 : -1);
    for (const auto& c : p.crossing_list()) {
      const auto& ba = blocks[static_cast<std::size_t>(c.a)];
      const auto& bb = blocks[static_cast<std::size_t>(c.b)];
      int count = c.count;
      // a right singleton meets the 0-pair once; those crossings carry no weight
      if ((c.a == zero_block && bb.singleton() && bb.lo < p.partner0()) ||
          (c.b == zero_block && ba.singleton() && ba.lo < p.partner0()))
        --count;
      if (count > 0)
        weight *= q(letters[static_cast<std::size_t>(ba.lo)], letters[static_cast<std::size_t>(bb.lo)]).pow(count);
    }
    if (weight.is_zero()) continue;
    std::vector<Letter> left;
    std::vector<Letter> right;
    for (int v : p.left_singletons()) left.push_back(static_cast<Letter>(letters[static_cast<std::size_t>(v)]));
    for (int v : p.right_singletons()) right.push_back(static_cast<Letter>(letters[static_cast<std::size_t>(v)]));
    out.add({Word(std::move(left)), Word(std::move(right))}, weight);
  }
  return out;
}

NCTensorPoly diff_partition(const WickExpander& wick, int i, const Word& w) {
  return wick.tensor_to_poly(diff_partition_vectors(wick.space(), i, w));
}

NCPoly cyclic_derivative(int i, const NCPoly& p) {
  NCPoly out;
  for (const auto& [key, c] : diff_quotient(i, p)) out.add(key.second + key.first, c);
  return out;
}

Scalar duality_residual(const FockSpace& space, const Word& u, int i, const FockVector& xi) {
  Scalar lhs = space.inner(xi, evaluate(space, monomial(u.reversed())));
  Scalar rhs(0);
  for (std::size_t p = 0; p < u.size(); ++p) {
    if (u[p] != i) continue;
    Scalar left = trace(space, monomial(u.slice(0, p)));
    if (left.is_zero()) continue;
    rhs += left * trace(space, monomial(u.slice(p + 1, u.size())));
  }
  return lhs - rhs;
}

Scalar duality_residual(const FockSpace& space, const Word& u, int i, int M) {
  return duality_residual(space, u, i, conjugate_series(space, i, M));
}

NCPoly gibbs_from_conjugates(const std::vector<NCPoly>& xi) {
  NCPoly v;
  for (std::size_t idx = 0; idx < xi.size(); ++idx) {
    const int i = static_cast<int>(idx + 1);
    for (const auto& [w, c] : xi[idx]) {
      if (w.empty()) throw std::domain_error("conjugate variable has a constant term; number operator not invertible");
      Scalar a = c / Scalar(static_cast<long>(2 * (1 + w.size())));
      v.add(w.prepend(i), a);
      v.add(w.append(i), a);
    }
  }
  return v;
}

NCPoly gibbs_potential(const WickExpander& wick, int M) {
  std::vector<NCPoly> xi;
  for (int i = 1; i <= wick.space().d(); ++i) xi.push_back(wick.vector_to_poly(conjugate_series(wick.space(), i, M)));
  return gibbs_from_conjugates(xi);
}

std::string to_string(const NCPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (!w.empty()) os << "*A[" << w.to_string() << "]";
  }
  return os.str();
}

}  // namespace qfock
