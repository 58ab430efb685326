#include "qfock/fock.hpp"

#include <algorithm>
#include <numeric>

namespace qfock {

struct FockSpace::Factorization {
  std::size_t size = 0;
  std::vector<Scalar> lu;  // unit lower and upper factors, row-major
  std::vector<std::size_t> perm;

  std::vector<Scalar> solve(std::vector<Scalar> b) const {
    std::vector<Scalar> x(size);
    for (std::size_t r = 0; r < size; ++r) x[r] = b[perm[r]];
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < r; ++c)
        if (!lu[r * size + c].is_zero() && !x[c].is_zero()) x[r] -= lu[r * size + c] * x[c];
    for (std::size_t r = size; r-- > 0;) {
      for (std::size_t c = r + 1; c < size; ++c)
        if (!lu[r * size + c].is_zero() && !x[c].is_zero()) x[r] -= lu[r * size + c] * x[c];
      x[r] /= lu[r * size + r];
    }
    return x;
  }
};

namespace {

std::size_t power(int d, std::size_t n) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < n; ++k) p *= static_cast<std::size_t>(d);
  return p;
}

}  // namespace

InversionTable inversion_table(int d, int n) {
  InversionTable t;
  t.words = power(d, static_cast<std::size_t>(n));
  t.width = static_cast<std::size_t>(n * (n - 1) / 2 + 1);
  t.counts.assign(t.words * t.words * t.width, 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<Letter> image(static_cast<std::size_t>(n));
  for (std::size_t wi = 0; wi < t.words; ++wi) {
    Word w = Word::from_index(wi, static_cast<std::size_t>(n), d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inv;
      std::size_t ui = 0;
      for (int p = 0; p < n; ++p)
        ui = ui * static_cast<std::size_t>(d) + static_cast<std::size_t>(w[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])] - 1);
      ++t.counts[(ui * t.words + wi) * t.width + inv];
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return t;
}

FockVector basis(const Word& w) { return FockVector(w); }

FockVector level_part(const FockVector& v, std::size_t n) {
  return v.filter([n](const Word& w) { return w.size() == n; });
}

int max_level(const FockVector& v) {
  int m = -1;
  for (const auto& [w, c] : v) m = std::max(m, static_cast<int>(w.size()));
  return m;
}

FockSpace::FockSpace(DeformationMatrix q, int level) : q_(std::move(q)), level_(level) {
  if (level_ < 0) throw std::invalid_argument("truncation level must be nonnegative");
}

void FockSpace::check_level(std::size_t n) const {
  if (n > static_cast<std::size_t>(level_))
    throw TruncationError("vector component at level " + std::to_string(n) + " exceeds truncation level " +
                          std::to_string(level_));
}

FockVector FockSpace::annihilate(int i, const FockVector& v) const {
  FockVector out;
  for (const auto& [w, c] : v) {
    Scalar weight(1);
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] == i) out.add(w.erase(p), c * weight);
      weight *= q_(i, w[p]);
      if (weight.is_zero()) break;
    }
  }
  return out;
}

FockVector FockSpace::create(int i, const FockVector& v) const {
  FockVector out;
  for (const auto& [w, c] : v) {
    check_level(w.size() + 1);
    out.add(w.prepend(i), c);
  }
  return out;
}

FockVector FockSpace::gaussian(int i, const FockVector& v) const {
  FockVector out = create(i, v);
  out += annihilate(i, v);
  return out;
}

FockVector FockSpace::right_annihilate(int i, const FockVector& v) const {
  FockVector out;
  for (const auto& [w, c] : v)
    if (!w.empty() && w[w.size() - 1] == i) out.add(w.slice(0, w.size() - 1), c);
  return out;
}

FockVector FockSpace::right_annihilate_adjoint(int i, const FockVector& v) const {
  std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> by_level;
  for (const auto& [w, c] : v) {
    check_level(w.size() + 1);
    by_level[w.size()].emplace_back(w.index(d()), c);
  }
  FockVector out;
  for (const auto& [n, entries] : by_level) {
    const auto& g = gram(static_cast<int>(n));
    const std::size_t big = power(d(), n + 1);
    std::vector<Scalar> b(big);
    for (std::size_t r = 0; r < g.size; ++r) {
      Scalar y(0);
      for (const auto& [col, c] : entries)
        if (!g(r, col).is_zero()) y += g(r, col) * c;
      b[r * static_cast<std::size_t>(d()) + static_cast<std::size_t>(i - 1)] = y;
    }
    auto z = factorization(static_cast<int>(n + 1)).solve(std::move(b));
    for (std::size_t r = 0; r < big; ++r) out.add(Word::from_index(r, n + 1, d()), z[r]);
  }
  return out;
}

Scalar FockSpace::inner(const FockVector& u, const FockVector& v) const {
  std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> ul;
  std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> vl;
  for (const auto& [w, c] : u) ul[w.size()].emplace_back(w.index(d()), c);
  for (const auto& [w, c] : v) vl[w.size()].emplace_back(w.index(d()), c);
  Scalar total(0);
  for (const auto& [n, ue] : ul) {
    auto it = vl.find(n);
    if (it == vl.end()) continue;
    const auto& g = gram(static_cast<int>(n));
    for (const auto& [a, ca] : ue)
      for (const auto& [b, cb] : it->second)
        if (!g(a, b).is_zero()) total += ca * g(a, b) * cb;
  }
  return total;
}

LevelMatrix FockSpace::gram_permutation_sum(int n) const {
  if (!q_.is_constant()) throw std::invalid_argument("permutation-sum Gram needs a constant deformation");
  const auto table = inversion_table(d(), n);
  std::vector<Scalar> powers(table.width);
  Scalar qk(1);
  for (auto& p : powers) {
    p = qk;
    qk *= q_.scalar();
  }
  LevelMatrix g;
  g.size = table.words;
  g.entries.assign(g.size * g.size, Scalar(0));
  for (std::size_t r = 0; r < g.size; ++r)
    for (std::size_t c = 0; c < g.size; ++c) {
      const auto* row = &table.counts[(r * g.size + c) * table.width];
      Scalar s(0);
      for (std::size_t k = 0; k < table.width; ++k)
        if (row[k]) s += Scalar(static_cast<long>(row[k])) * powers[k];
      g(r, c) = s;
    }
  return g;
}

namespace {

// <e_{iu}, e_w> = <e_u, l_i e_w>.
LevelMatrix recursive_step(const DeformationMatrix& q, const LevelMatrix& prev, int n) {
  const int d = q.d();
  LevelMatrix g;
  g.size = prev.size * static_cast<std::size_t>(d);
  g.entries.assign(g.size * g.size, Scalar(0));
  for (std::size_t wi = 0; wi < g.size; ++wi) {
    Word w = Word::from_index(wi, static_cast<std::size_t>(n), d);
    for (int i = 1; i <= d; ++i) {
      Scalar weight(1);
      for (std::size_t p = 0; p < w.size(); ++p) {
        if (w[p] == i) {
          std::size_t col = w.erase(p).index(d);
          std::size_t base = static_cast<std::size_t>(i - 1) * prev.size;
          for (std::size_t ui = 0; ui < prev.size; ++ui)
            if (!prev(ui, col).is_zero()) g(base + ui, wi) += weight * prev(ui, col);
        }
        weight *= q(i, w[p]);
      }
    }
  }
  return g;
}

}  // namespace

LevelMatrix FockSpace::gram_recursive(int n) const {
  LevelMatrix g;
  g.size = 1;
  g.entries = {Scalar(1)};
  for (int k = 1; k <= n; ++k) g = recursive_step(q_, g, k);
  return g;
}

const LevelMatrix& FockSpace::gram(int n) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = gram_cache_.find(n);
    if (it != gram_cache_.end()) return *it->second;
  }
  std::shared_ptr<LevelMatrix> g;
  if (n == 0) {
    g = std::make_shared<LevelMatrix>(LevelMatrix{1, {Scalar(1)}});
  } else if (q_.is_constant() && n <= 8) {
    g = std::make_shared<LevelMatrix>(gram_permutation_sum(n));
  } else {
    g = std::make_shared<LevelMatrix>(recursive_step(q_, gram(n - 1), n));
  }
  std::lock_guard lock(cache_mutex_);
  auto [it, inserted] = gram_cache_.emplace(n, std::move(g));
  return *it->second;
}

const FockSpace::Factorization& FockSpace::factorization(int n) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = lu_cache_.find(n);
    if (it != lu_cache_.end()) return *it->second;
  }
  const auto& g = gram(n);
  auto f = std::make_shared<Factorization>();
  f->size = g.size;
  f->lu = g.entries;
  f->perm.resize(g.size);
  std::iota(f->perm.begin(), f->perm.end(), 0);
  const std::size_t s = g.size;
  auto& a = f->lu;
  for (std::size_t k = 0; k < s; ++k) {
    std::size_t pivot = k;
    while (pivot < s && a[pivot * s + k].is_zero()) ++pivot;
    if (pivot == s) throw std::domain_error("Gram matrix is singular at level " + std::to_string(n));
    if (pivot != k) {
      for (std::size_t c = 0; c < s; ++c) std::swap(a[k * s + c], a[pivot * s + c]);
      std::swap(f->perm[k], f->perm[pivot]);
    }
    for (std::size_t r = k + 1; r < s; ++r) {
      if (a[r * s + k].is_zero()) continue;
      Scalar factor = a[r * s + k] / a[k * s + k];
      a[r * s + k] = factor;
      for (std::size_t c = k + 1; c < s; ++c)
        if (!a[k * s + c].is_zero()) a[r * s + c] -= factor * a[k * s + c];
    }
  }
  std::lock_guard lock(cache_mutex_);
  auto [it, inserted] = lu_cache_.emplace(n, std::move(f));
  return *it->second;
}

}  // namespace qfock
