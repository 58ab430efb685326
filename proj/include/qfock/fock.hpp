// Truncated q_ij-deformed Fock space: basis words of length <= L, the
// twisted inner product and the creation/annihilation operators.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "qfock/combination.hpp"
#include "qfock/deformation.hpp"
#include "qfock/word.hpp"

namespace qfock {

struct FockTag {};
using FockVector = Combination<Word, FockTag>;

/// Raised when an operator would produce a vector above the truncation level.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Dense level-n matrix indexed by Word::index.
struct LevelMatrix {
  std::size_t size = 0;
  std::vector<Scalar> entries;
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries[r * size + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return entries[r * size + c]; }
};

/// For every pair of level-n words (u, w), the number of permutations pi with
/// pi(w) = u, split by inversion count: counts[(u * N + w) * width + k].
struct InversionTable {
  std::size_t words = 0;
  std::size_t width = 0;  // max inversions + 1
  std::vector<std::uint32_t> counts;
};
InversionTable inversion_table(int d, int n);

FockVector basis(const Word& w);

class FockSpace {
 public:
  FockSpace(DeformationMatrix q, int level);

  int d() const { return q_.d(); }
  int level() const { return level_; }
  const DeformationMatrix& deformation() const { return q_; }
  const Scalar& q(int i, int j) const { return q_(i, j); }

  /// Left annihilation l_i.
  FockVector annihilate(int i, const FockVector& v) const;
  /// Left creation l_i^*; throws TruncationError on a level-L component.
  FockVector create(int i, const FockVector& v) const;
  /// A_i = l_i + l_i^*.
  FockVector gaussian(int i, const FockVector& v) const;

  /// r_i e_{wj} = delta_{ij} e_w.
  FockVector right_annihilate(int i, const FockVector& v) const;
  /// Adjoint of r_i for the twisted inner product.
  FockVector right_annihilate_adjoint(int i, const FockVector& v) const;

  Scalar inner(const FockVector& u, const FockVector& v) const;
  Scalar norm_squared(const FockVector& v) const { return inner(v, v); }
  /// Vacuum coefficient.
  static Scalar trace(const FockVector& v) { return v.coefficient(Word{}); }

  /// Level-n Gram matrix (cached). For a constant deformation it is the
  /// permutation sum, otherwise the annihilation recursion.
  const LevelMatrix& gram(int n) const;
  /// Both constructions, uncached, for cross-checking.
  LevelMatrix gram_permutation_sum(int n) const;
  LevelMatrix gram_recursive(int n) const;

 private:
  struct Factorization;
  const Factorization& factorization(int n) const;
  void check_level(std::size_t n) const;

  DeformationMatrix q_;
  int level_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::shared_ptr<const LevelMatrix>> gram_cache_;
  mutable std::map<int, std::shared_ptr<const Factorization>> lu_cache_;
};

/// Level-n part of a vector.
FockVector level_part(const FockVector& v, std::size_t n);
/// Largest word length present (-1 for zero).
int max_level(const FockVector& v);

}  // namespace qfock
