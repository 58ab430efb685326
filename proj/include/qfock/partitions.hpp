// Pair/singleton partitions of the families B(n+1), C(n+1) and D(n), each
// with a fixed geometric drawing from which crossings are counted.
//
// Drawing conventions (shared by all families):
//   * vertex v sits at x = n - v on the baseline y = 0, where n is the
//     largest vertex label;
//   * a pair is two vertical legs rising to its height, joined by a
//     horizontal segment;
//   * singletons rise to y = (max pair height) + 1.
// Heights: in B and C the pair containing 0 sits at 1 and the pair whose
// lower vertex is l sits at l + 1; in D the pair (a, b), a < b, sits at a.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qfock {

enum class Family : std::uint8_t { B, C, D };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct Point {
  std::int64_t x;
  std::int64_t y;
};

struct Block {
  int lo;  ///< smaller vertex (== hi for singletons)
  int hi;
  int height;  ///< 0 for singletons (they rise to the top line)
  bool singleton() const { return lo == hi; }
};

/// A crossing between two distinct blocks (indices into `blocks`), with the
/// number of geometric intersection points between their polylines.
struct BlockCrossing {
  int a;
  int b;
  int count;
};

class DrawnPartition {
 public:
  /// Builds the drawing for the given blocks. `n` is the largest vertex label
  /// (vertices are 0..n for B/C and 1..n for D).
  DrawnPartition(Family family, int n, std::vector<Block> blocks);

  Family family() const { return family_; }
  int n() const { return n_; }
  int vertex_count() const { return family_ == Family::D ? n_ : n_ + 1; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Partner of vertex 0 (families B and C), -1 for D.
  int partner0() const { return partner0_; }
  /// Index of the block containing a vertex.
  int block_of(int vertex) const;

  /// Pairs (including the pair containing 0).
  std::vector<Block> pairs() const;
  /// Singleton vertices, descending.
  std::vector<int> singletons() const;
  /// Singletons left of the 0-pair (vertices > partner0), descending.
  std::vector<int> left_singletons() const;
  /// Singletons between 0 and its partner, descending.
  std::vector<int> right_singletons() const;

  /// Polyline of a block (3 segments for a pair, 1 for a singleton).
  std::vector<Point> polyline(int block) const;
  int top() const { return top_; }

  /// Total number of intersection points between polylines of distinct
  /// blocks.
  int crossings() const { return total_crossings_; }
  const std::vector<BlockCrossing>& crossing_list() const { return crossing_list_; }

  /// Human-readable "{(0,3),(1,5),(2,4)|4}" form.
  std::string to_string() const;

 private:
  void compute_crossings();

  Family family_;
  int n_;
  std::vector<Block> blocks_;
  std::vector<int> owner_;  // vertex -> block index
  int partner0_ = -1;
  int top_ = 1;
  int total_crossings_ = 0;
  std::vector<BlockCrossing> crossing_list_;
};

/// Height rule for a pair in the given family.
int pair_height(Family family, int lo);

/// Builds a partition from pairs; every vertex not covered is a singleton.
DrawnPartition make_partition(Family family, int n, const std::vector<std::pair<int, int>>& pairs);

/// All partitions of the family on the vertex set of size `vertex_count`
/// (B/C: vertices 0..vertex_count-1, D: 1..vertex_count), in lexicographic
/// order of (partner0, pairing map). The returned list is cached and shared.
std::shared_ptr<const std::vector<DrawnPartition>> enumerate(Family family, int vertex_count);

/// True when the partition satisfies its family's drawing rules.
bool satisfies_rules(const DrawnPartition& p);

/// For a full pairing in B(2m) with partner0 = m: the permutation pi_p in
/// one-line form, perm[l-1] = partner(l) - m for l = 1..m-1. Throws
/// std::invalid_argument for partitions with singletons or partner0 != m.
std::vector<int> induced_permutation(const DrawnPartition& p);

int inversions(const std::vector<int>& perm);

/// Removes a singleton vertex and relabels the vertices above it.
DrawnPartition remove_singleton(const DrawnPartition& p, int vertex);

}  // namespace qfock
