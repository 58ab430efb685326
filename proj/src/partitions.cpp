#include "qfock/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qfock {

std::string to_string(Family f) {
  switch (f) {
    case Family::B:
      return "B";
    case Family::C:
      return "C";
    case Family::D:
      return "D";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "B" || s == "b") return Family::B;
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  throw std::invalid_argument("unknown partition family: " + s);
}

int pair_height(Family family, int lo) {
  if (family == Family::D) return lo;
  return lo + 1;  // the 0-pair lands at height 1
}

namespace {

int orientation(const Point& a, const Point& b, const Point& c) {
  std::int64_t v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// 1 for a transversal interior intersection, 0 for disjoint segments.
// Any touching or overlap is a broken drawing.
int segment_intersections(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return 1;
  if ((o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) || (o3 == 0 && on_segment(c, d, a)) ||
      (o4 == 0 && on_segment(c, d, b)))
    throw std::logic_error("degenerate partition drawing: segments of distinct blocks touch");
  return 0;
}

}  // namespace

DrawnPartition::DrawnPartition(Family family, int n, std::vector<Block> blocks)
    : family_(family), n_(n), blocks_(std::move(blocks)) {
  const int first = family_ == Family::D ? 1 : 0;
  owner_.assign(static_cast<std::size_t>(n_ + 1), -1);
  int max_height = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& blk = blocks_[b];
    if (blk.lo > blk.hi) std::swap(blk.lo, blk.hi);
    for (int v : {blk.lo, blk.hi}) {
      if (v < first || v > n_) throw std::invalid_argument("partition vertex out of range");
      if (owner_[static_cast<std::size_t>(v)] != -1 && !(blk.singleton() && v == blk.hi))
        throw std::invalid_argument("partition blocks overlap");
      owner_[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
    if (blk.singleton()) {
      blk.height = 0;
    } else {
      max_height = std::max(max_height, blk.height);
      if (blk.lo == 0) partner0_ = blk.hi;
    }
  }
  for (int v = first; v <= n_; ++v)
    if (owner_[static_cast<std::size_t>(v)] == -1) throw std::invalid_argument("partition does not cover all vertices");
  top_ = max_height + 1;
  compute_crossings();
}

int DrawnPartition::block_of(int vertex) const { return owner_.at(static_cast<std::size_t>(vertex)); }

std::vector<Block> DrawnPartition::pairs() const {
  std::vector<Block> out;
  for (const auto& b : blocks_)
    if (!b.singleton()) out.push_back(b);
  return out;
}

std::vector<int> DrawnPartition::singletons() const {
  std::vector<int> out;
  for (const auto& b : blocks_)
    if (b.singleton()) out.push_back(b.lo);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<int> DrawnPartition::left_singletons() const {
  std::vector<int> out;
  for (int v : singletons())
    if (v > partner0_) out.push_back(v);
  return out;
}

std::vector<int> DrawnPartition::right_singletons() const {
  std::vector<int> out;
  for (int v : singletons())
    if (v < partner0_) out.push_back(v);
  return out;
}

std::vector<Point> DrawnPartition::polyline(int block) const {
  const auto& b = blocks_.at(static_cast<std::size_t>(block));
  const std::int64_t xl = n_ - b.lo;
  const std::int64_t xh = n_ - b.hi;
  if (b.singleton()) return {{xl, 0}, {xl, top_}};
  return {{xl, 0}, {xl, b.height}, {xh, b.height}, {xh, 0}};
}

void DrawnPartition::compute_crossings() {
  std::vector<std::vector<Point>> lines;
  lines.reserve(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) lines.push_back(polyline(static_cast<int>(b)));
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks_.size(); ++b) {
      int count = 0;
      const auto& la = lines[a];
      const auto& lb = lines[b];
      for (std::size_t s = 0; s + 1 < la.size(); ++s)
        for (std::size_t t = 0; t + 1 < lb.size(); ++t) count += segment_intersections(la[s], la[s + 1], lb[t], lb[t + 1]);
      if (count) {
        crossing_list_.push_back({static_cast<int>(a), static_cast<int>(b), count});
        total_crossings_ += count;
      }
    }
  }
}

std::string DrawnPartition::to_string() const {
  std::ostringstream os;
  os << qfock::to_string(family_) << "(" << vertex_count() << "){";
  bool first = true;
  for (const auto& b : pairs()) {
    os << (first ? "" : ",") << "(" << b.lo << "," << b.hi << ")";
    first = false;
  }
  os << "|";
  first = true;
  for (int s : singletons()) {
    os << (first ? "" : ",") << s;
    first = false;
  }
  os << "}";
  return os.str();
}

DrawnPartition make_partition(Family family, int n, const std::vector<std::pair<int, int>>& pairs) {
  const int first = family == Family::D ? 1 : 0;
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  std::vector<Block> blocks;
  for (auto [a, b] : pairs) {
    int lo = std::min(a, b);
    int hi = std::max(a, b);
    if (lo < first || hi > n || lo == hi) throw std::invalid_argument("bad pair in partition");
    if (used[static_cast<std::size_t>(lo)] || used[static_cast<std::size_t>(hi)])
      throw std::invalid_argument("vertex paired twice");
    used[static_cast<std::size_t>(lo)] = used[static_cast<std::size_t>(hi)] = true;
    blocks.push_back({lo, hi, pair_height(family, lo)});
  }
  for (int v = first; v <= n; ++v)
    if (!used[static_cast<std::size_t>(v)]) blocks.push_back({v, v, 0});
  return DrawnPartition(family, n, std::move(blocks));
}

namespace {

// B and C: vertex 0 paired with k; each l in 1..k-1 mapped into k+1..n
// (C additionally allows l to stay a singleton, encoded as target 0).
void enumerate_bc(Family family, int n, std::vector<DrawnPartition>& out) {
  const bool allow_singletons = family == Family::C;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> target(static_cast<std::size_t>(k), 0);  // target[l]
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    auto emit = [&]() {
      std::vector<std::pair<int, int>> pairs{{0, k}};
      for (int l = 1; l < k; ++l)
        if (target[static_cast<std::size_t>(l)]) pairs.emplace_back(l, target[static_cast<std::size_t>(l)]);
      out.push_back(make_partition(family, n, pairs));
    };
    auto rec = [&](auto&& self, int l) -> void {
      if (l == k) {
        emit();
        return;
      }
      if (allow_singletons) {
        target[static_cast<std::size_t>(l)] = 0;
        self(self, l + 1);
      }
      for (int t = k + 1; t <= n; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        used[static_cast<std::size_t>(t)] = true;
        target[static_cast<std::size_t>(l)] = t;
        self(self, l + 1);
        used[static_cast<std::size_t>(t)] = false;
      }
      target[static_cast<std::size_t>(l)] = 0;
    };
    rec(rec, 1);
  }
}

void enumerate_d(int n, std::vector<DrawnPartition>& out) {
  std::vector<int> partner(static_cast<std::size_t>(n + 1), 0);
  auto rec = [&](auto&& self, int v) -> void {
    while (v <= n && partner[static_cast<std::size_t>(v)] != 0) ++v;
    if (v > n) {
      std::vector<std::pair<int, int>> pairs;
      for (int a = 1; a <= n; ++a) {
        int b = partner[static_cast<std::size_t>(a)];
        if (b > a) pairs.emplace_back(a, b);
      }
      out.push_back(make_partition(Family::D, n, pairs));
      return;
    }
    partner[static_cast<std::size_t>(v)] = v;
    self(self, v + 1);
    for (int u = v + 1; u <= n; ++u) {
      if (partner[static_cast<std::size_t>(u)] != 0) continue;
      partner[static_cast<std::size_t>(v)] = u;
      partner[static_cast<std::size_t>(u)] = v;
      self(self, v + 1);
      partner[static_cast<std::size_t>(u)] = 0;
    }
    partner[static_cast<std::size_t>(v)] = 0;
  };
  rec(rec, 1);
}

}  // namespace

std::shared_ptr<const std::vector<DrawnPartition>> enumerate(Family family, int vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("enumerate: negative vertex count");
  static std::mutex mutex;
  static std::map<std::pair<Family, int>, std::shared_ptr<const std::vector<DrawnPartition>>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({family, vertex_count});
    if (it != cache.end()) return it->second;
  }
  auto list = std::make_shared<std::vector<DrawnPartition>>();
  if (family == Family::D)
    enumerate_d(vertex_count, *list);
  else if (vertex_count >= 1)
    enumerate_bc(family, vertex_count - 1, *list);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(family, vertex_count), std::move(list));
  return it->second;
}

bool satisfies_rules(const DrawnPartition& p) {
  const auto& blocks = p.blocks();
  const int n = p.n();
  for (const auto& b : blocks) {
    if (b.singleton()) continue;
    if (b.height != pair_height(p.family(), b.lo)) return false;
  }
  if (p.family() == Family::D) return true;
  const int k = p.partner0();
  if (k < 1 || k > n) return false;
  for (int v = 1; v <= n; ++v) {
    if (v == k) continue;
    const auto& b = blocks[static_cast<std::size_t>(p.block_of(v))];
    if (v < k) {
      bool paired_left = !b.singleton() && b.hi > k;
      if (!paired_left && !(p.family() == Family::C && b.singleton())) return false;
    } else if (!b.singleton() && b.lo >= k) {
      // a vertex left of k may only be paired with something in 1..k-1
      return false;
    }
  }
  return true;
}

std::vector<int> induced_permutation(const DrawnPartition& p) {
  if (p.family() != Family::B) throw std::invalid_argument("induced_permutation needs a B partition");
  const int n = p.n();
  if (n % 2 == 0) throw std::invalid_argument("induced_permutation needs an even vertex count");
  const int m = (n + 1) / 2;
  if (p.partner0() != m) throw std::invalid_argument("induced_permutation needs partner0 = m");
  if (!p.singletons().empty()) throw std::invalid_argument("induced_permutation needs a full pairing");
  std::vector<int> perm;
  for (int l = 1; l < m; ++l) {
    const auto& b = p.blocks()[static_cast<std::size_t>(p.block_of(l))];
    perm.push_back(b.hi - m);
  }
  return perm;
}

int inversions(const std::vector<int>& perm) {
  int count = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++count;
  return count;
}

DrawnPartition remove_singleton(const DrawnPartition& p, int vertex) {
  const auto& blk = p.blocks().at(static_cast<std::size_t>(p.block_of(vertex)));
  if (!blk.singleton()) throw std::invalid_argument("remove_singleton: vertex is paired");
  auto shift = [vertex](int v) { return v > vertex ? v - 1 : v; };
  std::vector<std::pair<int, int>> pairs;
  for (const auto& b : p.pairs()) pairs.emplace_back(shift(b.lo), shift(b.hi));
  return make_partition(p.family(), p.n() - 1, pairs);
}

}  // namespace qfock
