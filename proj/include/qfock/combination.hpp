// Finitely supported linear combinations Key -> Scalar with no stored zeros.
// The Tag parameter keeps Fock vectors, polynomials and tensor polynomials
// apart as types even when they share a key type.

#pragma once

#include <map>
#include <utility>

#include "qfock/scalar.hpp"

namespace qfock {

template <class Key, class Tag>
class Combination {
 public:
  using key_type = Key;
  using container = std::map<Key, Scalar>;
  using const_iterator = typename container::const_iterator;

  Combination() = default;
  explicit Combination(const Key& k, Scalar c = Scalar(1)) { add(k, std::move(c)); }

  static Combination zero() { return {}; }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add(const Combination& other, const Scalar& scale = Scalar(1)) {
    if (scale.is_zero()) return;
    const bool unit = scale.is_one();
    for (const auto& [k, c] : other.terms_) add(k, unit ? c : c * scale);
  }

  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const container& terms() const { return terms_; }

  Combination& operator+=(const Combination& o) {
    add(o);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    add(o, Scalar(-1));
    return *this;
  }
  Combination& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(Combination a, const Scalar& s) { return a *= s; }
  friend Combination operator*(const Scalar& s, Combination a) { return a *= s; }

  friend bool operator==(const Combination& a, const Combination& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    }
    return true;
  }

  /// Keeps the terms whose key satisfies the predicate.
  template <class Pred>
  Combination filter(Pred pred) const {
    Combination out;
    for (const auto& [k, c] : terms_)
      if (pred(k)) out.terms_.emplace(k, c);
    return out;
  }

  /// Largest coefficient magnitude (zero for the empty combination).
  Rational max_magnitude() const {
    Rational m(0);
    for (const auto& [k, c] : terms_) {
      Rational x = c.magnitude();
      if (x > m) m = x;
    }
    return m;
  }

 private:
  container terms_;
};

}  // namespace qfock
