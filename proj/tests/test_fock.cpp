#include <random>

#include "doctest.h"
#include "qfock/fock.hpp"
#include "qfock/qnumbers.hpp"

using namespace qfock;

namespace {

const Scalar q = Scalar::q();

FockVector random_vector(std::mt19937_64& rng, int d, int max_len, int terms) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, d);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  FockVector v;
  for (int t = 0; t < terms; ++t) {
    std::vector<Letter> w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = static_cast<Letter>(letter(rng));
    v.add(Word(std::move(w)), Scalar(frac(num(rng), den(rng))));
  }
  return v;
}

DeformationMatrix mixed() {
  return DeformationMatrix::from_entries(2, {Scalar(frac(1, 3)), Scalar(frac(1, 5)), Scalar(frac(1, 5)),
                                             Scalar(frac(-1, 4))});
}

}  // namespace

TEST_CASE("left annihilation") {
  FockSpace s(DeformationMatrix::constant(2, q), 4);
  CHECK(s.annihilate(1, basis({2, 1})) == basis({2}) * q);
  CHECK(s.annihilate(1, basis({})).is_zero());
  FockSpace free(DeformationMatrix::constant(2, Scalar(0)), 4);
  CHECK(free.annihilate(1, basis({1, 2, 1})) == basis({2, 1}));
}

TEST_CASE("creation and the q-Gaussian") {
  FockSpace s(DeformationMatrix::constant(2, q), 3);
  CHECK(s.create(1, basis({})) == basis({1}));
  CHECK(s.create(2, basis({1})) == basis({2, 1}));
  CHECK(s.gaussian(2, basis({})) == basis({2}));
  CHECK_THROWS_AS(s.create(1, basis({1, 1, 2})), TruncationError);

  FockSpace one(DeformationMatrix::constant(1, q), 8);
  for (std::size_t n = 1; n < 8; ++n) {
    FockVector expected = basis(Word::repeat(1, n + 1)) + basis(Word::repeat(1, n - 1)) * q_int(static_cast<int>(n));
    CHECK(one.gaussian(1, basis(Word::repeat(1, n))) == expected);
  }
}

TEST_CASE("twisted inner product") {
  FockSpace one(DeformationMatrix::constant(1, q), 7);
  for (std::size_t n = 0; n <= 7; ++n) {
    CHECK(one.inner(basis(Word::repeat(1, n)), basis(Word::repeat(1, n))) == q_factorial(static_cast<int>(n)));
    if (n) CHECK(one.inner(basis(Word::repeat(1, n)), basis(Word::repeat(1, n - 1))) == Scalar(0));
  }
  FockSpace two(DeformationMatrix::constant(2, q), 4);
  CHECK(two.inner(basis({1, 2}), basis({2, 1})) == q);
  CHECK(two.inner(basis({1, 1}), basis({1, 1})) == Scalar(1) + q);
  FockSpace free(DeformationMatrix::constant(2, Scalar(0)), 4);
  for (const auto& u : Word::all_up_to(2, 3))
    for (const auto& v : Word::all_up_to(2, 3))
      CHECK(free.inner(basis(u), basis(v)) == Scalar(u == v ? 1 : 0));
}

TEST_CASE("right annihilation and its adjoint") {
  FockSpace s(DeformationMatrix::constant(2, q), 4);
  CHECK(s.right_annihilate(1, basis({2, 1})) == basis({2}));
  CHECK(s.right_annihilate(2, basis({2, 1})).is_zero());
  CHECK(s.right_annihilate(1, basis({})).is_zero());

  FockSpace one(DeformationMatrix::constant(1, q), 7);
  for (std::size_t m = 0; m < 7; ++m) {
    auto got = one.right_annihilate_adjoint(1, basis(Word::repeat(1, m)));
    CHECK(got == basis(Word::repeat(1, m + 1)) * (Scalar(1) / q_int(static_cast<int>(m) + 1)));
  }

  FockSpace free(DeformationMatrix::constant(2, Scalar(0)), 4);
  for (const auto& w : Word::all_up_to(2, 3))
    for (int i = 1; i <= 2; ++i) CHECK(free.right_annihilate_adjoint(i, basis(w)) == basis(w.append(i)));
}

TEST_CASE("vacuum state") {
  FockSpace s(DeformationMatrix::constant(1, q), 4);
  CHECK(FockSpace::trace(basis({})) == Scalar(1));
  FockVector v = basis({});
  for (int k = 0; k < 4; ++k) v = s.gaussian(1, v);
  CHECK(FockSpace::trace(v) == Scalar(2) + q);
  CHECK(FockSpace::trace(basis({1, 1})) == Scalar(0));
}

TEST_CASE("q-commutation relations") {
  for (const auto& m : {DeformationMatrix::constant(2, q), mixed()}) {
    FockSpace s(m, 5);
    for (const auto& w : Word::all_up_to(2, 4)) {
      for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
          FockVector e = basis(w);
          FockVector lhs = s.annihilate(i, s.create(j, e)) - s.create(j, s.annihilate(i, e)) * s.q(i, j);
          CHECK(lhs == (i == j ? e : FockVector{}));
        }
      }
    }
  }
}

TEST_CASE("adjointness of creation and annihilation") {
  std::mt19937_64 rng(11);
  for (const auto& m : {DeformationMatrix::constant(2, Scalar(frac(1, 2))), mixed()}) {
    FockSpace s(m, 6);
    for (int t = 0; t < 20; ++t) {
      FockVector u = random_vector(rng, 2, 5, 6);
      FockVector v = random_vector(rng, 2, 6, 6);
      for (int i = 1; i <= 2; ++i) {
        CHECK(s.inner(s.create(i, u), v) == s.inner(u, s.annihilate(i, v)));
        CHECK(s.inner(s.right_annihilate_adjoint(i, u), v) == s.inner(u, s.right_annihilate(i, v)));
      }
    }
  }
}

TEST_CASE("recursive Gram equals the permutation sum for a constant matrix") {
  FockSpace s(DeformationMatrix::constant(2, q), 6);
  for (int n = 0; n <= 6; ++n) {
    auto a = s.gram_permutation_sum(n);
    auto b = s.gram_recursive(n);
    REQUIRE(a.size == b.size);
    bool same = true;
    for (std::size_t k = 0; k < a.entries.size(); ++k) same = same && a.entries[k] == b.entries[k];
    CHECK(same);
  }
}

TEST_CASE("constant matrix reduces to the scalar path") {
  std::mt19937_64 rng(5);
  const Scalar half(frac(1, 2));
  FockSpace scalar_path(DeformationMatrix::constant(2, half), 5);
  FockSpace matrix_path(DeformationMatrix::from_entries(2, {half, half, half, half}), 5);
  CHECK(scalar_path.deformation().is_constant());
  CHECK(matrix_path.deformation().is_constant());
  for (int t = 0; t < 10; ++t) {
    FockVector u = random_vector(rng, 2, 4, 5);
    FockVector v = random_vector(rng, 2, 5, 5);
    CHECK(scalar_path.inner(u, v) == matrix_path.inner(u, v));
    for (int i = 1; i <= 2; ++i) {
      CHECK(scalar_path.annihilate(i, v) == matrix_path.annihilate(i, v));
      CHECK(scalar_path.right_annihilate_adjoint(i, u) == matrix_path.right_annihilate_adjoint(i, u));
    }
  }
}

TEST_CASE("word indexing round trip") {
  for (std::size_t n = 0; n <= 4; ++n) {
    auto all = Word::all(3, n);
    for (std::size_t k = 0; k < all.size(); ++k) {
      CHECK(all[k].index(3) == k);
      CHECK(Word::from_index(k, n, 3) == all[k]);
    }
  }
}
