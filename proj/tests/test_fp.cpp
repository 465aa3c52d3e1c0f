#include "doctest.h"
#include "pcc/fp.hpp"

#include <random>

using namespace pcc;

TEST_CASE("field arithmetic") {
  Fp f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(3) == 2);
  CHECK(f.norm(-1) == 4);
  CHECK_THROWS(Fp(4));
  CHECK_THROWS(Fp(1));
}

TEST_CASE("rref basic cases") {
  // identity over F_2: rank 2, pivots [0,1]
  auto I = Mat::identity(2, 2);
  auto r = rref(I);
  CHECK(r.rank == 2);
  CHECK(r.pivot_cols == std::vector<size_t>{0, 1});
  CHECK(r.reduced == I);

  // zero 3x3 over F_3: rank 0
  auto z = rref(Mat::zero(3, 3, 3));
  CHECK(z.rank == 0);
  CHECK(z.pivot_cols.empty());

  // [[1,2],[2,4]] over F_5: rank 1 (second row is a multiple of the first)
  auto m = Mat::from_rows(5, {{1, 2}, {2, 4}});
  CHECK(rref(m).rank == 1);
}

TEST_CASE("rref idempotent") {
  std::mt19937 rng(7);
  for (u32 p : {2u, 3u, 5u}) {
    for (int t = 0; t < 20; ++t) {
      size_t nr = 1 + rng() % 8, nc = 1 + rng() % 8;
      Mat m(p, nr, nc);
      for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) m.at(i, j) = rng() % p;
      auto r1 = rref(m);
      auto r2 = rref(r1.reduced);
      CHECK(r2.reduced == r1.reduced);
      CHECK(r2.rank == r1.rank);
    }
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(Mat::identity(2, 3)).cols() == 0);
  CHECK(kernel_basis(Mat::zero(3, 4, 4)).cols() == 4);

  // [[1,1]] over F_2: kernel spanned by (1,1) -- the only nonzero solution
  // among the 4 vectors of F_2^2.
  auto K = kernel_basis(Mat::from_rows(2, {{1, 1}}));
  REQUIRE(K.cols() == 1);
  CHECK(K.at(0, 0) == 1);
  CHECK(K.at(1, 0) == 1);
}

TEST_CASE("rank plus nullity") {
  std::mt19937 rng(11);
  for (u32 p : {2u, 3u, 5u}) {
    for (int t = 0; t < 30; ++t) {
      size_t nr = 1 + rng() % 8, nc = 1 + rng() % 8;
      Mat m(p, nr, nc);
      for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) m.at(i, j) = rng() % p;
      Mat K = kernel_basis(m);
      CHECK(rank_of(m) + K.cols() == nc);
      CHECK((m * K).is_zero());
      if (K.cols()) CHECK(rank_of(K) == K.cols());
    }
  }
}

TEST_CASE("solve") {
  auto I = Mat::identity(3, 3);
  auto b = Mat::col_vec(3, {1, 2, 0});
  auto x = solve(I, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK(!solve(Mat::zero(2, 2, 2), Mat::col_vec(2, {1, 0})).has_value());

  // [[1,1],[0,1]] x = (0,1) over F_2 -> x = (1,1): verified by plugging in,
  // unique because the matrix is invertible.
  auto A = Mat::from_rows(2, {{1, 1}, {0, 1}});
  auto x2 = solve(A, Mat::col_vec(2, {0, 1}));
  REQUIRE(x2.has_value());
  CHECK(*x2 == Mat::col_vec(2, {1, 1}));
}

TEST_CASE("solve consistency properties") {
  std::mt19937 rng(13);
  for (u32 p : {2u, 5u}) {
    for (int t = 0; t < 25; ++t) {
      size_t nr = 1 + rng() % 6, nc = 1 + rng() % 6;
      Mat A(p, nr, nc);
      for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) A.at(i, j) = rng() % p;
      Mat b(p, nr, 1);
      for (size_t i = 0; i < nr; ++i) b.at(i, 0) = rng() % p;
      auto x = solve(A, b);
      if (x) {
        CHECK(A * *x == b);
      } else {
        CHECK(rank_of(A.hstack(b)) == rank_of(A) + 1);
      }
    }
  }
}

TEST_CASE("quotient basis") {
  auto V = Mat::identity(2, 2);

  // W = V: quotient dim 0
  CHECK(quotient_basis(V, V).lift_basis.cols() == 0);

  // W = 0: quotient is all of V
  auto q0 = quotient_basis(V, Mat::zero(2, 2, 0));
  CHECK(q0.lift_basis.cols() == 2);
  CHECK(q0.project == Mat::identity(2, 2));

  // F_2^2 modulo span{(1,1)}: one-dimensional quotient (4 vectors, 2 cosets).
  auto W = Mat::col_vec(2, {1, 1});
  auto q = quotient_basis(V, W);
  REQUIRE(q.lift_basis.cols() == 1);
  // (1,1) must project to zero, the lift basis vector to 1
  auto pw = q.project * coords_in_basis(V, W);
  CHECK(pw.is_zero());
  auto pl = q.project * coords_in_basis(V, q.lift_basis);
  CHECK(pl.is_identity());

  CHECK_THROWS(quotient_basis(Mat::col_vec(2, {1, 0}), Mat::col_vec(2, {0, 1})));
}

TEST_CASE("intersection of spans") {
  auto A = Mat::from_rows(2, {{1, 0}, {0, 1}});
  auto B = Mat::col_vec(2, {1, 1});
  auto I = intersect_col_spans(A, B);
  CHECK(I.cols() == 1);
  auto A2 = Mat::col_vec(2, {1, 0});
  CHECK(intersect_col_spans(A2, B).cols() == 0);
}
