#include "doctest.h"
#include "pcc/algebra.hpp"

#include <random>

using namespace pcc;

namespace {

AlgebraPtr D2() { return truncated_poly_algebra(2, 2); }

// random quotient of a free module, used as a generic module source
ModulePtr random_module(const AlgebraPtr& A, std::mt19937& rng, size_t rank = 2) {
  auto parts = std::vector<ModulePtr>(rank, regular_module(A));
  auto F = direct_sum_module(parts);
  Mat gens(A->p, F->dim, 2);
  for (size_t i = 0; i < F->dim; ++i)
    for (size_t j = 0; j < 2; ++j) gens.at(i, j) = rng() % A->p;
  auto sub = submodule_generated(F, gens);
  return quotient_by_submodule(F, sub.basis).quot;
}

}  // namespace

TEST_CASE("algebra construction and validation") {
  auto A = D2();
  CHECK(A->dim == 2);
  auto e = basis_elem(*A, 1);
  CHECK(alg_mul(*A, e, e) == std::vector<u32>{0, 0});  // x^2 = 0

  // broken associativity must be rejected: b*b = 1 with b*1 = 0 is not unital
  std::vector<std::vector<std::vector<u32>>> bad{{{0, 1}, {1, 0}}, {{1, 0}, {1, 0}}};
  CHECK_THROWS(make_algebra(2, {"1", "b"}, bad, {1, 0}, "bad"));
}

TEST_CASE("path algebra of a line quiver") {
  auto A2 = path_algebra_line(2, 2);
  CHECK(A2->dim == 3);  // e0, e1, arrow
  auto A3 = path_algebra_line(2, 3);
  CHECK(A3->dim == 6);  // 3 vertices + 2 arrows + 1 length-2 path
  std::vector<std::pair<size_t, size_t>> loop{{0, 0}};
  CHECK_THROWS(path_algebra(2, 1, loop));
}

TEST_CASE("triangular algebra") {
  auto F2 = truncated_poly_algebra(2, 1);
  auto T = triangular_algebra(F2);
  CHECK(T->dim == 3);
  CHECK(simples(T).size() == 2);
  auto TD2 = triangular_algebra(D2());
  CHECK(TD2->dim == 6);
}

TEST_CASE("radical") {
  CHECK(radical_basis(truncated_poly_algebra(2, 1)).cols() == 0);
  CHECK(radical_basis(D2()).cols() == 1);
  CHECK(radical_basis(truncated_poly_algebra(2, 3)).cols() == 2);
  CHECK(radical_basis(truncated_poly_algebra(5, 3)).cols() == 2);
  CHECK(radical_basis(path_algebra_line(2, 2)).cols() == 1);
  CHECK(radical_basis(path_algebra_line(3, 3)).cols() == 3);

  // F_2[x]/(x^2+x) = F_2 x F_2 is semisimple
  std::vector<std::vector<std::vector<u32>>> sc{{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}};
  auto B = make_algebra(2, {"1", "x"}, sc, {1, 0}, "F2xF2");
  CHECK(radical_basis(B).cols() == 0);

  // F_4 as an F_2-algebra: x^2 = x + 1, a field, radical zero
  std::vector<std::vector<std::vector<u32>>> f4{{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}};
  (void)f4;
  CHECK(loewy_length(D2()) == 2);
  CHECK(loewy_length(truncated_poly_algebra(2, 3)) == 3);
  CHECK(loewy_length(truncated_poly_algebra(2, 1)) == 1);
}

TEST_CASE("module hom dimensions") {
  auto A = D2();
  auto reg = regular_module(A);
  auto k = simples(A)[0];
  CHECK(k->dim == 1);
  // Hom(Lambda, M) = M
  CHECK(module_hom(reg, reg).dim() == 2);
  CHECK(module_hom(reg, k).dim() == 1);
  // Hom(k, D2) = socle, dim 1: a map sends 1 to an x-killed element
  CHECK(module_hom(k, reg).dim() == 1);

  auto A2 = path_algebra_line(2, 2);
  auto projs = proj_indecs(A2);
  REQUIRE(projs.size() == 2);
  const ModulePtr& P1 = projs[0].proj->dim == 2 ? projs[0].proj : projs[1].proj;
  const ModulePtr& P2 = projs[0].proj->dim == 1 ? projs[0].proj : projs[1].proj;
  CHECK(P1->dim == 2);
  CHECK(P2->dim == 1);
  // the nonzero hom is the radical inclusion of the sink projective into the
  // source projective; the other direction would have to kill the radical and
  // hit a vertex component that is not there
  CHECK(module_hom(P2, P1).dim() == 1);
  CHECK(module_hom(P1, P2).dim() == 0);
}

TEST_CASE("socle and socle series") {
  auto A = D2();
  auto reg = regular_module(A);
  CHECK(socle(reg).sub->dim == 1);

  auto k = simples(A)[0];
  CHECK(socle(k).sub->dim == 1);  // semisimple: socle is everything

  auto s = socle_series(reg, 3);
  CHECK(s.terms[1]->dim == 1);
  CHECK(s.terms[2]->dim == 2);
  CHECK(s.terms[3]->dim == 2);

  auto A3x = truncated_poly_algebra(2, 3);
  auto s3 = socle_series(regular_module(A3x), 3);
  CHECK(s3.terms[1]->dim == 1);
  CHECK(s3.terms[2]->dim == 2);
  CHECK(s3.terms[3]->dim == 3);

  auto A2 = path_algebra_line(2, 2);
  auto projs = proj_indecs(A2);
  const ModulePtr& P1 = projs[0].proj->dim == 2 ? projs[0].proj : projs[1].proj;
  auto socP1 = socle(P1);
  CHECK(socP1.sub->dim == 1);
  // socle of P_1 is the simple at the sink vertex
  bool matched = false;
  for (auto& S : simples(A2))
    if (iso_simples(S, socP1.sub)) matched = true;
  CHECK(matched);
}

TEST_CASE("simples and projectives") {
  auto A = D2();
  CHECK(simples(A).size() == 1);
  CHECK(proj_indecs(A).size() == 1);
  CHECK(proj_indecs(A)[0].proj->dim == 2);

  auto A2 = path_algebra_line(2, 2);
  CHECK(simples(A2).size() == 2);

  auto A3 = path_algebra_line(2, 3);
  CHECK(simples(A3).size() == 3);
  size_t total = 0;
  for (auto& pd : proj_indecs(A3)) total += pd.proj->dim * pd.multiplicity;
  CHECK(total == A3->dim);

  auto F2 = truncated_poly_algebra(2, 1);
  CHECK(simples(F2).size() == 1);
  CHECK(proj_indecs(F2)[0].proj->dim == 1);
}

TEST_CASE("projective covers") {
  auto A = D2();
  auto k = simples(A)[0];
  auto cov = projective_cover(k);
  CHECK(cov.cover.src->dim == 2);
  CHECK(cov.kernel_basis.cols() == 1);

  // minimality: kernel inside P.rad
  const Mat& rad = radical_basis(A);
  Mat prad(A->p, cov.cover.src->dim, 0);
  for (size_t c = 0; c < rad.cols(); ++c)
    prad = prad.hstack(elem_action(*cov.cover.src, rad.col_data(c)));
  CHECK(spans_contain(column_space_basis(prad), cov.kernel_basis));

  // semisimple algebra: covers are isomorphisms
  auto F2 = truncated_poly_algebra(2, 1);
  auto kk = simples(F2)[0];
  CHECK(projective_cover(kk).kernel_basis.cols() == 0);
  CHECK(is_projective(regular_module(A)));
  CHECK(!is_projective(k));

  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto M = random_module(path_algebra_line(2, 3), rng);
    auto c = projective_cover(M);
    CHECK(rank_of(c.cover.mat) == M->dim);
  }
}

TEST_CASE("k duality") {
  auto A = D2();
  auto reg = regular_module(A);
  auto D = k_dual(reg);
  CHECK(D->dim == 2);
  // D2 is self-injective: the dual of the regular module is projective
  // over the opposite algebra (here iso to its regular module)
  CHECK(iso_modules(D, regular_module(opposite_algebra(A))) == Ternary::Yes);

  // double dual is the identity on the nose in this model
  auto DD = k_dual(D);
  CHECK(same_algebra(DD->A, A));
  CHECK(DD->action == reg->action);

  std::mt19937 rng(5);
  for (auto Aq : {path_algebra_line(2, 2), D2(), truncated_poly_algebra(3, 2)}) {
    for (int t = 0; t < 7; ++t) {
      auto M = random_module(Aq, rng);
      auto N = random_module(Aq, rng);
      CHECK(module_hom(M, N).dim() == module_hom(k_dual(N), k_dual(M)).dim());
    }
  }
}

TEST_CASE("hom space coordinates and composition") {
  auto A = path_algebra_line(2, 3);
  std::mt19937 rng(9);
  auto M = random_module(A, rng);
  auto N = random_module(A, rng);
  auto H = module_hom(M, N);
  for (size_t i = 0; i < H.dim(); ++i) {
    auto c = H.coords_of(H.basis[i]);
    for (size_t j = 0; j < H.dim(); ++j) CHECK(c.at(j, 0) == (i == j ? 1u : 0u));
  }
  // composition of module maps stays equivariant
  auto HNN = module_hom(N, N);
  if (H.dim() && HNN.dim()) {
    auto f = make_module_map(M, N, H.basis[0]);
    auto g = make_module_map(N, N, HNN.basis[0]);
    auto gf = compose(g, f);
    CHECK_NOTHROW(make_module_map(M, N, gf.mat));
  }
}

TEST_CASE("submodule and quotient bookkeeping") {
  auto A = D2();
  auto reg = regular_module(A);
  auto soc = socle(reg);
  auto q = quotient_by_submodule(reg, soc.basis);
  CHECK(q.quot->dim == 1);
  // projection is equivariant and surjective
  CHECK(rank_of(q.proj.mat) == 1);
  // inclusion then projection is zero
  CHECK((q.proj.mat * soc.incl.mat).is_zero());
}
