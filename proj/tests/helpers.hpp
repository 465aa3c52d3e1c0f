// Shared seeded generators for test inputs.
#pragma once

#include "pcc/complexes.hpp"

#include <random>

namespace pcc::testing {

inline ModulePtr random_module(const AlgebraPtr& A, std::mt19937& rng, size_t rank = 2) {
  auto parts = std::vector<ModulePtr>(rank, regular_module(A));
  auto F = direct_sum_module(parts);
  Mat gens(A->p, F->dim, 2);
  for (size_t i = 0; i < F->dim; ++i)
    for (size_t j = 0; j < 2; ++j) gens.at(i, j) = rng() % A->p;
  auto sub = submodule_generated(F, gens);
  return quotient_by_submodule(F, sub.basis).quot;
}

inline Mat random_hom(const ModulePtr& M, const ModulePtr& N, std::mt19937& rng) {
  auto H = module_hom(M, N);
  Mat f(M->A->p, N->dim, M->dim);
  for (auto& b : H.basis) f = f + b.scaled(rng() % M->A->p);
  return f;
}

// two-term-cone plus a shifted stalk: small but non-degenerate
inline ComplexPtr random_complex(const AlgebraPtr& A, std::mt19937& rng) {
  auto M = random_module(A, rng);
  auto N = random_module(A, rng);
  auto X = stalk_complex(M, 0);
  auto Y = stalk_complex(N, 0);
  auto c = cone(make_chain_map(X, Y, 0, {random_hom(M, N, rng)})).cone;
  auto extra = stalk_complex(random_module(A, rng, 1), (int)(rng() % 3) - 1);
  return direct_sum_complex(c, extra);
}

}  // namespace pcc::testing
