// Finite-dimensional associative unital F_p-algebras (by structure constants)
// and their right modules: homs, radical, socle, simples, projectives,
// projective covers, k-duality, and the upper-triangular 2x2 construction.
#pragma once

#include "pcc/fp.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcc {

struct Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;
struct Module;
using ModulePtr = std::shared_ptr<const Module>;

struct ProjData;

struct Algebra {
  u32 p = 2;
  size_t dim = 0;
  std::string name;
  std::vector<std::string> basis_labels;
  // sc[i][j] = coordinate vector of b_i * b_j (length dim)
  std::vector<std::vector<std::vector<u32>>> sc;
  std::vector<u32> unit;

  // b_i * b_j as coordinate vector
  const std::vector<u32>& basis_mul(size_t i, size_t j) const { return sc[i][j]; }

  // lazily computed, idempotent fill (single job per process; no locking)
  mutable std::optional<Mat> radical_cache;
  mutable std::optional<std::vector<ModulePtr>> simples_cache;
  mutable std::optional<std::vector<ProjData>> projs_cache;
  mutable std::weak_ptr<const Algebra> opposite_cache;
  mutable std::optional<bool> self_injective_cache;
};

// Validates associativity on all basis triples and the two-sided unit law.
AlgebraPtr make_algebra(u32 p, std::vector<std::string> labels,
                        std::vector<std::vector<std::vector<u32>>> sc,
                        std::vector<u32> unit, std::string name);

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

std::vector<u32> alg_mul(const Algebra& A, const std::vector<u32>& x, const std::vector<u32>& y);
Mat left_mult_matrix(const Algebra& A, const std::vector<u32>& x);   // y -> x*y
Mat right_mult_matrix(const Algebra& A, const std::vector<u32>& x);  // y -> y*x
std::vector<u32> basis_elem(const Algebra& A, size_t i);

AlgebraPtr opposite_algebra(const AlgebraPtr& A);

// Upper-triangular 2x2 matrices over A; basis indexed by (corner, A-basis) for
// corners 11, 12, 22 in that block order; dim = 3*dim(A).
AlgebraPtr triangular_algebra(const AlgebraPtr& A);

AlgebraPtr truncated_poly_algebra(u32 p, size_t n);  // k[x]/(x^n)
// Path algebra of an acyclic quiver; arrows are (source, target) vertex pairs.
AlgebraPtr path_algebra(u32 p, size_t n_vertices,
                        const std::vector<std::pair<size_t, size_t>>& arrows,
                        std::string name = "");
AlgebraPtr path_algebra_line(u32 p, size_t n);  // A_n quiver 0 -> 1 -> ... -> n-1

// ---------------------------------------------------------------------------

struct Module {
  AlgebraPtr A;
  size_t dim = 0;
  std::string name;
  // Right action in column convention: (m . b_i) = action[i] * m, hence
  // action[j] * action[i] = sum_k sc[i][j][k] action[k].
  std::vector<Mat> action;
};

ModulePtr make_module(AlgebraPtr A, std::vector<Mat> action, std::string name);
ModulePtr zero_module(AlgebraPtr A);
ModulePtr regular_module(AlgebraPtr A);
ModulePtr direct_sum_module(const std::vector<ModulePtr>& parts);
bool is_zero_action_ok(const Module& M);  // debug helper: validates axioms

// action of an algebra element (by coordinates) on M
Mat elem_action(const Module& M, const std::vector<u32>& coords);

struct ModuleMap {
  ModulePtr src, tgt;
  Mat mat;  // tgt.dim x src.dim
};

ModuleMap make_module_map(ModulePtr src, ModulePtr tgt, Mat mat);  // validates
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);         // g after f

// The submodule spanned by the given columns (closure computed), as an
// abstract Module plus its inclusion.
struct SubmoduleData {
  ModulePtr sub;
  Mat basis;  // columns, in ambient coordinates
  ModuleMap incl;
};
SubmoduleData submodule_generated(const ModulePtr& M, const Mat& gens);
// Same but the columns are already a basis of an invariant subspace.
SubmoduleData submodule_from_basis(const ModulePtr& M, const Mat& basis);

struct QuotientModuleData {
  ModulePtr quot;
  ModuleMap proj;
  Mat lift;  // quot basis representatives in ambient coordinates
};
QuotientModuleData quotient_by_submodule(const ModulePtr& M, const Mat& sub_basis);

// All Lambda-equivariant matrices M -> N.
struct ModHomSpace {
  ModulePtr src, tgt;
  std::vector<Mat> basis;
  Mat flat_basis;  // (dim tgt * dim src) x n, column-major flattening
  size_t dim() const { return basis.size(); }
  Mat coords_of(const Mat& f) const;  // n x 1; throws if f not in the space
};
ModHomSpace module_hom(const ModulePtr& M, const ModulePtr& N);

// Jacobson radical of A, as a column basis inside A's coordinate space.
const Mat& radical_basis(const AlgebraPtr& A);
size_t loewy_length(const AlgebraPtr& A);  // smallest n with rad^n = 0

// Largest semisimple submodule {m : m.rad = 0}.
SubmoduleData socle(const ModulePtr& M);

struct SocleSeries {
  // bases[i] = basis of soc^i(M) in M coordinates (bases[0] empty)
  std::vector<Mat> bases;
  std::vector<ModulePtr> terms;  // soc^i as abstract modules
};
SocleSeries socle_series(const ModulePtr& M, size_t n);

// A simple submodule of a nonzero module, certified by exhaustive generator
// enumeration (desk-scale bound).
SubmoduleData find_simple_submodule(const ModulePtr& M);

// Composition factors of A/rad(A): one module per isomorphism class.
const std::vector<ModulePtr>& simples(const AlgebraPtr& A);

struct ProjData {
  ModulePtr proj;          // indecomposable projective e.Lambda
  ModulePtr top;           // its simple top
  size_t multiplicity;     // multiplicity in the regular module
  std::vector<u32> idem;   // the lifted primitive idempotent, A-coordinates
};
const std::vector<ProjData>& proj_indecs(const AlgebraPtr& A);

struct CoverData {
  ModuleMap cover;  // P onto M
  Mat kernel_basis; // basis of ker inside P
};
CoverData projective_cover(const ModulePtr& M);
bool is_projective(const ModulePtr& M);

// k-linear dual: right module over the opposite algebra; contravariant on maps.
ModulePtr k_dual(const ModulePtr& M);
ModuleMap k_dual(const ModuleMap& f);

enum class Ternary { Yes, No, Undecided };
// Isomorphism test by bounded search through the hom-space basis combinations.
Ternary iso_modules(const ModulePtr& M, const ModulePtr& N, size_t budget = 200000);
// Sound shortcut for certified-simple arguments: nonzero hom <=> iso.
bool iso_simples(const ModulePtr& S, const ModulePtr& T);

}  // namespace pcc
