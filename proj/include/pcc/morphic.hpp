// The morphism-category model of complexes over the upper-triangular 2x2
// algebra: converters between arrow pairs over Lambda and complexes over
// Lambda_1, the adjoint functor family between the two homotopy categories,
// hom spaces of the morphism category, and the machine checks: epivalence,
// square-zero ideal exactness, standard triangles with coherent morphisms,
// mapping-cone compatibility, shift periodicity of the adjoints, and the
// interaction with sequential completion.
#pragma once

#include "pcc/completion.hpp"

namespace pcc {

// a chain map alpha: X1 -> X0 between bounded complexes over Lambda,
// modelling one complex over the triangular algebra Lambda_1
struct MorphPair {
  ComplexPtr x1, x0;
  ChainMap alpha;
};
MorphPair make_morph_pair(ChainMap alpha);

// the triangular algebra of A, memoized so every caller shares one instance
AlgebraPtr arrow_algebra(const AlgebraPtr& A);

// the Lambda_1-module (M1 -> M0) given by a module map matrix
ModulePtr pair_module(const ModulePtr& M1, const ModulePtr& M0, const Mat& alpha);

// projective-resolution totalization of the pair as a complex over Lambda_1
ComplexPtr to_lambda1(const MorphPair& P);

// corner extraction of a complex over Lambda_1, with the ambient corner bases
// retained so chain maps can be extracted degreewise
struct CornerData {
  ComplexPtr z;  // over Lambda_1
  MorphPair pair;
  std::vector<Mat> e1_basis, e2_basis;  // per degree of [z->lo, z->hi]
};
CornerData corners(const ComplexPtr& Z, const AlgebraPtr& A);
MorphPair from_lambda1(const ComplexPtr& Z, const AlgebraPtr& A);
// restriction of a Lambda_1-chain map to the chosen corner (1 or 2)
ChainMap corner_map(const CornerData& zx, const CornerData& zy, const ChainMap& u,
                    int corner);
// natural comparison to_lambda1(from_lambda1(Z)) -> Z, a homotopy equivalence
ChainMap roundtrip_counit(const ComplexPtr& Z, const AlgebraPtr& A);

// the adjoint family, in the pair model: P1 = top, P0 = bottom,
// P-1 = cone(alpha), P2 = Sigma^{-1} cone(alpha)
ComplexPtr functor_P(int n, const MorphPair& Z);
// Q0 M = (M = M), Q-1 M = (0 -> M), Q1 M = (M -> cone(id M))
MorphPair functor_Q(int n, const ComplexPtr& M);

// hom space of the morphism category of the homotopy category: pairs of
// hom classes making the square commute up to homotopy
struct MtHomSpace {
  KHomSpace top, bot;
  Mat basis;  // columns (top coords ; bot coords)
  size_t dim() const { return basis.cols(); }
};
MtHomSpace mt_hom(const MorphPair& X, const MorphPair& Y);

// homotopy for f = dh + hd, components h^n: src^n -> tgt^{n-1}; nullopt when
// f is not null-homotopic
std::optional<ChainMap> find_homotopy(const ChainMap& f);
bool k_contractible(const ComplexPtr& X);
bool k_equivalence(const ChainMap& f);  // cone contractible

struct Report {
  bool ok = true;
  std::vector<std::string> lines;
  void add(bool pass, const std::string& what);
};

// fullness, conservativity, essential surjectivity of the corner functor on
// an enumerated sample of pairs over the algebra
Report epivalence_check(const AlgebraPtr& A);
// products of corner-trivial hom classes vanish, and the dimension count of
// the extension sequence relating the two hom spaces
Report square_zero_check(const AlgebraPtr& A);

struct StdTriangle {
  ComplexPtr p1, p0, pm1;  // top, bottom, cone
  ChainMap a, b, c;        // p1 -> p0 -> pm1 -> Sigma p1
};
StdTriangle standard_triangle(const MorphPair& Z);

// a square commuting up to a recorded homotopy, with the induced map on cones
struct CoherentMorphism {
  MorphPair src, tgt;
  ChainMap f1, f0;
  ChainMap h;         // f0 alpha_X - alpha_Y f1 = dh + hd
  ChainMap cone_map;  // cone(alpha_X) -> cone(alpha_Y)
};
CoherentMorphism coherent_morphism(const MorphPair& X, const MorphPair& Y,
                                   const ChainMap& f1, const ChainMap& f0);

// the lifted Lambda_1-chain map of a coherent morphism
ChainMap pair_map_to_lambda1(const CoherentMorphism& u);

// the standard triangle of the termwise cone agrees with the mapping-cone
// triangle of the lifted morphism
Report cone_compat_check(const CoherentMorphism& u);

// Sigma Q_n is the adjoint prescribed three steps up the family (n in {-1, 0})
Report shift_periodicity_check(const AlgebraPtr& A, int n);

// completion interacts with the pair model: phantomless towers over Lambda_1,
// corner images of truncation sequences stay Cauchy, and the completed hom
// spaces satisfy the corner-extension dimension count
Report morphic_completion_check(const AlgebraPtr& A);

}  // namespace pcc
