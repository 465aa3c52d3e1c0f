// Bounded cohomologically-graded complexes of right modules.  Differentials
// raise degree; d_{Sigma X} = -d_X; cone differential [[-d_X, 0], [f, d_Y]].
#pragma once

#include "pcc/algebra.hpp"

namespace pcc {

struct Complex;
using ComplexPtr = std::shared_ptr<const Complex>;

struct Complex {
  AlgebraPtr A;
  int lo = 0, hi = -1;  // empty window when lo > hi
  std::string name;
  std::vector<ModulePtr> comp;  // comp[n - lo]
  std::vector<Mat> diff;        // diff[n - lo]: X^n -> X^{n+1}, for lo <= n < hi
  bool empty() const { return lo > hi; }
};

// Validates d*d = 0 and that differentials are module maps, then trims zero
// components at the window edges.
ComplexPtr make_complex(AlgebraPtr A, int lo, std::vector<ModulePtr> comp,
                        std::vector<Mat> diff, std::string name = "");
ComplexPtr zero_complex(AlgebraPtr A);
ComplexPtr stalk_complex(ModulePtr M, int degree, std::string name = "");

ModulePtr comp_at(const Complex& X, int n);
Mat diff_at(const Complex& X, int n);  // comp(n) -> comp(n+1), zero if outside
size_t total_dim(const Complex& X);

struct ChainMap {
  ComplexPtr src, tgt;
  int lo = 0;               // comps[n - lo]: src^n -> tgt^n
  std::vector<Mat> comps;
};

ChainMap make_chain_map(ComplexPtr src, ComplexPtr tgt, int lo, std::vector<Mat> comps,
                        bool check = true);
Mat cm_at(const ChainMap& f, int n);
ChainMap identity_chain(const ComplexPtr& X);
ChainMap zero_chain(const ComplexPtr& X, const ComplexPtr& Y);
ChainMap compose_chain(const ChainMap& g, const ChainMap& f);
ChainMap add_chain(const ChainMap& f, const ChainMap& g);
ChainMap sub_chain(const ChainMap& f, const ChainMap& g);
ChainMap scale_chain(const ChainMap& f, u32 c);
bool chain_map_zero(const ChainMap& f);
bool chain_map_equal_strict(const ChainMap& f, const ChainMap& g);

ComplexPtr shift_complex(const ComplexPtr& X, int m);       // (S^m X)^n = X^{n+m}
ChainMap shift_chain(const ChainMap& f, int m);

ComplexPtr direct_sum_complex(const ComplexPtr& X, const ComplexPtr& Y);
// canonical injections/projections of the direct sum
ChainMap sum_inj(const ComplexPtr& X, const ComplexPtr& Y, const ComplexPtr& S, int which);
ChainMap sum_proj(const ComplexPtr& X, const ComplexPtr& Y, const ComplexPtr& S, int which);

struct ConeData {
  ComplexPtr cone;       // cone^n = X^{n+1} (+) Y^n
  ChainMap from_target;  // Y -> cone
  ChainMap to_shift;     // cone -> Sigma X
};
ConeData cone(const ChainMap& f);

// Functoriality of the cone for a commuting square (a, b): b f = g a gives a
// chain map cone(f) -> cone(g) with components [a^{n+1}, 0; 0, b^n].  When the
// square commutes only up to homotopy, pass h with b f - g a = d h + h d,
// stored as a map src(f) -> Sigma^{-1} tgt(g) (components h^m: X^m -> Y'^{m-1},
// built with check = false); it twists the lower-left block.
ChainMap cone_functor_map(const ChainMap& f, const ChainMap& g, const ChainMap& a,
                          const ChainMap& b, const ChainMap* homotopy_h = nullptr);

struct TruncData {
  ComplexPtr cx;
  ChainMap map;  // inclusion into X (sigma_geq, tau_leq) or projection from X (tau_gt)
};
TruncData brutal_truncate_geq(const ComplexPtr& X, int n);
// restriction of a chain map to brutal truncations of source and target
ChainMap brutal_truncate_geq_map(const ChainMap& f, int n, const ComplexPtr& sx,
                                 const ComplexPtr& sy);

TruncData tau_leq(const ComplexPtr& X, int n);
TruncData tau_gt(const ComplexPtr& X, int n);
ChainMap tau_gt_map(const ChainMap& f, int n, const TruncData& tx, const TruncData& ty);

struct CohomData {
  ModulePtr H;
  Mat ker;       // basis of ker d^n in ambient coordinates
  Mat im;        // basis of im d^{n-1}
  Mat lift;      // representatives of the H-basis, ambient coordinates
  Mat ker_proj;  // H-coordinates from ker-coordinates
  // ambient columns (must lie in ker) -> H coordinates
  Mat project_ambient(const Mat& cols) const;
};
CohomData cohomology(const ComplexPtr& X, int n);
ModuleMap cohomology_map(const ChainMap& f, int n, const CohomData& hx, const CohomData& hy);
bool is_acyclic(const ComplexPtr& X);
// [a, b] window of nonzero cohomology; {1, 0} (empty) when acyclic
std::pair<int, int> cohom_window(const ComplexPtr& X);

}  // namespace pcc
