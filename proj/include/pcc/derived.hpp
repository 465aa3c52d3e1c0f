// Homotopy-category homs (chain maps modulo null-homotopy), minimal projective
// resolutions of modules and bounded complexes, and bounded-derived-category
// homs computed at a certified truncation depth.
#pragma once

#include "pcc/complexes.hpp"

namespace pcc {

// Chain maps src -> tgt modulo null-homotopic ones, as a linear-algebra
// subquotient of the direct sum of degreewise equivariant hom spaces.
struct KHomSpace {
  ComplexPtr src, tgt;
  int lo = 0, hi = -1;            // degrees where both components are nonzero
  std::vector<ModHomSpace> degs;  // per-degree hom spaces, degs[n - lo]
  std::vector<size_t> offsets;    // offsets into concatenated coordinates
  size_t amb = 0;                 // total concatenated dimension
  Mat cycles;                     // basis of the chain-map subspace, amb x z
  Mat boundaries;                 // basis of the null-homotopic subspace
  QuotientBasis qb;               // cycles modulo boundaries

  size_t dim() const { return qb.lift_basis.cols(); }
  Mat pack(const ChainMap& f) const;       // concatenated coordinates, amb x 1
  ChainMap unpack(const Mat& v) const;     // one ambient column -> chain map
  Mat coords_of(const ChainMap& f) const;  // class coordinates, dim x 1
  ChainMap rep(size_t i) const;            // representative of basis class i
  ChainMap from_coords(const Mat& c) const;
};

KHomSpace khom(const ComplexPtr& X, const ComplexPtr& Y);
bool is_null_homotopic(const ChainMap& f);
// classes of f and g agree in the homotopy category
bool chain_maps_homotopic(const ChainMap& f, const ChainMap& g);

// Minimal projective resolution of a bounded complex, built degree by degree
// from the top by projective covers; extended downward on demand.
struct ResolutionGen {
  ComplexPtr target;
  int top = 0;       // highest resolution degree (= target window top)
  bool done = false; // resolution terminated: all lower terms are zero

  // degree top - k:
  std::vector<ModulePtr> mods;  // mods[k] = P^{top-k}
  std::vector<Mat> diffs;       // diffs[k] = d^{top-k-1}: mods[k+1] -> mods[k]
  std::vector<Mat> eps;         // eps[k]: P^{top-k} -> X^{top-k}

  void ensure(int lo);           // build components down to degree lo
  int built_lo() const;          // lowest constructed degree
  ComplexPtr truncated_geq(int lo);  // sigma_{>= lo} of the resolution
  ChainMap augmentation_geq(int lo); // truncated_geq(lo) -> target, quasi-iso in degrees > lo
};
using ResolutionPtr = std::shared_ptr<ResolutionGen>;

ResolutionPtr resolve(const ModulePtr& M);
ResolutionPtr resolve_complex(const ComplexPtr& X);

// Hom_{D^b}(X, Sigma^n Y), computed as khom from a truncated projective
// resolution of X directly into Sigma^n Y; the truncation depth comes from the
// cohomology-window formula and is then re-verified one step deeper (throws
// "window unverified" on mismatch).
struct DbHomSpace {
  ComplexPtr X, Y;
  int n = 0;
  ResolutionPtr res;  // resolution of X
  int trunc_lo = 0;   // truncation degree actually used
  ComplexPtr trunc;   // sigma_{>= trunc_lo} P_X
  ChainMap aug;       // trunc -> X
  KHomSpace kh;       // khom(trunc, Sigma^n Y)
  size_t dim() const { return kh.dim(); }
};

// min_trunc_lo (when <= 0) forces at least that truncation depth, so several
// hom spaces can share the domain complex for composition.
DbHomSpace dbhom(const ComplexPtr& X, const ComplexPtr& Y, int n, int min_trunc_lo = 1);
DbHomSpace dbhom(const ResolutionPtr& res, const ComplexPtr& Y, int n, int min_trunc_lo = 1);
DbHomSpace dbhom_mod(const ModulePtr& M, const ModulePtr& N, int n);  // Ext^n

bool is_quasi_iso(const ChainMap& f);

// tau_{> -i} of the augmentation of sigma_{>= -i}P is a quasi-isomorphism:
// H^m(augmentation) is an isomorphism for every m > -i.
bool pc_certificate(ResolutionGen& R, int i);

// Composition Hom(X, Sigma^n Y) x Hom(Y, Sigma^m Z) -> Hom(X, Sigma^{n+m} Z)
// in class coordinates: lifts the first map through the augmentation of Y's
// resolution (depth-certified, asserted bijective), then composes
// representatives.  F must be built over the same domain truncation as GF.
Mat db_compose(const DbHomSpace& G, const Mat& gc, const DbHomSpace& F, const Mat& fc,
               const DbHomSpace& GF);

}  // namespace pcc
