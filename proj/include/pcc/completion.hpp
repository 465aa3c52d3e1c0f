// Sequential completion machinery: certified Cauchy sequences (generator
// rules + cone-support certificates), sequence morphisms, left fractions,
// colim/lim hom evaluation with stabilization certificates, lim^1 and
// Mittag-Leffler checks, termwise cones of sequences, and the verifier
// matching completion homs against bounded-derived-category homs.
#pragma once

#include "pcc/derived.hpp"
#include "pcc/pgroup.hpp"

#include <functional>
#include <map>

namespace pcc {

struct CauchySeq;
using CSeqPtr = std::shared_ptr<const CauchySeq>;
struct SeqMorphism;

// sentinel: connecting cones vanish identically (constant sequences)
constexpr int kCoconnNegInf = -1000000;

struct CauchySeq {
  enum class Rule { Truncation, Constant, Shifted, Coned, DirectSum, Reindexed, Prefix };
  Rule rule = Rule::Constant;
  AlgebraPtr A;

  ResolutionPtr res;                       // Truncation: X_i = sigma_{>=-i} P
  ComplexPtr constant;                     // Constant
  CSeqPtr inner, second;                   // Shifted/Reindexed: inner; DirectSum: both
  int shift_m = 0;                         // Shifted
  std::shared_ptr<const SeqMorphism> phi;  // Coned
  std::function<int(int)> remap;           // Reindexed: cofinal nondecreasing, f(i) >= i
  std::vector<ComplexPtr> prefix_groups;   // Prefix (uncertified)
  std::vector<ChainMap> prefix_maps;

  bool certified = true;
  // cone(X_i -> X_j) is homotopy equivalent to a complex with components in
  // degrees <= coconn - i, for all i <= j
  int coconn = kCoconnNegInf;
  // stabilized cohomology window [win_a, win_b] of the colimit
  bool win_empty = false;
  int win_a = 0, win_b = 0;

  mutable std::map<int, ComplexPtr> at_cache;
  mutable std::map<int, ChainMap> map_cache;
};

struct SeqMorphism {
  CSeqPtr src, tgt;
  std::function<ChainMap(int)> at;  // phi_i: src_i -> tgt_i
  bool strict = true;               // naturality squares commute on the nose
  bool ev_invertible = false;
  int inv_bound = 0;  // cone(phi_i) supported <= inv_bound - i (up to homotopy)
};

ComplexPtr seq_at(const CSeqPtr& s, int i);
ChainMap seq_map(const CSeqPtr& s, int i);            // X_i -> X_{i+1}
ChainMap seq_map_range(const CSeqPtr& s, int i, int j);  // composite X_i -> X_j

CSeqPtr truncation_sequence(const ComplexPtr& M);
CSeqPtr truncation_sequence(const ResolutionPtr& res);
CSeqPtr constant_sequence(const ComplexPtr& Z);
CSeqPtr shifted_sequence(const CSeqPtr& s, int m);
CSeqPtr directsum_sequence(const CSeqPtr& a, const CSeqPtr& b);
CSeqPtr reindex_seq(const CSeqPtr& x, std::function<int(int)> f);
CSeqPtr reindex_seq(const CSeqPtr& x, int stride, int offset);
CSeqPtr prefix_sequence(std::vector<ComplexPtr> groups, std::vector<ChainMap> maps);

SeqMorphism seqmor_identity(const CSeqPtr& x);
SeqMorphism seqmor_zero(const CSeqPtr& x, const CSeqPtr& y);
SeqMorphism seqmor_constant(const ChainMap& f);  // between constant sequences
SeqMorphism seqmor_shift(const SeqMorphism& f, int m);
SeqMorphism seqmor_sum(const SeqMorphism& f, const SeqMorphism& g);
SeqMorphism seqmor_compose(const SeqMorphism& g, const SeqMorphism& f);
// the canonical morphism X -> X_f into a cofinal reindexing; eventually
// invertible by the coconn certificate
SeqMorphism canonical_reindex_mor(const CSeqPtr& x, std::function<int(int)> f);
bool seqmor_natural(const SeqMorphism& f, int i);  // naturality at i, K-level

// Strict lift of a chain map between resolution targets to a degreewise
// restriction morphism of truncation sequences: u: P_M -> P_N built by
// descending comparison (with an augmentation homotopy maintained), then
// phi_i = u restricted to sigma_{>=-i}.
SeqMorphism truncation_lift(const ResolutionPtr& rm, const ResolutionPtr& rn,
                            const ChainMap& f);

// per-compact certified index n_C with Hom(C, X_i) -> Hom(C, X_{i+1})
// bijective for i >= n_C, verified empirically up to the horizon; for
// uncertified prefixes the index is sought empirically and "not Cauchy within
// horizon" is thrown when none works
std::vector<int> is_cauchy(const CSeqPtr& x, const std::vector<ComplexPtr>& compacts,
                           int horizon);

struct ColimHom {
  ComplexPtr C;
  CSeqPtr Y;
  int j = 0;      // stabilized inner index
  KHomSpace kh;   // khom(C, Y_j)
  size_t dim() const { return kh.dim(); }
};
ColimHom colim_hom(const ComplexPtr& C, const CSeqPtr& Y, int min_index = 0);
// class of r: C -> Y_{jr} in the stabilized colimit (aligned at max(j, jr))
Mat colim_class_at(const ColimHom& h, const ChainMap& r, int jr);

struct CompletionHom {
  CSeqPtr X, Y;
  int i = 0, j = 0;  // representatives are chain maps X_i -> Y_j
  KHomSpace kh;
  size_t dim() const { return kh.dim(); }
};
CompletionHom completion_hom(const CSeqPtr& x, const CSeqPtr& y, int min_outer = 0);
// class of r: X_{ir} -> Y_{jr} with ir >= i (restriction along the tower)
Mat completion_class_at(const CompletionHom& h, const ChainMap& r, int ir, int jr);
// representative of a class at a deeper outer index ir >= i (tower lift)
ChainMap completion_rep_at(const CompletionHom& h, const Mat& coords, int ir, int* out_j);
// composition of completion homs; representatives are lifted along the tower
// to a common outer index before composing
Mat completion_compose(const CompletionHom& g, const Mat& gc, const CompletionHom& f,
                       const Mat& fc, const CompletionHom& gf);

// left fractions sigma^{-1} alpha
struct Fraction {
  SeqMorphism alpha;  // X -> Z
  SeqMorphism sigma;  // Y -> Z, eventually invertible
};
Fraction fraction_from_mor(const SeqMorphism& a);
Fraction fraction_compose(const Fraction& g, const Fraction& f);
bool fraction_equal(const Fraction& f, const Fraction& g,
                    const std::vector<ComplexPtr>& compacts);
// for alpha, beta with sigma alpha = sigma beta up to homotopy eventually:
// returns the canonical reindexing morphism tau = f_Y with tau alpha ~ tau beta,
// f(i) found minimally per index; nullopt when no index works within horizon
std::optional<SeqMorphism> lf3_witness(const SeqMorphism& a, const SeqMorphism& b,
                                       int horizon);

// towers A_0 <- A_1 <- ... ; either finite-dimensional prefixes or the
// constant integer-matrix rule A_i = Z^n with the same map each step
struct Tower {
  bool integral = false;
  std::vector<size_t> dims;  // F_p flavor: dims[i] = dim A_i
  std::vector<Mat> maps;     // maps[i]: A_{i+1} -> A_i
  std::vector<std::vector<i64>> zmat;  // integral constant rule
};
enum class MlVerdict { Vanishes, MlFails, Unknown };
struct MlResult {
  MlVerdict verdict = MlVerdict::Unknown;
  int index = 0;  // stabilization (or strict-descent) certificate index
  std::string note;
};
MlResult ml_lim1(const Tower& t, int horizon);

// window form of the Milnor sequence 0 -> lim -> prod -> prod -> lim^1 -> 0:
// returns (dim ker, dim coker) of (a_i) |-> (a_i - f_i a_{i+1})
std::pair<size_t, size_t> milnor_window(const Tower& t);

// towers colim_j Hom(Sigma^m X_i, Y_j) over the shift range must have lim^1 = 0
std::vector<MlResult> phantomless_check(const CSeqPtr& x, const CSeqPtr& y, int shift_lo,
                                        int shift_hi);

struct SeqTriangle {
  CSeqPtr cone;
  SeqMorphism from_target;  // Y -> cone
  SeqMorphism to_shift;     // cone -> Sigma X
};
SeqTriangle seq_cone(const SeqMorphism& phi);  // phi must be strict

// the deep-enough term whose cohomology agrees with the colimit in degrees
// >= window_lo
ComplexPtr realize(const CSeqPtr& x, int window_lo);

struct TheoremReport {
  bool ok = true;
  std::vector<std::string> lines;
  void add(bool pass, const std::string& what);
};
// for each sampled pair (M, N) and n in [nlo, nhi]: completion homs of
// truncation sequences match derived homs in dimension, under an explicit
// bijection, compatibly with composition; plus a termwise-cone compatibility
// check on the first pair
TheoremReport verify_main_theorem(const AlgebraPtr& A,
                                  const std::vector<std::pair<ComplexPtr, ComplexPtr>>& pairs,
                                  int nlo, int nhi);

}  // namespace pcc
