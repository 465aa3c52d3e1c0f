// Stable module categories and syzygy-stabilized hom spaces: module homs
// modulo maps factoring through projectives, minimal syzygies with induced
// maps, the syzygy-colimit graded hom of the stable derived quotient
// (certified for stable equivalences and vanishing tails, horizon-tagged
// otherwise), and self-injectivity via k-duality.
#pragma once

#include "pcc/algebra.hpp"

namespace pcc {

struct StableHomSpace {
  ModulePtr M, N;
  ModHomSpace full;        // all equivariant maps M -> N
  std::vector<Mat> basis;  // representatives of the quotient classes
  Mat project;             // full-hom coordinates -> quotient coordinates
  size_t dim() const { return basis.size(); }
  Mat coords_of(const Mat& f) const;  // quotient class of an equivariant map
};
// quotient of Hom(M, N) by the maps factoring through a projective module
// (equivalently, through the projective cover of N)
StableHomSpace stable_hom(const ModulePtr& M, const ModulePtr& N);

// kernel of the minimal projective cover; zero for projectives
ModulePtr syzygy(const ModulePtr& M);
// induced map on syzygies: lift through the covers, restrict to the kernels
ModuleMap syzygy_map(const ModuleMap& f);

// length of the minimal projective resolution; nullopt when it has not
// terminated within the horizon
std::optional<int> projective_dimension(const ModulePtr& M, int horizon);
// Yes when every simple has projective dimension <= horizon, else Undecided
Ternary finite_global_dimension(const AlgebraPtr& A, int horizon);

// the regular module is injective over itself, decided by projectivity of the
// k-dual of the opposite regular module
bool is_self_injective(const AlgebraPtr& A);

struct SgHomSpace {
  ModulePtr M, N;
  int n = 0;
  size_t dim = 0;
  bool certified = false;  // exact value (stable equivalence or vanishing tail)
  int index = 0;           // tower index where the value is read
  std::string note;        // empty, "horizon", or "not stabilized within horizon"
};
// colim_k of stable homs between the (k+n)-th and k-th syzygies (indices
// swapped for n < 0): the degree-n hom of the stable derived quotient
SgHomSpace sg_hom(const ModulePtr& M, const ModulePtr& N, int n, int horizon = 6);

}  // namespace pcc
