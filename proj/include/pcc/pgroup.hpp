// Finite abelian p-groups, socle series, socle-stable sequences, and symbolic
// classification of artinian colimits (finite factors plus Pruefer factors)
// for rule-generated Cauchy sequences.
#pragma once

#include "pcc/fp.hpp"

#include <memory>

namespace pcc {

using i64 = long long;

// direct sum of Z/p^e, canonical form = ascending exponents, zeros dropped
struct PGroup {
  u32 p = 2;
  std::vector<u32> exponents;
};

PGroup make_pgroup(u32 p, std::vector<u32> exps);
bool pg_equal(const PGroup& a, const PGroup& b);
u32 pg_order_exp(const PGroup& g);  // |G| = p^(this)
PGroup pg_socle(const PGroup& g, u32 i);  // soc^i = sum Z/p^{min(i,e)}
PGroup pg_direct_sum(const PGroup& a, const PGroup& b);

struct PGroupMap {
  PGroup src, tgt;
  // m[i][j] taken mod p^{e_tgt(i)}; well-defined iff p^{max(0, e_tgt(i) - e_src(j))}
  // divides m[i][j]
  std::vector<std::vector<i64>> m;
};

PGroupMap make_pgroup_map(PGroup src, PGroup tgt, std::vector<std::vector<i64>> m);
PGroupMap pg_identity(const PGroup& g);
PGroupMap pg_compose(const PGroupMap& g, const PGroupMap& f);
PGroupMap socle_inclusion(const PGroup& g, u32 i);  // soc^i(G) -> G
PGroupMap pg_block_sum(const PGroupMap& a, const PGroupMap& b);

struct SocleSeriesPg {
  std::vector<PGroup> terms;     // soc^1, ..., soc^n
  std::vector<PGroupMap> incl;   // soc^k -> soc^{k+1}
};
SocleSeriesPg socle_series_pg(const PGroup& g, u32 n);

// Smith form valuations over the chain ring Z/p^N: diagonal is p^{vals[k]}
// (vals[k] = N encodes zero); deterministic minimal-valuation pivoting.
struct SnfMod {
  std::vector<u32> vals;
};
SnfMod snf_mod(std::vector<std::vector<i64>> A, u32 p, u32 N);

std::vector<u32> image_type(const PGroupMap& f);  // iso type of im f
bool pg_injective(const PGroupMap& f);
bool image_in_socle(const PGroupMap& f, u32 i);   // im f inside soc^i(tgt)

// classifies direct sums of Z/p^e and Pruefer groups Z(p^infinity)
struct ArtinianType {
  u32 p = 2;
  std::vector<u32> finite_exponents;  // ascending
  u32 pruefer_count = 0;
};
bool artinian_equal(const ArtinianType& a, const ArtinianType& b);

// Sequences X_0 -> X_1 -> ... given by generator rules; raw finite prefixes
// carry no tail certificate and cannot be classified.
struct PgSeq;
using PgSeqPtr = std::shared_ptr<const PgSeq>;
struct PgSeq {
  enum class Rule { CanonicalPruefer, Constant, DirectSum, SocleRamp, Reindexed, Raw };
  Rule rule = Rule::Raw;
  u32 p = 2;
  PGroup constant;               // Constant
  ArtinianType ramp;             // SocleRamp: the sequence (soc^{i+1} A)_i
  PgSeqPtr a, b;                 // DirectSum
  PgSeqPtr inner;                // Reindexed: i |-> stride*i + offset
  int stride = 1, offset = 0;
  std::vector<PGroup> groups;    // Raw prefix
  std::vector<PGroupMap> maps;   // maps[i]: X_i -> X_{i+1}
};

PgSeqPtr seq_canonical_pruefer(u32 p);
PgSeqPtr seq_constant(PGroup g);
PgSeqPtr seq_direct_sum(PgSeqPtr a, PgSeqPtr b);
PgSeqPtr seq_socle_ramp(ArtinianType t);
PgSeqPtr seq_reindexed(PgSeqPtr inner, int stride, int offset);
PgSeqPtr seq_raw(std::vector<PGroup> groups, std::vector<PGroupMap> maps);

PGroup seq_group_at(const PgSeq& s, int i);
PGroupMap seq_map_at(const PgSeq& s, int i);  // X_i -> X_{i+1}

// X_i identified by the maps with soc^{i+1}(X_j) for all i <= j < horizon;
// throws on a non-injective map.
bool is_socle_stable(const PgSeqPtr& s, int horizon);

// Colimit classification with certificates; throws "not Cauchy" when socle
// ranks fail to stabilize within the horizon, "horizon insufficient" when the
// rule cannot certify its chains (in particular, always for raw prefixes).
ArtinianType classify_colimit(const PgSeqPtr& s, int horizon);

}  // namespace pcc
