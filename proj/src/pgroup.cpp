#include "pcc/pgroup.hpp"

#include <algorithm>

namespace pcc {

namespace {

i64 pow_i64(u32 p, u32 e) {
  i64 r = 1;
  for (u32 k = 0; k < e; ++k) {
    if (r > (i64)4e18 / p) throw std::overflow_error("p-group: modulus too large");
    r *= p;
  }
  return r;
}

i64 mod_norm(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) { return (i64)((__int128)a * b % m); }

u32 valuation(i64 x, u32 p, u32 N) {
  if (x == 0) return N;
  u32 v = 0;
  while (v < N && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// inverse of a unit mod m (m a prime power)
i64 inv_mod(i64 u, i64 m) {
  i64 a = mod_norm(u, m), b = m, x0 = 1, x1 = 0;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) throw std::invalid_argument("inv_mod: not a unit");
  return mod_norm(x0, m);
}

}  // namespace

PGroup make_pgroup(u32 p, std::vector<u32> exps) {
  if (!is_prime(p)) throw std::invalid_argument("p-group: p must be prime");
  std::vector<u32> e;
  for (u32 x : exps)
    if (x > 0) e.push_back(x);
  std::sort(e.begin(), e.end());
  return {p, e};
}

bool pg_equal(const PGroup& a, const PGroup& b) {
  return a.p == b.p && a.exponents == b.exponents;
}

u32 pg_order_exp(const PGroup& g) {
  u32 s = 0;
  for (u32 e : g.exponents) s += e;
  return s;
}

PGroup pg_socle(const PGroup& g, u32 i) {
  std::vector<u32> e;
  for (u32 x : g.exponents) e.push_back(std::min(i, x));
  return make_pgroup(g.p, e);
}

PGroup pg_direct_sum(const PGroup& a, const PGroup& b) {
  if (a.p != b.p) throw std::invalid_argument("p-group sum: prime mismatch");
  auto e = a.exponents;
  e.insert(e.end(), b.exponents.begin(), b.exponents.end());
  return make_pgroup(a.p, e);
}

PGroupMap make_pgroup_map(PGroup src, PGroup tgt, std::vector<std::vector<i64>> m) {
  if (src.p != tgt.p) throw std::invalid_argument("p-group map: prime mismatch");
  size_t r = tgt.exponents.size(), c = src.exponents.size();
  if (m.size() != r) throw std::invalid_argument("p-group map: row count");
  for (size_t i = 0; i < r; ++i) {
    if (m[i].size() != c) throw std::invalid_argument("p-group map: column count");
    i64 mod = pow_i64(tgt.p, tgt.exponents[i]);
    for (size_t j = 0; j < c; ++j) {
      m[i][j] = mod_norm(m[i][j], mod);
      u32 need = tgt.exponents[i] > src.exponents[j] ? tgt.exponents[i] - src.exponents[j] : 0;
      if (valuation(m[i][j], tgt.p, tgt.exponents[i]) < need)
        throw std::invalid_argument("p-group map: entry not well-defined on generator orders");
    }
  }
  return {std::move(src), std::move(tgt), std::move(m)};
}

PGroupMap pg_identity(const PGroup& g) {
  size_t n = g.exponents.size();
  std::vector<std::vector<i64>> m(n, std::vector<i64>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return make_pgroup_map(g, g, std::move(m));
}

PGroupMap pg_compose(const PGroupMap& g, const PGroupMap& f) {
  if (!pg_equal(g.src, f.tgt)) throw std::invalid_argument("p-group compose: mismatch");
  size_t r = g.tgt.exponents.size(), c = f.src.exponents.size(), k = g.src.exponents.size();
  std::vector<std::vector<i64>> m(r, std::vector<i64>(c, 0));
  for (size_t i = 0; i < r; ++i) {
    i64 mod = pow_i64(g.tgt.p, g.tgt.exponents[i]);
    for (size_t j = 0; j < c; ++j) {
      i64 s = 0;
      for (size_t t = 0; t < k; ++t) s = mod_norm(s + mulmod(mod_norm(g.m[i][t], mod), mod_norm(f.m[t][j], mod), mod), mod);
      m[i][j] = s;
    }
  }
  return make_pgroup_map(f.src, g.tgt, std::move(m));
}

PGroupMap socle_inclusion(const PGroup& g, u32 i) {
  PGroup s = pg_socle(g, i);
  // component k of soc has exponent min(i, e_k); the inclusion into Z/p^{e_k}
  // multiplies by p^{e_k - min(i, e_k)}; sorting is preserved componentwise
  size_t n = g.exponents.size();
  std::vector<std::vector<i64>> m(n, std::vector<i64>(n, 0));
  for (size_t k = 0; k < n; ++k) m[k][k] = pow_i64(g.p, g.exponents[k] - std::min(i, g.exponents[k]));
  return make_pgroup_map(s, g, std::move(m));
}

PGroupMap pg_block_sum(const PGroupMap& a, const PGroupMap& b) {
  // exponent lists concatenate then sort; build via permutation bookkeeping
  PGroup src = pg_direct_sum(a.src, b.src);
  PGroup tgt = pg_direct_sum(a.tgt, b.tgt);
  // positions after stable sort of concatenated exponents
  auto placement = [](const PGroup& x, const PGroup& y) {
    std::vector<std::pair<u32, size_t>> keyed;
    for (size_t i = 0; i < x.exponents.size(); ++i) keyed.push_back({x.exponents[i], i});
    for (size_t i = 0; i < y.exponents.size(); ++i)
      keyed.push_back({y.exponents[i], x.exponents.size() + i});
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](auto& l, auto& r) { return l.first < r.first; });
    std::vector<size_t> pos(keyed.size());
    for (size_t k = 0; k < keyed.size(); ++k) pos[keyed[k].second] = k;
    return pos;
  };
  auto spos = placement(a.src, b.src);
  auto tpos = placement(a.tgt, b.tgt);
  std::vector<std::vector<i64>> m(tgt.exponents.size(),
                                  std::vector<i64>(src.exponents.size(), 0));
  for (size_t i = 0; i < a.tgt.exponents.size(); ++i)
    for (size_t j = 0; j < a.src.exponents.size(); ++j) m[tpos[i]][spos[j]] = a.m[i][j];
  size_t ro = a.tgt.exponents.size(), co = a.src.exponents.size();
  for (size_t i = 0; i < b.tgt.exponents.size(); ++i)
    for (size_t j = 0; j < b.src.exponents.size(); ++j) m[tpos[ro + i]][spos[co + j]] = b.m[i][j];
  return make_pgroup_map(src, tgt, std::move(m));
}

SocleSeriesPg socle_series_pg(const PGroup& g, u32 n) {
  SocleSeriesPg s;
  for (u32 i = 1; i <= n; ++i) s.terms.push_back(pg_socle(g, i));
  for (u32 i = 1; i < n; ++i) {
    // soc^i(G) -> soc^{i+1}(G), componentwise p^{min(i+1,e) - min(i,e)}
    const PGroup& a = s.terms[i - 1];
    const PGroup& b = s.terms[i];
    std::vector<std::vector<i64>> m(b.exponents.size(),
                                    std::vector<i64>(a.exponents.size(), 0));
    for (size_t k = 0; k < g.exponents.size(); ++k)
      m[k][k] = pow_i64(g.p, std::min(i + 1, g.exponents[k]) - std::min(i, g.exponents[k]));
    s.incl.push_back(make_pgroup_map(a, b, std::move(m)));
  }
  return s;
}

SnfMod snf_mod(std::vector<std::vector<i64>> A, u32 p, u32 N) {
  i64 m = pow_i64(p, N);
  size_t r = A.size(), c = r ? A[0].size() : 0;
  for (auto& row : A)
    for (auto& x : row) x = mod_norm(x, m);
  size_t k = 0, lim = std::min(r, c);
  SnfMod out;
  while (k < lim) {
    // minimal-valuation pivot, first occurrence in row-major order
    u32 best = N;
    size_t bi = k, bj = k;
    for (size_t i = k; i < r; ++i)
      for (size_t j = k; j < c; ++j) {
        u32 v = valuation(A[i][j], p, N);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == N) break;
    std::swap(A[k], A[bi]);
    for (size_t i = 0; i < r; ++i) std::swap(A[i][k], A[i][bj]);
    i64 piv = A[k][k];
    i64 pv = pow_i64(p, best);
    i64 unit = piv / pv;
    i64 uinv = inv_mod(unit, m);
    for (size_t i = 0; i < r; ++i) {
      if (i == k || A[i][k] == 0) continue;
      i64 mult = mulmod(A[i][k] / pv, uinv, m);
      for (size_t j = k; j < c; ++j) A[i][j] = mod_norm(A[i][j] - mulmod(mult, A[k][j], m), m);
    }
    for (size_t j = k + 1; j < c; ++j) {
      if (A[k][j] == 0) continue;
      i64 mult = mulmod(A[k][j] / pv, uinv, m);
      for (size_t i = k; i < r; ++i) A[i][j] = mod_norm(A[i][j] - mulmod(mult, A[i][k], m), m);
    }
    out.vals.push_back(best);
    ++k;
  }
  while (out.vals.size() < lim) out.vals.push_back(N);
  return out;
}

std::vector<u32> image_type(const PGroupMap& f) {
  u32 N = 0;
  for (u32 e : f.tgt.exponents) N = std::max(N, e);
  if (N == 0 || f.src.exponents.empty()) return {};
  i64 m = pow_i64(f.tgt.p, N);
  // embed the target into (Z/p^N)^n by scaling row i with p^{N - e_i}
  std::vector<std::vector<i64>> A(f.tgt.exponents.size(),
                                  std::vector<i64>(f.src.exponents.size(), 0));
  for (size_t i = 0; i < A.size(); ++i) {
    i64 scale = pow_i64(f.tgt.p, N - f.tgt.exponents[i]);
    for (size_t j = 0; j < A[i].size(); ++j) A[i][j] = mulmod(scale, mod_norm(f.m[i][j], m), m);
  }
  auto s = snf_mod(A, f.tgt.p, N);
  std::vector<u32> type;
  for (u32 v : s.vals)
    if (v < N) type.push_back(N - v);
  std::sort(type.begin(), type.end());
  return type;
}

bool pg_injective(const PGroupMap& f) {
  auto t = image_type(f);
  u32 s = 0;
  for (u32 e : t) s += e;
  return s == pg_order_exp(f.src);
}

bool image_in_socle(const PGroupMap& f, u32 i) {
  // a target element (x_k) is p^i-torsion iff val(x_k) >= e_k - i
  for (size_t k = 0; k < f.tgt.exponents.size(); ++k) {
    u32 e = f.tgt.exponents[k];
    if (e <= i) continue;
    for (size_t j = 0; j < f.src.exponents.size(); ++j)
      if (valuation(mod_norm(f.m[k][j], pow_i64(f.tgt.p, e)), f.tgt.p, e) < e - i) return false;
  }
  return true;
}

bool artinian_equal(const ArtinianType& a, const ArtinianType& b) {
  return a.p == b.p && a.finite_exponents == b.finite_exponents &&
         a.pruefer_count == b.pruefer_count;
}

// ---------------------------------------------------------------------------

PgSeqPtr seq_canonical_pruefer(u32 p) {
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::CanonicalPruefer;
  s->p = p;
  return s;
}

PgSeqPtr seq_constant(PGroup g) {
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::Constant;
  s->p = g.p;
  s->constant = std::move(g);
  return s;
}

PgSeqPtr seq_direct_sum(PgSeqPtr a, PgSeqPtr b) {
  if (a->p != b->p) throw std::invalid_argument("sequence sum: prime mismatch");
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::DirectSum;
  s->p = a->p;
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}

PgSeqPtr seq_socle_ramp(ArtinianType t) {
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::SocleRamp;
  s->p = t.p;
  s->ramp = std::move(t);
  return s;
}

PgSeqPtr seq_reindexed(PgSeqPtr inner, int stride, int offset) {
  if (stride < 1 || offset < 0) throw std::invalid_argument("reindex: not cofinal");
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::Reindexed;
  s->p = inner->p;
  s->inner = std::move(inner);
  s->stride = stride;
  s->offset = offset;
  return s;
}

PgSeqPtr seq_raw(std::vector<PGroup> groups, std::vector<PGroupMap> maps) {
  if (groups.empty() || maps.size() + 1 != groups.size())
    throw std::invalid_argument("raw sequence: need one map less than groups");
  auto s = std::make_shared<PgSeq>();
  s->rule = PgSeq::Rule::Raw;
  s->p = groups[0].p;
  s->groups = std::move(groups);
  s->maps = std::move(maps);
  return s;
}

namespace {

// exponents of soc^{i+1} of an artinian type: ramp the finite part, one growing
// chain per Pruefer factor; ordering is componentwise stable (ascending)
PGroup ramp_group(const ArtinianType& t, int i) {
  std::vector<u32> e;
  for (u32 x : t.finite_exponents) e.push_back(std::min((u32)(i + 1), x));
  for (u32 k = 0; k < t.pruefer_count; ++k) e.push_back(i + 1);
  return make_pgroup(t.p, e);
}

}  // namespace

PGroup seq_group_at(const PgSeq& s, int i) {
  if (i < 0) throw std::invalid_argument("sequence index negative");
  switch (s.rule) {
    case PgSeq::Rule::CanonicalPruefer:
      return make_pgroup(s.p, {(u32)(i + 1)});
    case PgSeq::Rule::Constant:
      return s.constant;
    case PgSeq::Rule::DirectSum:
      return pg_direct_sum(seq_group_at(*s.a, i), seq_group_at(*s.b, i));
    case PgSeq::Rule::SocleRamp:
      return ramp_group(s.ramp, i);
    case PgSeq::Rule::Reindexed:
      return seq_group_at(*s.inner, s.stride * i + s.offset);
    case PgSeq::Rule::Raw:
      if ((size_t)i >= s.groups.size()) throw std::runtime_error("horizon insufficient");
      return s.groups[i];
  }
  throw std::logic_error("unreachable");
}

PGroupMap seq_map_at(const PgSeq& s, int i) {
  if (i < 0) throw std::invalid_argument("sequence index negative");
  switch (s.rule) {
    case PgSeq::Rule::CanonicalPruefer:
      return make_pgroup_map(seq_group_at(s, i), seq_group_at(s, i + 1), {{(i64)s.p}});
    case PgSeq::Rule::Constant:
      return pg_identity(s.constant);
    case PgSeq::Rule::DirectSum:
      return pg_block_sum(seq_map_at(*s.a, i), seq_map_at(*s.b, i));
    case PgSeq::Rule::SocleRamp: {
      PGroup a = ramp_group(s.ramp, i), b = ramp_group(s.ramp, i + 1);
      size_t n = s.ramp.finite_exponents.size() + s.ramp.pruefer_count;
      std::vector<std::vector<i64>> m(b.exponents.size(), std::vector<i64>(a.exponents.size(), 0));
      for (size_t k = 0; k < n; ++k)
        m[k][k] = pow_i64(s.p, b.exponents[k] - a.exponents[k]);
      return make_pgroup_map(a, b, std::move(m));
    }
    case PgSeq::Rule::Reindexed: {
      int from = s.stride * i + s.offset, to = s.stride * (i + 1) + s.offset;
      PGroupMap f = seq_map_at(*s.inner, from);
      for (int k = from + 1; k < to; ++k) f = pg_compose(seq_map_at(*s.inner, k), f);
      return f;
    }
    case PgSeq::Rule::Raw:
      if ((size_t)i >= s.maps.size()) throw std::runtime_error("horizon insufficient");
      return s.maps[i];
  }
  throw std::logic_error("unreachable");
}

bool is_socle_stable(const PgSeqPtr& s, int horizon) {
  for (int i = 0; i + 1 < horizon; ++i)
    if (!pg_injective(seq_map_at(*s, i)))
      throw std::invalid_argument("socle stability: non-injective map in sequence");
  for (int i = 0; i < horizon; ++i) {
    PGroupMap c = pg_identity(seq_group_at(*s, i));
    for (int j = i; j < horizon; ++j) {
      if (j > i) c = pg_compose(seq_map_at(*s, j - 1), c);
      // X_i must be exactly soc^{i+1}(X_j)
      if (!image_in_socle(c, i + 1)) return false;
      if (pg_order_exp(c.src) != pg_order_exp(pg_socle(c.tgt, i + 1))) return false;
    }
  }
  return true;
}

ArtinianType classify_colimit(const PgSeqPtr& s, int horizon) {
  if (horizon < 2) throw std::runtime_error("horizon insufficient");
  // empirical Cauchy check: socle rank must stabilize within the horizon
  size_t rank_last = seq_group_at(*s, horizon - 1).exponents.size();
  size_t rank_prev = seq_group_at(*s, horizon - 2).exponents.size();
  if (rank_last != rank_prev) throw std::runtime_error("not Cauchy");

  switch (s->rule) {
    case PgSeq::Rule::CanonicalPruefer:
      return {s->p, {}, 1};
    case PgSeq::Rule::Constant:
      return {s->p, s->constant.exponents, 0};
    case PgSeq::Rule::DirectSum: {
      ArtinianType ta = classify_colimit(s->a, horizon);
      ArtinianType tb = classify_colimit(s->b, horizon);
      std::vector<u32> fe = ta.finite_exponents;
      fe.insert(fe.end(), tb.finite_exponents.begin(), tb.finite_exponents.end());
      std::sort(fe.begin(), fe.end());
      return {s->p, fe, ta.pruefer_count + tb.pruefer_count};
    }
    case PgSeq::Rule::SocleRamp: {
      // finite chains certified only when they stabilize inside the horizon
      for (u32 e : s->ramp.finite_exponents)
        if ((int)e >= horizon) throw std::runtime_error("horizon insufficient");
      // Pruefer chains strictly grow by the generator rule: certified
      return s->ramp;
    }
    case PgSeq::Rule::Reindexed:
      return classify_colimit(s->inner, s->stride * (horizon - 1) + s->offset + 1);
    case PgSeq::Rule::Raw:
      // a finite prefix carries no certificate about its tail
      throw std::runtime_error("horizon insufficient");
  }
  throw std::logic_error("unreachable");
}

}  // namespace pcc
