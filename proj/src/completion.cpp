#include "pcc/completion.hpp"

#include <climits>
#include <map>

namespace pcc {

namespace {

using Rule = CauchySeq::Rule;

bool neg_inf(int c) { return c <= kCoconnNegInf / 2; }

// homotopy-hom spaces between cached complexes recur constantly; memoize by
// pointer identity (the stored shared_ptrs keep the keys alive)
const KHomSpace& khom_cached(const ComplexPtr& X, const ComplexPtr& Y) {
  static std::map<std::pair<const Complex*, const Complex*>, KHomSpace> cache;
  auto key = std::make_pair(X.get(), Y.get());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, khom(X, Y)).first->second;
}

// certified index from which Hom(C, X_i) -> Hom(C, X_{i+1}) is bijective
int certified_bound(const CauchySeq& s, const ComplexPtr& C) {
  if (C->empty() || neg_inf(s.coconn)) return 0;
  return std::max(0, s.coconn - C->lo + 2);
}

bool step_bijective(const ComplexPtr& C, const CSeqPtr& s, int i) {
  const KHomSpace& Ka = khom_cached(C, seq_at(s, i));
  const KHomSpace& Kb = khom_cached(C, seq_at(s, i + 1));
  if (Ka.dim() != Kb.dim()) return false;
  if (Ka.dim() == 0) return true;
  auto conn = seq_map(s, i);
  Mat m(C->A->p, Kb.dim(), Ka.dim());
  for (size_t t = 0; t < Ka.dim(); ++t) {
    Mat c = Kb.coords_of(compose_chain(conn, Ka.rep(t)));
    for (size_t r = 0; r < c.rows(); ++r) m.at(r, t) = c.at(r, 0);
  }
  return rank_of(m) == m.rows();
}

std::pair<bool, std::pair<int, int>> seq_window(const CauchySeq& s) {
  if (s.win_empty) return {true, {1, 0}};
  return {false, {s.win_a, s.win_b}};
}

}  // namespace

// ---------------------------------------------------------------------------
// sequence terms and transition maps

ComplexPtr seq_at(const CSeqPtr& sp, int i) {
  if (i < 0) throw std::invalid_argument("sequence index must be >= 0");
  const CauchySeq& s = *sp;
  auto it = s.at_cache.find(i);
  if (it != s.at_cache.end()) return it->second;
  ComplexPtr r;
  switch (s.rule) {
    case Rule::Truncation:
      r = s.res->truncated_geq(-i);
      break;
    case Rule::Constant:
      r = s.constant;
      break;
    case Rule::Shifted:
      r = shift_complex(seq_at(s.inner, i), s.shift_m);
      break;
    case Rule::Coned:
      r = cone(s.phi->at(i)).cone;
      break;
    case Rule::DirectSum:
      r = direct_sum_complex(seq_at(s.inner, i), seq_at(s.second, i));
      break;
    case Rule::Reindexed: {
      int fi = s.remap(i);
      if (fi < i) throw std::invalid_argument("reindexing map must satisfy f(i) >= i");
      r = seq_at(s.inner, fi);
      break;
    }
    case Rule::Prefix:
      if (i >= (int)s.prefix_groups.size())
        throw std::out_of_range("prefix sequence exhausted");
      r = s.prefix_groups[i];
      break;
  }
  s.at_cache[i] = r;
  return r;
}

ChainMap seq_map(const CSeqPtr& sp, int i) {
  if (i < 0) throw std::invalid_argument("sequence index must be >= 0");
  const CauchySeq& s = *sp;
  auto it = s.map_cache.find(i);
  if (it != s.map_cache.end()) return it->second;
  ComplexPtr Xi = seq_at(sp, i), Xj = seq_at(sp, i + 1);
  ChainMap r;
  switch (s.rule) {
    case Rule::Truncation: {
      // inclusion of the shallower brutal truncation: identity components
      if (Xi->empty()) {
        r = zero_chain(Xi, Xj);
      } else {
        std::vector<Mat> comps;
        for (int m = Xi->lo; m <= Xi->hi; ++m)
          comps.push_back(Mat::identity(Xi->A->p, comp_at(*Xi, m)->dim));
        r = make_chain_map(Xi, Xj, Xi->lo, comps);
      }
      break;
    }
    case Rule::Constant:
      r = identity_chain(s.constant);
      break;
    case Rule::Shifted: {
      auto f = shift_chain(seq_map(s.inner, i), s.shift_m);
      r = make_chain_map(Xi, Xj, f.lo, f.comps, false);
      break;
    }
    case Rule::Coned: {
      auto f = cone_functor_map(s.phi->at(i), s.phi->at(i + 1), seq_map(s.phi->src, i),
                                seq_map(s.phi->tgt, i));
      r = make_chain_map(Xi, Xj, f.lo, f.comps, false);
      break;
    }
    case Rule::DirectSum: {
      ComplexPtr Ai = seq_at(s.inner, i), Bi = seq_at(s.second, i);
      ComplexPtr Aj = seq_at(s.inner, i + 1), Bj = seq_at(s.second, i + 1);
      auto part_a = compose_chain(sum_inj(Aj, Bj, Xj, 0),
                                  compose_chain(seq_map(s.inner, i), sum_proj(Ai, Bi, Xi, 0)));
      auto part_b = compose_chain(sum_inj(Aj, Bj, Xj, 1),
                                  compose_chain(seq_map(s.second, i), sum_proj(Ai, Bi, Xi, 1)));
      r = add_chain(part_a, part_b);
      break;
    }
    case Rule::Reindexed: {
      int fi = s.remap(i), fj = s.remap(i + 1);
      if (fj < fi) throw std::invalid_argument("reindexing map must be nondecreasing");
      r = seq_map_range(s.inner, fi, fj);
      break;
    }
    case Rule::Prefix:
      if (i >= (int)s.prefix_maps.size()) throw std::out_of_range("prefix sequence exhausted");
      r = s.prefix_maps[i];
      break;
  }
  s.map_cache[i] = r;
  return r;
}

ChainMap seq_map_range(const CSeqPtr& s, int i, int j) {
  if (j < i) throw std::invalid_argument("seq_map_range needs i <= j");
  ChainMap r = identity_chain(seq_at(s, i));
  for (int k = i; k < j; ++k) r = compose_chain(seq_map(s, k), r);
  return r;
}

// ---------------------------------------------------------------------------
// constructors with certificates

CSeqPtr truncation_sequence(const ResolutionPtr& res) {
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Truncation;
  s->A = res->target->A;
  s->res = res;
  // cone of sigma_{>=-i} -> sigma_{>=-j} is the stripe in degrees [-j, -i-1]
  s->coconn = -1;
  auto w = cohom_window(res->target);
  if (w.first > w.second)
    s->win_empty = true;
  else {
    s->win_a = w.first;
    s->win_b = w.second;
  }
  return s;
}

CSeqPtr truncation_sequence(const ComplexPtr& M) {
  return truncation_sequence(resolve_complex(M));
}

CSeqPtr constant_sequence(const ComplexPtr& Z) {
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Constant;
  s->A = Z->A;
  s->constant = Z;
  s->coconn = kCoconnNegInf;
  auto w = cohom_window(Z);
  if (w.first > w.second)
    s->win_empty = true;
  else {
    s->win_a = w.first;
    s->win_b = w.second;
  }
  return s;
}

CSeqPtr shifted_sequence(const CSeqPtr& x, int m) {
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Shifted;
  s->A = x->A;
  s->inner = x;
  s->shift_m = m;
  s->certified = x->certified;
  s->coconn = neg_inf(x->coconn) ? kCoconnNegInf : x->coconn - m;
  s->win_empty = x->win_empty;
  s->win_a = x->win_a - m;
  s->win_b = x->win_b - m;
  return s;
}

CSeqPtr directsum_sequence(const CSeqPtr& a, const CSeqPtr& b) {
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::DirectSum;
  s->A = a->A;
  s->inner = a;
  s->second = b;
  s->certified = a->certified && b->certified;
  s->coconn = std::max(a->coconn, b->coconn);
  auto [ea, wa] = seq_window(*a);
  auto [eb, wb] = seq_window(*b);
  if (ea && eb)
    s->win_empty = true;
  else if (ea) {
    s->win_a = wb.first;
    s->win_b = wb.second;
  } else if (eb) {
    s->win_a = wa.first;
    s->win_b = wa.second;
  } else {
    s->win_a = std::min(wa.first, wb.first);
    s->win_b = std::max(wa.second, wb.second);
  }
  return s;
}

CSeqPtr reindex_seq(const CSeqPtr& x, std::function<int(int)> f) {
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Reindexed;
  s->A = x->A;
  s->inner = x;
  s->remap = std::move(f);
  s->certified = x->certified;
  // cone(X_{f(i)} -> X_{f(j)}) supported <= c - f(i) <= c - i
  s->coconn = x->coconn;
  s->win_empty = x->win_empty;
  s->win_a = x->win_a;
  s->win_b = x->win_b;
  return s;
}

CSeqPtr reindex_seq(const CSeqPtr& x, int stride, int offset) {
  if (stride < 1 || offset < 0)
    throw std::invalid_argument("reindexing needs stride >= 1, offset >= 0");
  return reindex_seq(x, [stride, offset](int i) { return stride * i + offset; });
}

CSeqPtr prefix_sequence(std::vector<ComplexPtr> groups, std::vector<ChainMap> maps) {
  if (groups.empty() || maps.size() + 1 != groups.size())
    throw std::invalid_argument("prefix sequence needs n groups and n-1 maps");
  for (size_t i = 0; i < maps.size(); ++i)
    if (maps[i].src != groups[i] || maps[i].tgt != groups[i + 1])
      throw std::invalid_argument("prefix maps must connect consecutive groups");
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Prefix;
  s->A = groups.front()->A;
  s->prefix_groups = std::move(groups);
  s->prefix_maps = std::move(maps);
  s->certified = false;
  s->coconn = 0;
  return s;
}

// ---------------------------------------------------------------------------
// sequence morphisms

SeqMorphism seqmor_identity(const CSeqPtr& x) {
  SeqMorphism f;
  f.src = f.tgt = x;
  f.at = [x](int i) { return identity_chain(seq_at(x, i)); };
  f.ev_invertible = true;
  f.inv_bound = kCoconnNegInf;
  return f;
}

SeqMorphism seqmor_zero(const CSeqPtr& x, const CSeqPtr& y) {
  SeqMorphism f;
  f.src = x;
  f.tgt = y;
  f.at = [x, y](int i) { return zero_chain(seq_at(x, i), seq_at(y, i)); };
  return f;
}

SeqMorphism seqmor_constant(const ChainMap& g) {
  SeqMorphism f;
  f.src = constant_sequence(g.src);
  f.tgt = constant_sequence(g.tgt);
  f.at = [g](int) { return g; };
  return f;
}

SeqMorphism seqmor_shift(const SeqMorphism& f, int m) {
  SeqMorphism r;
  r.src = shifted_sequence(f.src, m);
  r.tgt = shifted_sequence(f.tgt, m);
  auto src = r.src, tgt = r.tgt;
  auto at = f.at;
  r.at = [src, tgt, at, m](int i) {
    auto g = shift_chain(at(i), m);
    return make_chain_map(seq_at(src, i), seq_at(tgt, i), g.lo, g.comps, false);
  };
  r.strict = f.strict;
  r.ev_invertible = f.ev_invertible;
  r.inv_bound = neg_inf(f.inv_bound) ? kCoconnNegInf : f.inv_bound - m;
  return r;
}

SeqMorphism seqmor_sum(const SeqMorphism& f, const SeqMorphism& g) {
  SeqMorphism r;
  r.src = directsum_sequence(f.src, g.src);
  r.tgt = directsum_sequence(f.tgt, g.tgt);
  auto src = r.src, tgt = r.tgt;
  auto fa = f, ga = g;
  r.at = [src, tgt, fa, ga](int i) {
    auto Si = seq_at(src, i), Ti = seq_at(tgt, i);
    auto As = seq_at(fa.src, i), Bs = seq_at(ga.src, i);
    auto At = seq_at(fa.tgt, i), Bt = seq_at(ga.tgt, i);
    auto pa = compose_chain(sum_inj(At, Bt, Ti, 0), compose_chain(fa.at(i), sum_proj(As, Bs, Si, 0)));
    auto pb = compose_chain(sum_inj(At, Bt, Ti, 1), compose_chain(ga.at(i), sum_proj(As, Bs, Si, 1)));
    return add_chain(pa, pb);
  };
  r.strict = f.strict && g.strict;
  r.ev_invertible = f.ev_invertible && g.ev_invertible;
  r.inv_bound = std::max(f.inv_bound, g.inv_bound);
  return r;
}

SeqMorphism seqmor_compose(const SeqMorphism& g, const SeqMorphism& f) {
  if (f.tgt != g.src)
    throw std::invalid_argument("seqmor_compose: domain mismatch");
  SeqMorphism r;
  r.src = f.src;
  r.tgt = g.tgt;
  auto fa = f, ga = g;
  r.at = [fa, ga](int i) { return compose_chain(ga.at(i), fa.at(i)); };
  r.strict = f.strict && g.strict;
  r.ev_invertible = f.ev_invertible && g.ev_invertible;
  if (r.ev_invertible)
    r.inv_bound = (neg_inf(f.inv_bound) && neg_inf(g.inv_bound))
                      ? kCoconnNegInf
                      : std::max(f.inv_bound, g.inv_bound) + 1;
  return r;
}

SeqMorphism canonical_reindex_mor(const CSeqPtr& x, std::function<int(int)> f) {
  SeqMorphism r;
  r.src = x;
  r.tgt = reindex_seq(x, f);
  auto g = r.tgt;
  r.at = [x, g](int i) { return seq_map_range(x, i, g->remap(i)); };
  r.ev_invertible = x->certified;
  r.inv_bound = x->coconn;  // cone(conn_{i -> f(i)}) supported <= coconn - i
  return r;
}

bool seqmor_natural(const SeqMorphism& f, int i) {
  auto lhs = compose_chain(f.at(i + 1), seq_map(f.src, i));
  auto rhs = compose_chain(seq_map(f.tgt, i), f.at(i));
  if (f.strict) return chain_map_equal_strict(lhs, rhs);
  return chain_maps_homotopic(lhs, rhs);
}

// ---------------------------------------------------------------------------
// strict lifts of maps between resolution targets

namespace {

ModulePtr res_mod(const ResolutionPtr& R, int m) {
  int k = R->top - m;
  if (k < 0 || k >= (int)R->mods.size()) return zero_module(R->target->A);
  return R->mods[k];
}

Mat res_diff(const ResolutionPtr& R, int m) {  // P^m -> P^{m+1}
  int k = R->top - m - 1;
  if (k < 0 || k >= (int)R->diffs.size())
    return Mat(R->target->A->p, res_mod(R, m + 1)->dim, res_mod(R, m)->dim);
  return R->diffs[k];
}

Mat res_eps(const ResolutionPtr& R, int m) {  // P^m -> X^m
  int k = R->top - m;
  if (k < 0 || k >= (int)R->eps.size())
    return Mat(R->target->A->p, comp_at(*R->target, m)->dim, res_mod(R, m)->dim);
  return R->eps[k];
}

Mat flat_col(const Mat& m) {
  Mat v(m.p(), m.rows() * m.cols(), 1);
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i) v.at(j * m.rows() + i, 0) = m.at(i, j);
  return v;
}

struct LiftState {
  ResolutionPtr rm, rn;
  ChainMap f;  // map of resolution targets
  int built_down = 0;
  std::map<int, Mat> u;  // u[m]: P_M^m -> P_N^m, strict chain map
  std::map<int, Mat> h;  // h[m]: P_M^m -> N^{m-1}, homotopy eps_N u ~ f eps_M

  Mat u_at(int m) {
    auto it = u.find(m);
    if (it != u.end()) return it->second;
    return Mat(rm->target->A->p, res_mod(rn, m)->dim, res_mod(rm, m)->dim);
  }
  Mat h_at(int m) {
    auto it = h.find(m);
    if (it != h.end()) return it->second;
    return Mat(rm->target->A->p, comp_at(*rn->target, m - 1)->dim, res_mod(rm, m)->dim);
  }

  // solve degrees down to lo: jointly pick u^n with d u^n = u^{n+1} d and a
  // homotopy component h^n keeping eps_N u ~ f eps_M
  void extend(int lo) {
    for (int n = built_down - 1; n >= lo; --n) {
      rm->ensure(n);
      rn->ensure(n);
      const AlgebraPtr& A = rm->target->A;
      ModulePtr PM = res_mod(rm, n), PN = res_mod(rn, n);
      if (PM->dim == 0) {
        built_down = n;
        continue;
      }
      ModulePtr PN1 = res_mod(rn, n + 1);
      ModulePtr Nn = comp_at(*rn->target, n), Nm1 = comp_at(*rn->target, n - 1);
      auto HU = module_hom(PM, PN);
      auto HH = module_hom(PM, Nm1);
      size_t rows1 = PN1->dim * PM->dim, rows2 = Nn->dim * PM->dim;
      Mat sys(A->p, rows1 + rows2, HU.dim() + HH.dim());
      Mat dPN = res_diff(rn, n);
      Mat epsN = res_eps(rn, n);
      Mat dN = diff_at(*rn->target, n - 1);
      for (size_t i = 0; i < HU.dim(); ++i) {
        Mat v1 = flat_col(dPN * HU.basis[i]);
        for (size_t r = 0; r < rows1; ++r) sys.at(r, i) = v1.at(r, 0);
        Mat v2 = flat_col(epsN * HU.basis[i]);
        for (size_t r = 0; r < rows2; ++r) sys.at(rows1 + r, i) = v2.at(r, 0);
      }
      for (size_t i = 0; i < HH.dim(); ++i) {
        Mat v2 = flat_col(dN * HH.basis[i]);
        for (size_t r = 0; r < rows2; ++r) sys.at(rows1 + r, HU.dim() + i) = v2.at(r, 0);
      }
      Mat dPM = res_diff(rm, n);
      Mat rhs1 = flat_col(u_at(n + 1) * dPM);
      Mat rhs2 = flat_col(cm_at(f, n) * res_eps(rm, n) - h_at(n + 1) * dPM);
      Mat rhs = rhs1.vstack(rhs2);
      auto sol = solve(sys, rhs);
      if (!sol)
        throw std::runtime_error("truncation lift: comparison system unsolvable");
      Mat un(A->p, PN->dim, PM->dim), hn(A->p, Nm1->dim, PM->dim);
      for (size_t i = 0; i < HU.dim(); ++i) un = un + HU.basis[i].scaled(sol->at(i, 0));
      for (size_t i = 0; i < HH.dim(); ++i) hn = hn + HH.basis[i].scaled(sol->at(HU.dim() + i, 0));
      u[n] = un;
      h[n] = hn;
      built_down = n;
    }
  }
};

}  // namespace

SeqMorphism truncation_lift(const ResolutionPtr& rm, const ResolutionPtr& rn,
                            const ChainMap& f) {
  auto st = std::make_shared<LiftState>();
  st->rm = rm;
  st->rn = rn;
  st->f = f;
  st->built_down = std::max(rm->top, rn->top) + 1;
  SeqMorphism r;
  r.src = truncation_sequence(rm);
  r.tgt = truncation_sequence(rn);
  auto src = r.src, tgt = r.tgt;
  r.at = [st, src, tgt](int i) {
    ComplexPtr Xi = seq_at(src, i), Yi = seq_at(tgt, i);
    if (Xi->empty() || Yi->empty()) return zero_chain(Xi, Yi);
    st->extend(std::min(Xi->lo, Yi->lo));
    int lo = std::max(Xi->lo, Yi->lo), hi = std::min(Xi->hi, Yi->hi);
    if (lo > hi) return zero_chain(Xi, Yi);
    std::vector<Mat> comps;
    for (int m = lo; m <= hi; ++m) comps.push_back(st->u_at(m));
    return make_chain_map(Xi, Yi, lo, comps);
  };
  return r;
}

// ---------------------------------------------------------------------------
// Cauchy criterion, colimit and completion homs

std::vector<int> is_cauchy(const CSeqPtr& x, const std::vector<ComplexPtr>& compacts,
                           int horizon) {
  std::vector<int> out;
  for (const auto& C : compacts) {
    if (x->certified) {
      int nc = certified_bound(*x, C);
      for (int i = nc; i <= horizon - 2; ++i)
        if (!step_bijective(C, x, i))
          throw std::logic_error("Cauchy certificate failed empirically");
      out.push_back(nc);
    } else {
      // longest bijective suffix of steps, at least two steps required
      int n = horizon - 1;
      for (int i = horizon - 2; i >= 0; --i) {
        if (step_bijective(C, x, i))
          n = i;
        else
          break;
      }
      if (horizon - 1 - n < 2) throw std::runtime_error("not Cauchy within horizon");
      out.push_back(n);
    }
  }
  return out;
}

ColimHom colim_hom(const ComplexPtr& C, const CSeqPtr& Y, int min_index) {
  if (!Y->certified)
    throw std::invalid_argument("colim_hom needs a certified sequence");
  ColimHom h;
  h.C = C;
  h.Y = Y;
  h.j = std::max(min_index, certified_bound(*Y, C));
  h.kh = khom_cached(C, seq_at(Y, h.j));
  if (!step_bijective(C, Y, h.j))
    throw std::runtime_error("colimit not stabilized at certified index");
  return h;
}

Mat colim_class_at(const ColimHom& h, const ChainMap& r, int jr) {
  int J = std::max(h.j, jr);
  const KHomSpace& KJ = khom_cached(h.C, seq_at(h.Y, J));
  if (KJ.dim() != h.dim())
    throw std::logic_error("colimit alignment dimension mismatch");
  ChainMap rr = jr == J ? r : compose_chain(seq_map_range(h.Y, jr, J), r);
  Mat v = KJ.coords_of(rr);
  if (h.dim() == 0) return v;
  if (J == h.j) return v;
  Mat B(h.C->A->p, KJ.dim(), h.dim());
  auto push = seq_map_range(h.Y, h.j, J);
  for (size_t t = 0; t < h.dim(); ++t) {
    Mat c = KJ.coords_of(compose_chain(push, h.kh.rep(t)));
    for (size_t rw = 0; rw < c.rows(); ++rw) B.at(rw, t) = c.at(rw, 0);
  }
  auto sol = solve(B, v);
  if (!sol) throw std::logic_error("colimit alignment solve failed");
  return *sol;
}

namespace {

ColimHom colim_view(const CompletionHom& h) {
  ColimHom c;
  c.C = seq_at(h.X, h.i);
  c.Y = h.Y;
  c.j = h.j;
  c.kh = h.kh;
  return c;
}

// matrix of the tower restriction T_{ir} -> T_{h.i} in stabilized coordinates
Mat outer_matrix(const CompletionHom& h, const ColimHom& deeper, int ir) {
  Mat A(h.X->A->p, h.dim(), deeper.dim());
  auto conn = seq_map_range(h.X, h.i, ir);
  auto view = colim_view(h);
  for (size_t t = 0; t < deeper.dim(); ++t) {
    Mat c = colim_class_at(view, compose_chain(deeper.kh.rep(t), conn), deeper.j);
    for (size_t r = 0; r < c.rows(); ++r) A.at(r, t) = c.at(r, 0);
  }
  return A;
}

}  // namespace

CompletionHom completion_hom(const CSeqPtr& x, const CSeqPtr& y, int min_outer) {
  if (!x->certified || !y->certified)
    throw std::invalid_argument("completion_hom needs certified sequences");
  int base = 0;
  if (!neg_inf(x->coconn) && !y->win_empty)
    base = std::max(0, x->coconn - y->win_a + 2);
  CompletionHom h;
  h.X = x;
  h.Y = y;
  h.i = std::max(base, min_outer);
  auto ch = colim_hom(seq_at(x, h.i), y);
  h.j = ch.j;
  h.kh = ch.kh;
  // one-step-deeper verification of the outer tower
  auto ch1 = colim_hom(seq_at(x, h.i + 1), y, h.j);
  if (ch1.dim() != h.dim()) throw std::runtime_error("tower failed to stabilize");
  if (h.dim() > 0) {
    Mat A = outer_matrix(h, ch1, h.i + 1);
    if (A.rows() != A.cols() || rank_of(A) != A.rows())
      throw std::runtime_error("tower failed to stabilize");
  }
  return h;
}

Mat completion_class_at(const CompletionHom& h, const ChainMap& r, int ir, int jr) {
  if (ir < h.i)
    throw std::invalid_argument("completion_class_at: index shallower than the space");
  ChainMap rr = ir == h.i ? r : compose_chain(r, seq_map_range(h.X, h.i, ir));
  return colim_class_at(colim_view(h), rr, jr);
}

ChainMap completion_rep_at(const CompletionHom& h, const Mat& coords, int ir, int* out_j) {
  if (ir < h.i)
    throw std::invalid_argument("completion_rep_at: index shallower than the space");
  if (ir == h.i) {
    if (out_j) *out_j = h.j;
    return h.kh.from_coords(coords);
  }
  auto K = colim_hom(seq_at(h.X, ir), h.Y, h.j);
  if (K.dim() != h.dim()) throw std::runtime_error("tower failed to stabilize");
  if (out_j) *out_j = K.j;
  if (h.dim() == 0) return zero_chain(seq_at(h.X, ir), seq_at(h.Y, K.j));
  Mat A = outer_matrix(h, K, ir);
  auto sol = solve(A, coords);
  if (!sol) throw std::logic_error("tower lift solve failed");
  return K.kh.from_coords(*sol);
}

Mat completion_compose(const CompletionHom& g, const Mat& gc, const CompletionHom& f,
                       const Mat& fc, const CompletionHom& gf) {
  if (f.X != gf.X || g.Y != gf.Y || g.X != f.Y)
    throw std::invalid_argument("completion_compose: sequence mismatch");
  if (gf.dim() == 0) return Mat(f.X->A->p, 0, 1);
  int i0 = std::max(f.i, gf.i);
  int jf = 0;
  auto fr = completion_rep_at(f, fc, i0, &jf);  // X_{i0} -> Y_{jf}
  int m = std::max(jf, g.i);
  auto fr2 = m == jf ? fr : compose_chain(seq_map_range(f.Y, jf, m), fr);
  int jg = 0;
  auto gr = completion_rep_at(g, gc, m, &jg);  // Y_m -> Z_{jg}
  auto comp = compose_chain(gr, fr2);          // X_{i0} -> Z_{jg}
  return completion_class_at(gf, comp, i0, jg);
}

// ---------------------------------------------------------------------------
// left fractions

Fraction fraction_from_mor(const SeqMorphism& a) {
  return {a, seqmor_identity(a.tgt)};
}

namespace {

// shared lazily-extended data for a square completion: given sigma: Y -> Z in
// the eventually-invertible class and beta: Y -> W, find per index n a depth
// m(n) and w_n: Z_n -> Y_{m(n)} inverting sigma up to homotopy
struct SquareState {
  SeqMorphism sigma;  // Y -> Z
  std::vector<int> m;
  std::vector<ChainMap> w;

  void extend(size_t n1) {
    while (m.size() <= n1) {
      int n = (int)m.size();
      const CSeqPtr& Y = sigma.src;
      const CSeqPtr& Z = sigma.tgt;
      ComplexPtr Zn = seq_at(Z, n);
      int s = sigma.inv_bound;
      int mm = n;
      if (!neg_inf(s)) {
        if (!Zn->empty()) mm = std::max(mm, s - Zn->lo + 2);
        ComplexPtr Yn = seq_at(Y, n);
        if (!Yn->empty()) mm = std::max(mm, s - Yn->lo + 2);
      }
      if (!m.empty()) mm = std::max(mm, m.back());
      // solve [sigma_m w] = [conn^Z_{n -> m}] in the homotopy category
      const KHomSpace& KW = khom_cached(Zn, seq_at(Y, mm));
      const KHomSpace& KZ = khom_cached(Zn, seq_at(Z, mm));
      Mat P(Zn->A->p, KZ.dim(), KW.dim());
      auto sm = sigma.at(mm);
      for (size_t t = 0; t < KW.dim(); ++t) {
        Mat c = KZ.coords_of(compose_chain(sm, KW.rep(t)));
        for (size_t r = 0; r < c.rows(); ++r) P.at(r, t) = c.at(r, 0);
      }
      Mat rhs = KZ.coords_of(seq_map_range(Z, n, mm));
      auto sol = solve(P, rhs);
      if (!sol)
        throw std::runtime_error("fraction: denominator not invertible at certified index");
      ChainMap wn = KW.from_coords(*sol);
      // cross-check the other composite against the connecting map
      if (!chain_maps_homotopic(compose_chain(wn, sigma.at(n)), seq_map_range(Y, n, mm)))
        throw std::logic_error("fraction inverse failed cross-check");
      m.push_back(mm);
      w.push_back(wn);
    }
  }
};

}  // namespace

Fraction fraction_compose(const Fraction& g, const Fraction& f) {
  if (g.alpha.src != f.sigma.src)
    throw std::invalid_argument("fraction_compose: middle object mismatch");
  if (!f.sigma.ev_invertible || !g.sigma.ev_invertible)
    throw std::invalid_argument("fraction_compose: denominators must be eventually invertible");
  auto st = std::make_shared<SquareState>();
  st->sigma = f.sigma;
  auto fmap = [st](int n) {
    st->extend(n);
    return st->m[n];
  };
  const CSeqPtr& Zg = g.alpha.tgt;
  // beta': Z_f -> (Z_g reindexed), beta'_n = beta_{m(n)} w_n; squares commute
  // in the homotopy category
  SeqMorphism bp;
  bp.src = f.alpha.tgt;
  bp.tgt = reindex_seq(Zg, fmap);
  auto beta = g.alpha;
  auto tgt = bp.tgt;
  bp.at = [st, beta, tgt](int n) {
    st->extend(n);
    auto c = compose_chain(beta.at(st->m[n]), st->w[n]);
    return make_chain_map(c.src, seq_at(tgt, n), c.lo, c.comps, false);
  };
  bp.strict = false;
  Fraction r;
  r.alpha = seqmor_compose(bp, f.alpha);
  r.sigma = seqmor_compose(canonical_reindex_mor(Zg, fmap), g.sigma);
  return r;
}

namespace {

// matrix of the map colim Hom(C, X_.) -> colim Hom(C, W_.) induced by a fraction
Mat fraction_induced(const Fraction& fr, const ComplexPtr& C) {
  auto CX = colim_hom(C, fr.alpha.src);
  auto CY = colim_hom(C, fr.sigma.src);
  auto CZ = colim_hom(C, fr.alpha.tgt);
  u32 p = C->A->p;
  Mat Ma(p, CZ.dim(), CX.dim());
  for (size_t t = 0; t < CX.dim(); ++t) {
    Mat c = colim_class_at(CZ, compose_chain(fr.alpha.at(CX.j), CX.kh.rep(t)), CX.j);
    for (size_t r = 0; r < c.rows(); ++r) Ma.at(r, t) = c.at(r, 0);
  }
  Mat Ms(p, CZ.dim(), CY.dim());
  for (size_t t = 0; t < CY.dim(); ++t) {
    Mat c = colim_class_at(CZ, compose_chain(fr.sigma.at(CY.j), CY.kh.rep(t)), CY.j);
    for (size_t r = 0; r < c.rows(); ++r) Ms.at(r, t) = c.at(r, 0);
  }
  if (Ms.rows() != Ms.cols() || rank_of(Ms) != Ms.rows())
    throw std::runtime_error("fraction: denominator not invertible on this compact");
  auto sol = solve(Ms, Ma);
  if (!sol) throw std::logic_error("fraction: induced-map solve failed");
  return *sol;
}

}  // namespace

bool fraction_equal(const Fraction& f, const Fraction& g,
                    const std::vector<ComplexPtr>& compacts) {
  if (f.alpha.src != g.alpha.src || f.sigma.src != g.sigma.src)
    throw std::invalid_argument("fraction_equal: the fractions must be parallel");
  for (const auto& C : compacts)
    if (!(fraction_induced(f, C) == fraction_induced(g, C))) return false;
  return true;
}

std::optional<SeqMorphism> lf3_witness(const SeqMorphism& a, const SeqMorphism& b,
                                       int horizon) {
  if (a.src != b.src || a.tgt != b.tgt)
    throw std::invalid_argument("lf3_witness: the morphisms must be parallel");
  const CSeqPtr Y = a.tgt;
  auto state = std::make_shared<std::vector<int>>();
  auto aa = a, bb = b;
  auto find = [aa, bb, Y, horizon, state](int n) -> int {
    while ((int)state->size() <= n) {
      int k = (int)state->size();
      int start = state->empty() ? k : std::max(k, state->back());
      auto d = sub_chain(aa.at(k), bb.at(k));
      int found = -1;
      for (int mm = start; mm <= horizon; ++mm) {
        if (is_null_homotopic(compose_chain(seq_map_range(Y, k, mm), d))) {
          found = mm;
          break;
        }
      }
      if (found < 0) throw std::runtime_error("equalizer witness horizon exceeded");
      state->push_back(found);
    }
    return (*state)[n];
  };
  try {
    for (int n = 0; n <= 2; ++n) find(n);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  return canonical_reindex_mor(Y, find);
}

// ---------------------------------------------------------------------------
// towers, lim^1, Mittag-Leffler

namespace {

using Zmat = std::vector<std::vector<i64>>;

i64 det_int(Zmat a) {
  // Bareiss fraction-free elimination
  size_t n = a.size();
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  __int128 d = m[n - 1][n - 1] * sign;
  if (d > (__int128)INT64_MAX || d < (__int128)INT64_MIN)
    throw std::overflow_error("integer determinant overflow");
  return (i64)d;
}

// unique column Hermite form of the lattice spanned by the columns
Zmat hnf_cols(Zmat a) {
  if (a.empty()) return a;
  size_t rows = a.size(), cols = a[0].size();
  auto colref = [&](size_t j) {
    std::vector<i64*> c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = &a[i][j];
    return c;
  };
  auto add_col = [&](size_t dst, size_t src, i64 q) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] += q * a[i][src];
  };
  auto swap_col = [&](size_t x, size_t y) {
    for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
  };
  (void)colref;
  size_t c = 0;
  for (size_t r = 0; r < rows && c < cols; ++r) {
    size_t j0 = c;
    while (j0 < cols && a[r][j0] == 0) ++j0;
    if (j0 == cols) continue;
    swap_col(j0, c);
    for (size_t j = c + 1; j < cols; ++j) {
      while (a[r][j] != 0) {
        i64 q = a[r][j] / a[r][c];
        add_col(j, c, -q);
        if (a[r][j] != 0) swap_col(c, j);
      }
    }
    if (a[r][c] < 0)
      for (size_t i = 0; i < rows; ++i) a[i][c] = -a[i][c];
    for (size_t j = 0; j < c; ++j) {
      i64 q = a[r][j] / a[r][c];
      if (a[r][j] % a[r][c] < 0) q -= 1;  // floor division
      add_col(j, c, -q);
    }
    ++c;
  }
  // drop zero columns (beyond c everything is zero by construction)
  for (auto& row : a) row.resize(c);
  return a;
}

Zmat zmul(const Zmat& x, const Zmat& y) {
  size_t n = x.size(), k = y.size(), m = y.empty() ? 0 : y[0].size();
  Zmat r(n, std::vector<i64>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) r[i][j] += x[i][t] * y[t][j];
  return r;
}

}  // namespace

MlResult ml_lim1(const Tower& t, int horizon) {
  MlResult r;
  if (!t.integral) {
    if (t.maps.empty()) {
      r.verdict = MlVerdict::Vanishes;
      r.note = "trivial prefix";
      return r;
    }
    int lim = std::min<int>((int)t.maps.size(), horizon);
    if (lim <= 0) {
      r.verdict = MlVerdict::Vanishes;
      r.note = "trivial prefix";
      return r;
    }
    // nested chain of images im(A_k -> A_0)
    std::vector<size_t> ranks;
    Mat comp = t.maps[0];
    ranks.push_back(rank_of(comp));
    for (int k = 1; k < lim; ++k) {
      comp = comp * t.maps[k];
      ranks.push_back(rank_of(comp));
    }
    int stab = (int)ranks.size() - 1;
    while (stab > 0 && ranks[stab - 1] == ranks.back()) --stab;
    r.verdict = MlVerdict::Vanishes;
    r.index = stab + 1;
    r.note = ranks.size() >= 2 && ranks[ranks.size() - 2] == ranks.back()
                 ? "finite-dimensional tower: image chain stabilized in the window"
                 : "finite-dimensional tower: stabilization guaranteed beyond the window";
    return r;
  }
  // constant integer rule
  size_t n = t.zmat.size();
  for (const auto& row : t.zmat)
    if (row.size() != n) throw std::invalid_argument("integral tower matrix must be square");
  i64 d = det_int(t.zmat);
  if (d != 0 && (d > 1 || d < -1)) {
    r.verdict = MlVerdict::MlFails;
    r.index = 1;
    r.note = "image lattice strictly descends: index multiplied by |det| = " +
             std::to_string(d < 0 ? -d : d) + " each step";
    return r;
  }
  if (d == 1 || d == -1) {
    r.verdict = MlVerdict::Vanishes;
    r.note = "unimodular transition: images are everything";
    return r;
  }
  // det 0: follow the image lattice chain empirically
  Zmat L = hnf_cols(t.zmat);
  for (int k = 1; k <= horizon; ++k) {
    Zmat Lnext = hnf_cols(zmul(t.zmat, L));
    if (Lnext == L) {
      r.verdict = MlVerdict::Vanishes;
      r.index = k;
      r.note = "image lattice stabilized; constant rule extends it forever";
      return r;
    }
    L = Lnext;
  }
  r.verdict = MlVerdict::Unknown;
  r.index = horizon;
  r.note = "image lattice still descending at the horizon";
  return r;
}

std::pair<size_t, size_t> milnor_window(const Tower& t) {
  if (t.integral)
    throw std::invalid_argument("milnor_window expects a finite-dimensional tower");
  if (t.dims.size() != t.maps.size() + 1)
    throw std::invalid_argument("milnor_window: dims/maps length mismatch");
  u32 p = t.maps.empty() ? 2 : t.maps[0].p();
  size_t h = t.maps.size();
  size_t rows = 0, cols = 0;
  std::vector<size_t> roff(h), coff(h + 1);
  for (size_t i = 0; i < h; ++i) {
    roff[i] = rows;
    rows += t.dims[i];
  }
  for (size_t i = 0; i <= h; ++i) {
    coff[i] = cols;
    cols += t.dims[i];
  }
  Mat Phi(p, rows, cols);
  Fp F(p);
  for (size_t i = 0; i < h; ++i) {
    for (size_t r = 0; r < t.dims[i]; ++r) Phi.at(roff[i] + r, coff[i] + r) = 1;
    const Mat& f = t.maps[i];
    for (size_t r = 0; r < f.rows(); ++r)
      for (size_t cc = 0; cc < f.cols(); ++cc)
        Phi.at(roff[i] + r, coff[i + 1] + cc) = F.neg(f.at(r, cc));
  }
  size_t rk = rank_of(Phi);
  return {cols - rk, rows - rk};
}

std::vector<MlResult> phantomless_check(const CSeqPtr& x, const CSeqPtr& y, int shift_lo,
                                        int shift_hi) {
  std::vector<MlResult> out;
  for (int m = shift_lo; m <= shift_hi; ++m) {
    auto xs = m == 0 ? x : shifted_sequence(x, m);
    int base = 0;
    if (!neg_inf(xs->coconn) && !y->win_empty)
      base = std::max(0, xs->coconn - y->win_a + 2);
    int imax = base + 2;
    std::vector<ColimHom> T;
    for (int i = 0; i <= imax; ++i) T.push_back(colim_hom(seq_at(xs, i), y));
    Tower tw;
    for (auto& c : T) tw.dims.push_back(c.dim());
    for (int i = 0; i < imax; ++i) {
      Mat M(x->A->p, T[i].dim(), T[i + 1].dim());
      auto conn = seq_map(xs, i);
      for (size_t t = 0; t < T[i + 1].dim(); ++t) {
        Mat c = colim_class_at(T[i], compose_chain(T[i + 1].kh.rep(t), conn), T[i + 1].j);
        for (size_t r = 0; r < c.rows(); ++r) M.at(r, t) = c.at(r, 0);
      }
      tw.maps.push_back(M);
    }
    out.push_back(ml_lim1(tw, imax));
  }
  return out;
}

// ---------------------------------------------------------------------------
// termwise cones and realization

SeqTriangle seq_cone(const SeqMorphism& phi) {
  if (!phi.strict)
    throw std::invalid_argument("termwise cones need a strict morphism");
  auto s = std::make_shared<CauchySeq>();
  s->rule = Rule::Coned;
  s->A = phi.src->A;
  s->phi = std::make_shared<SeqMorphism>(phi);
  s->certified = phi.src->certified && phi.tgt->certified;
  int cs = phi.src->coconn, ct = phi.tgt->coconn;
  s->coconn = (neg_inf(cs) && neg_inf(ct)) ? kCoconnNegInf : std::max(cs, ct) + 1;
  auto [es, ws] = seq_window(*phi.src);
  auto [et, wt] = seq_window(*phi.tgt);
  if (es && et)
    s->win_empty = true;
  else if (es) {
    s->win_a = wt.first;
    s->win_b = wt.second;
  } else if (et) {
    s->win_a = ws.first - 1;
    s->win_b = ws.second - 1;
  } else {
    s->win_a = std::min(wt.first, ws.first - 1);
    s->win_b = std::max(wt.second, ws.second - 1);
  }
  CSeqPtr cp = s;
  auto ph = s->phi;
  SeqTriangle tri;
  tri.cone = cp;
  tri.from_target.src = phi.tgt;
  tri.from_target.tgt = cp;
  tri.from_target.at = [ph, cp](int i) {
    auto cd = cone(ph->at(i));
    return make_chain_map(seq_at(ph->tgt, i), seq_at(cp, i), cd.from_target.lo,
                          cd.from_target.comps, false);
  };
  tri.to_shift.src = cp;
  tri.to_shift.tgt = shifted_sequence(phi.src, 1);
  auto sh = tri.to_shift.tgt;
  tri.to_shift.at = [ph, cp, sh](int i) {
    auto cd = cone(ph->at(i));
    return make_chain_map(seq_at(cp, i), seq_at(sh, i), cd.to_shift.lo, cd.to_shift.comps,
                          false);
  };
  return tri;
}

ComplexPtr realize(const CSeqPtr& x, int window_lo) {
  int i = neg_inf(x->coconn) ? 0 : std::max(0, x->coconn - window_lo + 2);
  return seq_at(x, i);
}

// ---------------------------------------------------------------------------
// the main verifier

void TheoremReport::add(bool pass, const std::string& what) {
  ok = ok && pass;
  lines.push_back(std::string(pass ? "pass: " : "FAIL: ") + what);
}

namespace {

// class of a completion representative inside a derived hom space sharing the
// same truncated domain: compose with the (shifted) augmentation of the
// target's resolution
Mat derived_class_of(const CompletionHom& C, const DbHomSpace& D,
                     const ResolutionPtr& tgt_res, int unshift, int nshift, const Mat& cc) {
  auto r = C.kh.from_coords(cc);
  if (unshift != 0) r = shift_chain(r, -unshift);
  auto aug = shift_chain(tgt_res->augmentation_geq(-C.j), nshift);
  auto comp = compose_chain(aug, r);
  auto as_d = make_chain_map(D.kh.src, D.kh.tgt, comp.lo, comp.comps, false);
  return D.kh.coords_of(as_d);
}

Mat colim_induced(const ComplexPtr& C, const SeqMorphism& psi) {
  auto CX = colim_hom(C, psi.src);
  auto CY = colim_hom(C, psi.tgt);
  Mat M(C->A->p, CY.dim(), CX.dim());
  for (size_t t = 0; t < CX.dim(); ++t) {
    Mat c = colim_class_at(CY, compose_chain(psi.at(CX.j), CX.kh.rep(t)), CX.j);
    for (size_t r = 0; r < c.rows(); ++r) M.at(r, t) = c.at(r, 0);
  }
  return M;
}

}  // namespace

TheoremReport verify_main_theorem(const AlgebraPtr& A,
                                  const std::vector<std::pair<ComplexPtr, ComplexPtr>>& pairs,
                                  int nlo, int nhi) {
  TheoremReport rep;
  int pi = 0;
  for (const auto& pr : pairs) {
    ++pi;
    const ComplexPtr& M = pr.first;
    const ComplexPtr& N = pr.second;
    auto resM = resolve_complex(M), resN = resolve_complex(N);
    auto sM = truncation_sequence(resM), sN = truncation_sequence(resN);
    std::string ptag = "pair " + std::to_string(pi);
    for (int n = nlo; n <= nhi; ++n) {
      std::string tag = ptag + ", shift " + std::to_string(n);
      try {
        auto D0 = dbhom(resM, N, n);
        auto sNn = shifted_sequence(sN, n);
        auto C0 = completion_hom(sM, sNn);
        int I = std::max(C0.i, -D0.trunc_lo);
        auto D = (-D0.trunc_lo == I) ? D0 : dbhom(resM, N, n, -I);
        auto C = (C0.i == I) ? C0 : completion_hom(sM, sNn, I);
        bool dims = D.dim() == C.dim();
        rep.add(dims, tag + ": dim " + std::to_string(C.dim()) + " matches the derived hom");
        if (dims && C.dim() > 0) {
          Mat Phi(A->p, D.dim(), C.dim());
          for (size_t t = 0; t < C.dim(); ++t) {
            Mat id = Mat(A->p, C.dim(), 1);
            id.at(t, 0) = 1;
            Mat c = derived_class_of(C, D, resN, 0, n, id);
            for (size_t r = 0; r < c.rows(); ++r) Phi.at(r, t) = c.at(r, 0);
          }
          rep.add(Phi.rows() == Phi.cols() && rank_of(Phi) == Phi.rows(),
                  tag + ": comparison map is bijective");
        }
      } catch (const std::exception& e) {
        rep.add(false, tag + ": " + e.what());
      }
    }
    // composition tables at shifts (n1, n2)
    std::vector<std::pair<int, int>> combos = {{0, 0}};
    if (nhi >= 1) combos.push_back({0, 1});
    for (auto [n1, n2] : combos) {
      std::string tag = ptag + ", shifts (" + std::to_string(n1) + "," + std::to_string(n2) + ")";
      try {
        auto sNn1 = shifted_sequence(sN, n1);
        auto sM12 = shifted_sequence(sM, n1 + n2);
        auto F0 = completion_hom(sM, sNn1);
        auto GF0 = completion_hom(sM, sM12);
        auto Fd0 = dbhom(resM, N, n1);
        auto GFd0 = dbhom(resM, M, n1 + n2);
        int I = std::max(std::max(F0.i, GF0.i), std::max(-Fd0.trunc_lo, -GFd0.trunc_lo));
        auto F = completion_hom(sM, sNn1, I);
        auto GF = completion_hom(sM, sM12, I);
        auto Fd = dbhom(resM, N, n1, -I);
        auto GFd = dbhom(resM, M, n1 + n2, -I);
        auto Gs0 = completion_hom(sNn1, sM12);
        auto Gd0 = dbhom(resN, M, n2);
        // the middle resolution must outrun the shared domain truncation for
        // the derived composition lift to be certified
        int depth = std::max(std::max(Gs0.i, -Gd0.trunc_lo), I + 2);
        auto Gs = (Gs0.i == depth) ? Gs0 : completion_hom(sNn1, sM12, depth);
        auto Gd = dbhom(resN, M, n2, -depth);
        bool ok = true;
        for (size_t a = 0; a < F.dim() && ok; ++a) {
          Mat ea(A->p, F.dim(), 1);
          ea.at(a, 0) = 1;
          Mat fd = derived_class_of(F, Fd, resN, 0, n1, ea);
          for (size_t b = 0; b < Gs.dim() && ok; ++b) {
            Mat eb(A->p, Gs.dim(), 1);
            eb.at(b, 0) = 1;
            Mat gd = derived_class_of(Gs, Gd, resM, n1, n2, eb);
            Mat cc = completion_compose(Gs, eb, F, ea, GF);
            Mat lhs = derived_class_of(GF, GFd, resM, 0, n1 + n2, cc);
            Mat rhs = db_compose(Gd, gd, Fd, fd, GFd);
            ok = lhs == rhs;
          }
        }
        rep.add(ok, tag + ": composition tables agree");
      } catch (const std::exception& e) {
        rep.add(false, tag + ": " + e.what());
      }
    }
  }
  // termwise cones are compatible with cones of realized maps (first pair)
  if (!pairs.empty()) {
    try {
      const ComplexPtr& M = pairs.front().first;
      const ComplexPtr& N = pairs.front().second;
      auto resM = resolve_complex(M), resN = resolve_complex(N);
      auto K0 = khom(M, N);
      ChainMap fmn = K0.dim() > 0 ? K0.rep(0) : zero_chain(M, N);
      auto phi = truncation_lift(resM, resN, fmn);
      auto tri = seq_cone(phi);
      auto sC = truncation_sequence(cone(fmn).cone);
      std::vector<ModulePtr> gens;
      for (const auto& pd : proj_indecs(A)) gens.push_back(pd.proj);
      auto Cp = stalk_complex(direct_sum_module(gens), 0);
      bool dims = true, exact = true;
      for (int n = nlo; n <= nhi; ++n) {
        auto a = colim_hom(Cp, n == 0 ? tri.cone : shifted_sequence(tri.cone, n));
        auto b = colim_hom(Cp, n == 0 ? sC : shifted_sequence(sC, n));
        dims = dims && a.dim() == b.dim();
        auto ft = n == 0 ? tri.from_target : seqmor_shift(tri.from_target, n);
        auto ts = n == 0 ? tri.to_shift : seqmor_shift(tri.to_shift, n);
        Mat m1 = colim_induced(Cp, ft);
        Mat m2 = colim_induced(Cp, ts);
        exact = exact && (m2 * m1).is_zero() &&
                rank_of(m1) + rank_of(m2) == m2.cols();
      }
      rep.add(dims, "pair 1: termwise cone matches the cone of the realized map");
      rep.add(exact, "pair 1: colimit homs are exact at the cone");
    } catch (const std::exception& e) {
      rep.add(false, std::string("pair 1, cone compatibility: ") + e.what());
    }
  }
  return rep;
}

}  // namespace pcc
