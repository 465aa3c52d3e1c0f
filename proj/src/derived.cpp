#include "pcc/derived.hpp"

namespace pcc {

namespace {

// column vector obtained by stacking the columns of m
Mat flat(const Mat& m) {
  Mat v(m.p(), m.rows() * m.cols(), 1);
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i) v.at(j * m.rows() + i, 0) = m.at(i, j);
  return v;
}

}  // namespace

Mat KHomSpace::pack(const ChainMap& f) const {
  Mat v(src->A->p, amb, 1);
  for (int n = lo; n <= hi; ++n) {
    const ModHomSpace& H = degs[n - lo];
    Mat c = H.coords_of(cm_at(f, n));
    for (size_t i = 0; i < H.dim(); ++i) v.at(offsets[n - lo] + i, 0) = c.at(i, 0);
  }
  return v;
}

ChainMap KHomSpace::unpack(const Mat& v) const {
  std::vector<Mat> comps;
  for (int n = lo; n <= hi; ++n) {
    const ModHomSpace& H = degs[n - lo];
    Mat m(src->A->p, comp_at(*tgt, n)->dim, comp_at(*src, n)->dim);
    for (size_t i = 0; i < H.dim(); ++i)
      m = m + H.basis[i].scaled(v.at(offsets[n - lo] + i, 0));
    comps.push_back(m);
  }
  return make_chain_map(src, tgt, lo, comps);
}

Mat KHomSpace::coords_of(const ChainMap& f) const {
  if (dim() == 0) return Mat(src->A->p, 0, 1);
  Mat v = pack(f);
  return qb.project * coords_in_basis(cycles, v);
}

ChainMap KHomSpace::rep(size_t i) const { return unpack(qb.lift_basis.col(i)); }

ChainMap KHomSpace::from_coords(const Mat& c) const {
  if (dim() == 0) return zero_chain(src, tgt);
  return unpack(qb.lift_basis * c);
}

KHomSpace khom(const ComplexPtr& X, const ComplexPtr& Y) {
  KHomSpace K;
  K.src = X;
  K.tgt = Y;
  u32 p = X->A->p;
  K.lo = std::max(X->lo, Y->lo);
  K.hi = std::min(X->hi, Y->hi);
  if (K.lo > K.hi) {  // disjoint windows: only the zero map
    K.lo = 0;
    K.hi = -1;
    return K;
  }
  size_t off = 0;
  for (int n = K.lo; n <= K.hi; ++n) {
    K.degs.push_back(module_hom(comp_at(*X, n), comp_at(*Y, n)));
    K.offsets.push_back(off);
    off += K.degs.back().dim();
  }
  K.amb = off;
  if (K.amb == 0) {
    K.lo = 0;
    K.hi = -1;
    K.degs.clear();
    K.offsets.clear();
    return K;
  }

  // chain-map condition: for each degree m, d_Y f^m - f^{m+1} d_X = 0
  std::vector<int> blocks;
  std::vector<size_t> block_off;
  size_t crows = 0;
  for (int m = K.lo - 1; m <= K.hi; ++m) {
    size_t sz = comp_at(*Y, m + 1)->dim * comp_at(*X, m)->dim;
    if (sz == 0) continue;
    blocks.push_back(m);
    block_off.push_back(crows);
    crows += sz;
  }
  auto block_index = [&](int m) -> int {
    for (size_t t = 0; t < blocks.size(); ++t)
      if (blocks[t] == m) return (int)t;
    return -1;
  };
  Mat C(p, crows, K.amb);
  Fp F(p);
  for (int n = K.lo; n <= K.hi; ++n) {
    for (size_t i = 0; i < K.degs[n - K.lo].dim(); ++i) {
      size_t col = K.offsets[n - K.lo] + i;
      const Mat& b = K.degs[n - K.lo].basis[i];
      int t = block_index(n);
      if (t >= 0) {
        Mat v = flat(diff_at(*Y, n) * b);
        for (size_t r = 0; r < v.rows(); ++r) C.at(block_off[t] + r, col) = v.at(r, 0);
      }
      t = block_index(n - 1);
      if (t >= 0) {
        Mat v = flat(b * diff_at(*X, n - 1));
        for (size_t r = 0; r < v.rows(); ++r)
          C.at(block_off[t] + r, col) = F.sub(C.at(block_off[t] + r, col), v.at(r, 0));
      }
    }
  }
  K.cycles = crows == 0 ? Mat::identity(p, K.amb) : kernel_basis(C);

  // null-homotopic subspace: images of dh + hd over degreewise h^m: X^m -> Y^{m-1}
  std::vector<Mat> bcols;
  for (int m = std::max(X->lo, Y->lo + 1); m <= std::min(X->hi, Y->hi + 1); ++m) {
    auto H = module_hom(comp_at(*X, m), comp_at(*Y, m - 1));
    for (size_t i = 0; i < H.dim(); ++i) {
      const Mat& h = H.basis[i];
      Mat v(p, K.amb, 1);
      auto add_block = [&](int n, const Mat& part) {
        if (n < K.lo || n > K.hi) return;
        Mat c = K.degs[n - K.lo].coords_of(part);
        for (size_t r = 0; r < c.rows(); ++r)
          v.at(K.offsets[n - K.lo] + r, 0) = F.add(v.at(K.offsets[n - K.lo] + r, 0), c.at(r, 0));
      };
      add_block(m, diff_at(*Y, m - 1) * h);
      add_block(m - 1, h * diff_at(*X, m - 1));
      bcols.push_back(v);
    }
  }
  Mat B(p, K.amb, 0);
  for (auto& v : bcols) B = B.hstack(v);
  K.boundaries = column_space_basis(B);
  if (!spans_contain(K.cycles, K.boundaries))
    throw std::logic_error("khom: null-homotopic maps escaped the chain-map space");
  K.qb = quotient_basis(K.cycles, K.boundaries);
  return K;
}

bool is_null_homotopic(const ChainMap& f) {
  auto K = khom(f.src, f.tgt);
  if (K.dim() == 0) {
    // only the zero class exists; still confirm f lies in it
    return K.amb == 0 || spans_contain(K.boundaries, K.pack(f));
  }
  return K.coords_of(f).is_zero();
}

bool chain_maps_homotopic(const ChainMap& f, const ChainMap& g) {
  return is_null_homotopic(sub_chain(f, g));
}

// ---------------------------------------------------------------------------

void ResolutionGen::ensure(int lo) {
  if (!target || target->empty()) {
    done = true;
    return;
  }
  while (!done) {
    int n = top - (int)mods.size();  // degree to construct
    if (n < lo) break;
    const AlgebraPtr& A = target->A;
    ModulePtr Pnext = mods.empty() ? zero_module(A) : mods.back();
    // cone^n = P^{n+1} (+) X^n, differential [[-d_P, 0],[eps, d_X]]
    ModulePtr Xn = comp_at(*target, n);
    ModulePtr Cn = direct_sum_module({Pnext, Xn});
    ModulePtr Pnext2 =
        mods.size() >= 2 ? mods[mods.size() - 2] : zero_module(A);
    Mat dP = mods.size() >= 2 ? diffs[mods.size() - 2]
                              : Mat(A->p, Pnext2->dim, Pnext->dim);
    Mat epsn1 = mods.empty() ? Mat(A->p, comp_at(*target, n + 1)->dim, 0) : eps.back();
    Mat dX = diff_at(*target, n);
    // assemble the cone differential
    size_t r1 = Pnext2->dim, r2 = comp_at(*target, n + 1)->dim;
    Mat dc(A->p, r1 + r2, Cn->dim);
    for (size_t i = 0; i < r1; ++i)
      for (size_t j = 0; j < Pnext->dim; ++j) dc.at(i, j) = Fp(A->p).neg(dP.at(i, j));
    for (size_t i = 0; i < r2; ++i) {
      for (size_t j = 0; j < Pnext->dim; ++j) dc.at(r1 + i, j) = epsn1.at(i, j);
      for (size_t j = 0; j < Xn->dim; ++j) dc.at(r1 + i, Pnext->dim + j) = dX.at(i, j);
    }
    auto Ksub = submodule_from_basis(Cn, kernel_basis(dc));
    // D = (0, d_X X^{n-1}) inside K
    Mat dprev = diff_at(*target, n - 1);
    Mat Dcols(A->p, Cn->dim, dprev.cols());
    for (size_t i = 0; i < dprev.rows(); ++i)
      for (size_t j = 0; j < dprev.cols(); ++j) Dcols.at(Pnext->dim + i, j) = dprev.at(i, j);
    Mat Dk = coords_in_basis(Ksub.basis, column_space_basis(Dcols));
    auto Q = quotient_by_submodule(Ksub.sub, Dk);

    ModulePtr Pn;
    Mat dn(A->p, Pnext->dim, 0), en(A->p, Xn->dim, 0);
    if (Q.quot->dim > 0) {
      auto cov = projective_cover(Q.quot);
      Pn = cov.cover.src;
      // equivariant lift of the cover through K ->> K/D
      auto H = module_hom(Pn, Ksub.sub);
      Mat sys(A->p, Q.quot->dim * Pn->dim, H.dim());
      for (size_t i = 0; i < H.dim(); ++i) {
        Mat v = flat(Q.proj.mat * H.basis[i]);
        for (size_t r = 0; r < v.rows(); ++r) sys.at(r, i) = v.at(r, 0);
      }
      auto sol = solve(sys, flat(cov.cover.mat));
      if (!sol) throw std::logic_error("resolution: projective lift does not exist");
      Mat phi(A->p, Ksub.sub->dim, Pn->dim);
      for (size_t i = 0; i < H.dim(); ++i) phi = phi + H.basis[i].scaled(sol->at(i, 0));
      Mat ambm = Ksub.basis * phi;  // columns in cone coordinates
      dn = ambm.submatrix(0, 0, Pnext->dim, Pn->dim).negated();
      en = ambm.submatrix(Pnext->dim, 0, Xn->dim, Pn->dim);
    } else {
      Pn = zero_module(A);
    }
    mods.push_back(Pn);
    if (mods.size() >= 2) diffs.push_back(dn);
    eps.push_back(en);
    if (Pn->dim == 0 && n <= target->lo) done = true;
  }
}

int ResolutionGen::built_lo() const { return top - (int)mods.size() + 1; }

ComplexPtr ResolutionGen::truncated_geq(int lo) {
  ensure(lo);
  if (!target || target->empty()) return zero_complex(target ? target->A : nullptr);
  int lo_eff = done ? std::max(lo, built_lo()) : lo;
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  for (int m = lo_eff; m <= top; ++m) {
    int k = top - m;
    if (k >= (int)mods.size()) {
      // below anything built: resolution terminated, term is zero
      comp.push_back(zero_module(target->A));
    } else {
      comp.push_back(mods[k]);
    }
  }
  for (int m = lo_eff; m < top; ++m) {
    int k = top - m;  // diff d^m: P^m -> P^{m+1} is diffs[k-1]
    if (k >= 1 && k - 1 < (int)diffs.size() && (int)mods.size() > k)
      diff.push_back(diffs[k - 1]);
    else
      diff.push_back(Mat(target->A->p, comp[m - lo_eff + 1]->dim, comp[m - lo_eff]->dim));
  }
  return make_complex(target->A, lo_eff, comp, diff,
                      "P(" + target->name + ")|>=" + std::to_string(lo));
}

ChainMap ResolutionGen::augmentation_geq(int lo) {
  auto T = truncated_geq(lo);
  if (T->empty()) return zero_chain(T, target ? target : T);
  std::vector<Mat> comps;
  for (int m = T->lo; m <= T->hi; ++m) {
    int k = top - m;
    if (k >= 0 && k < (int)eps.size() &&
        eps[k].rows() == comp_at(*target, m)->dim && eps[k].cols() == comp_at(*T, m)->dim)
      comps.push_back(eps[k]);
    else
      comps.push_back(Mat(target->A->p, comp_at(*target, m)->dim, comp_at(*T, m)->dim));
  }
  return make_chain_map(T, target, T->lo, comps);
}

ResolutionPtr resolve(const ModulePtr& M) {
  return resolve_complex(M->dim == 0 ? zero_complex(M->A) : stalk_complex(M, 0));
}

ResolutionPtr resolve_complex(const ComplexPtr& X) {
  auto R = std::make_shared<ResolutionGen>();
  R->target = X;
  R->top = X->hi;
  if (X->empty()) R->done = true;
  return R;
}

// ---------------------------------------------------------------------------

DbHomSpace dbhom(const ResolutionPtr& res, const ComplexPtr& Y, int n, int min_trunc_lo) {
  const ComplexPtr& X = res->target;
  DbHomSpace D;
  D.X = X;
  D.Y = Y;
  D.n = n;
  D.res = res;
  auto Ys = shift_complex(Y, n);
  // truncation depth from the cohomology window of the shifted target
  auto w = cohom_window(Ys);
  int i_star;
  if (w.first > w.second) {
    i_star = 1;  // acyclic target: everything vanishes at any depth
  } else {
    i_star = std::max(0, 1 - w.first) + 1;
  }
  int lo1 = std::min(std::min(X->lo, 0) - i_star, min_trunc_lo);
  D.trunc_lo = lo1;
  D.trunc = res->truncated_geq(lo1);
  D.aug = res->augmentation_geq(lo1);
  D.kh = khom(D.trunc, Ys);
  // verify one step deeper: the hom space must not change
  auto deeper = khom(res->truncated_geq(lo1 - 1), Ys);
  if (deeper.dim() != D.kh.dim()) throw std::runtime_error("window unverified");
  return D;
}

DbHomSpace dbhom(const ComplexPtr& X, const ComplexPtr& Y, int n, int min_trunc_lo) {
  return dbhom(resolve_complex(X), Y, n, min_trunc_lo);
}

DbHomSpace dbhom_mod(const ModulePtr& M, const ModulePtr& N, int n) {
  return dbhom(stalk_complex(M, 0), stalk_complex(N, 0), n);
}

bool is_quasi_iso(const ChainMap& f) {
  return is_acyclic(cone(f).cone);
}

bool pc_certificate(ResolutionGen& R, int i) {
  if (!R.target || R.target->empty()) return true;
  auto aug = R.augmentation_geq(-i);
  int lo = std::min(aug.src->lo, R.target->lo) - 1;
  int hi = std::max(aug.src->hi, R.target->hi) + 1;
  for (int m = lo; m <= hi; ++m) {
    if (m <= -i) continue;
    auto hx = cohomology(aug.src, m);
    auto hy = cohomology(R.target, m);
    auto hm = cohomology_map(aug, m, hx, hy);
    if (hx.H->dim != hy.H->dim || rank_of(hm.mat) != hx.H->dim) return false;
  }
  return true;
}

Mat db_compose(const DbHomSpace& G, const Mat& gc, const DbHomSpace& F, const Mat& fc,
               const DbHomSpace& GF) {
  if (F.trunc_lo != GF.trunc_lo || F.res != GF.res)
    throw std::invalid_argument("db_compose: F and GF must share the domain truncation");
  if (GF.dim() == 0) return Mat(F.X->A->p, 0, 1);
  // lift F's representative through the (shifted) augmentation of Y's resolution
  auto Gs = shift_complex(G.trunc, F.n);          // Sigma^n (trunc P_Y)
  auto lift_space = khom(F.trunc, Gs);
  auto aug_s = shift_chain(G.aug, F.n);           // Sigma^n trunc P_Y -> Sigma^n Y
  Mat A(F.X->A->p, F.kh.dim(), lift_space.dim());
  for (size_t i = 0; i < lift_space.dim(); ++i) {
    auto comp = compose_chain(aug_s, lift_space.rep(i));
    Mat c = F.kh.coords_of(comp);
    for (size_t r = 0; r < c.rows(); ++r) A.at(r, i) = c.at(r, 0);
  }
  if (rank_of(A) != A.rows() || A.rows() != A.cols())
    throw std::logic_error("db_compose: augmentation is not bijective on homs at this depth");
  auto sol = solve(A, fc);
  if (!sol) throw std::logic_error("db_compose: lift solve failed");
  auto fhat = lift_space.from_coords(*sol);       // F.trunc -> Sigma^n trunc P_Y
  auto g = G.kh.from_coords(gc);                  // trunc P_Y -> Sigma^m Z
  auto gs = shift_chain(g, F.n);                  // Sigma^n trunc P_Y -> Sigma^{n+m} Z
  auto composite = compose_chain(gs, fhat);
  // re-target the composite at GF's hom space (same matrices, same windows)
  auto as_gf = make_chain_map(GF.kh.src, GF.kh.tgt, composite.lo, composite.comps);
  return GF.kh.coords_of(as_gf);
}

}  // namespace pcc
