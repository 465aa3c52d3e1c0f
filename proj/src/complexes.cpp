#include "pcc/complexes.hpp"

namespace pcc {

namespace {

Mat zero_mat_between(const Module& src, const Module& tgt) {
  return Mat(src.A->p, tgt.dim, src.dim);
}

// block diagonal [a 0; 0 b] with explicit shapes
Mat block_diag(const Mat& a, const Mat& b) {
  Mat r(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return r;
}

}  // namespace

ComplexPtr make_complex(AlgebraPtr A, int lo, std::vector<ModulePtr> comp,
                        std::vector<Mat> diff, std::string name) {
  if (diff.size() + 1 != comp.size() && !(comp.empty() && diff.empty()))
    throw std::invalid_argument("complex: need one differential less than components");
  // trim zero components at the edges
  size_t start = 0, end = comp.size();
  while (start < end && comp[start]->dim == 0) ++start;
  while (end > start && comp[end - 1]->dim == 0) --end;
  auto X = std::make_shared<Complex>();
  X->A = A;
  X->name = std::move(name);
  X->lo = lo + (int)start;
  X->hi = lo + (int)end - 1;
  for (size_t t = start; t < end; ++t) {
    if (!same_algebra(comp[t]->A, A)) throw std::invalid_argument("complex: algebra mismatch");
    X->comp.push_back(comp[t]);
    if (t + 1 < end) X->diff.push_back(diff[t]);
  }
  for (size_t t = 0; t + 1 < X->comp.size(); ++t) {
    make_module_map(X->comp[t], X->comp[t + 1], X->diff[t]);  // validates equivariance
    if (t + 2 < X->comp.size() || t + 1 < X->diff.size()) {
      if (t + 1 < X->diff.size() && !(X->diff[t + 1] * X->diff[t]).is_zero())
        throw std::invalid_argument("complex: d*d != 0 at degree " + std::to_string(X->lo + (int)t));
    }
  }
  return X;
}

ComplexPtr zero_complex(AlgebraPtr A) { return make_complex(A, 0, {}, {}, "0"); }

ComplexPtr stalk_complex(ModulePtr M, int degree, std::string name) {
  if (name.empty()) name = M->name + "[" + std::to_string(-degree) + "]";
  return make_complex(M->A, degree, {M}, {}, name);
}

ModulePtr comp_at(const Complex& X, int n) {
  if (n < X.lo || n > X.hi) return zero_module(X.A);
  return X.comp[n - X.lo];
}

Mat diff_at(const Complex& X, int n) {
  if (n >= X.lo && n < X.hi) return X.diff[n - X.lo];
  return zero_mat_between(*comp_at(X, n), *comp_at(X, n + 1));
}

size_t total_dim(const Complex& X) {
  size_t t = 0;
  for (auto& m : X.comp) t += m->dim;
  return t;
}

ChainMap make_chain_map(ComplexPtr src, ComplexPtr tgt, int lo, std::vector<Mat> comps,
                        bool check) {
  ChainMap f;
  f.src = src;
  f.tgt = tgt;
  f.lo = lo;
  f.comps = std::move(comps);
  if (check) {
    int a = std::min(src->lo, tgt->lo) - 1, b = std::max(src->hi, tgt->hi) + 1;
    for (int n = a; n <= b; ++n) {
      Mat fn = cm_at(f, n);
      make_module_map(comp_at(*src, n), comp_at(*tgt, n), fn);
      Mat lhs = diff_at(*tgt, n) * fn;
      Mat rhs = cm_at(f, n + 1) * diff_at(*src, n);
      if (!(lhs == rhs))
        throw std::invalid_argument("chain map does not commute with d at degree " + std::to_string(n));
    }
  }
  return f;
}

Mat cm_at(const ChainMap& f, int n) {
  int idx = n - f.lo;
  if (idx >= 0 && idx < (int)f.comps.size()) {
    const Mat& m = f.comps[idx];
    // guard against stored placeholder of wrong shape
    if (m.rows() == comp_at(*f.tgt, n)->dim && m.cols() == comp_at(*f.src, n)->dim) return m;
  }
  return zero_mat_between(*comp_at(*f.src, n), *comp_at(*f.tgt, n));
}

ChainMap identity_chain(const ComplexPtr& X) {
  std::vector<Mat> comps;
  for (int n = X->lo; n <= X->hi; ++n) comps.push_back(Mat::identity(X->A->p, comp_at(*X, n)->dim));
  return make_chain_map(X, X, X->lo, comps, false);
}

ChainMap zero_chain(const ComplexPtr& X, const ComplexPtr& Y) {
  return make_chain_map(X, Y, 0, {}, false);
}

ChainMap compose_chain(const ChainMap& g, const ChainMap& f) {
  std::vector<Mat> comps;
  int lo = f.src->lo, hi = f.src->hi;
  if (lo > hi) return make_chain_map(f.src, g.tgt, 0, {}, false);
  for (int n = lo; n <= hi; ++n) comps.push_back(cm_at(g, n) * cm_at(f, n));
  return make_chain_map(f.src, g.tgt, lo, comps, false);
}

ChainMap add_chain(const ChainMap& f, const ChainMap& g) {
  int lo = std::min(f.src->lo, f.tgt->lo), hi = std::max(f.src->hi, f.tgt->hi);
  std::vector<Mat> comps;
  if (lo > hi) return make_chain_map(f.src, f.tgt, 0, {}, false);
  for (int n = lo; n <= hi; ++n) comps.push_back(cm_at(f, n) + cm_at(g, n));
  return make_chain_map(f.src, f.tgt, lo, comps, false);
}

ChainMap sub_chain(const ChainMap& f, const ChainMap& g) {
  return add_chain(f, scale_chain(g, f.src->A->p - 1));
}

ChainMap scale_chain(const ChainMap& f, u32 c) {
  std::vector<Mat> comps;
  for (auto& m : f.comps) comps.push_back(m.scaled(c));
  return make_chain_map(f.src, f.tgt, f.lo, comps, false);
}

bool chain_map_zero(const ChainMap& f) {
  for (int n = f.src->lo; n <= f.src->hi; ++n)
    if (!cm_at(f, n).is_zero()) return false;
  return true;
}

bool chain_map_equal_strict(const ChainMap& f, const ChainMap& g) {
  int lo = std::min(f.src->lo, g.src->lo), hi = std::max(f.src->hi, g.src->hi);
  for (int n = lo; n <= hi; ++n)
    if (!(cm_at(f, n) == cm_at(g, n))) return false;
  return true;
}

ComplexPtr shift_complex(const ComplexPtr& X, int m) {
  if (X->empty()) return X;
  std::vector<ModulePtr> comp = X->comp;
  std::vector<Mat> diff = X->diff;
  if (m % 2 != 0)
    for (auto& d : diff) d = d.negated();
  return make_complex(X->A, X->lo - m, comp, diff,
                      m == 0 ? X->name : "S^" + std::to_string(m) + "(" + X->name + ")");
}

ChainMap shift_chain(const ChainMap& f, int m) {
  return make_chain_map(shift_complex(f.src, m), shift_complex(f.tgt, m), f.lo - m, f.comps, false);
}

ComplexPtr direct_sum_complex(const ComplexPtr& X, const ComplexPtr& Y) {
  if (X->empty()) return Y;
  if (Y->empty()) return X;
  int lo = std::min(X->lo, Y->lo), hi = std::max(X->hi, Y->hi);
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  for (int n = lo; n <= hi; ++n) {
    comp.push_back(direct_sum_module({comp_at(*X, n), comp_at(*Y, n)}));
    if (n < hi) diff.push_back(block_diag(diff_at(*X, n), diff_at(*Y, n)));
  }
  return make_complex(X->A, lo, comp, diff, X->name + "+" + Y->name);
}

ChainMap sum_inj(const ComplexPtr& X, const ComplexPtr& Y, const ComplexPtr& S, int which) {
  int lo = std::min(X->lo, Y->lo);
  std::vector<Mat> comps;
  const ComplexPtr& part = which == 0 ? X : Y;
  for (int n = lo; n <= std::max(X->hi, Y->hi); ++n) {
    size_t dx = comp_at(*X, n)->dim, dy = comp_at(*Y, n)->dim, dp = comp_at(*part, n)->dim;
    Mat m(X->A->p, dx + dy, dp);
    size_t off = which == 0 ? 0 : dx;
    for (size_t i = 0; i < dp; ++i) m.at(off + i, i) = 1;
    comps.push_back(m);
  }
  return make_chain_map(part, S, lo, comps, false);
}

ChainMap sum_proj(const ComplexPtr& X, const ComplexPtr& Y, const ComplexPtr& S, int which) {
  int lo = std::min(X->lo, Y->lo);
  std::vector<Mat> comps;
  const ComplexPtr& part = which == 0 ? X : Y;
  for (int n = lo; n <= std::max(X->hi, Y->hi); ++n) {
    size_t dx = comp_at(*X, n)->dim, dy = comp_at(*Y, n)->dim, dp = comp_at(*part, n)->dim;
    Mat m(X->A->p, dp, dx + dy);
    size_t off = which == 0 ? 0 : dx;
    for (size_t i = 0; i < dp; ++i) m.at(i, off + i) = 1;
    comps.push_back(m);
  }
  return make_chain_map(S, part, lo, comps, false);
}

ConeData cone(const ChainMap& f) {
  const ComplexPtr& X = f.src;
  const ComplexPtr& Y = f.tgt;
  int lo = std::min(X->lo - 1, Y->lo), hi = std::max(X->hi - 1, Y->hi);
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  for (int n = lo; n <= hi; ++n) {
    comp.push_back(direct_sum_module({comp_at(*X, n + 1), comp_at(*Y, n)}));
    if (n < hi) {
      // [[-d_X, 0], [f, d_Y]]
      Mat dX = diff_at(*X, n + 1).negated();
      Mat dY = diff_at(*Y, n);
      Mat fn = cm_at(f, n + 1);
      size_t rx = dX.rows(), ry = dY.rows(), cx = dX.cols(), cy = dY.cols();
      Mat d(X->A->p, rx + ry, cx + cy);
      for (size_t i = 0; i < rx; ++i)
        for (size_t j = 0; j < cx; ++j) d.at(i, j) = dX.at(i, j);
      for (size_t i = 0; i < ry; ++i)
        for (size_t j = 0; j < cx; ++j) d.at(rx + i, j) = fn.at(i, j);
      for (size_t i = 0; i < ry; ++i)
        for (size_t j = 0; j < cy; ++j) d.at(rx + i, cx + j) = dY.at(i, j);
      diff.push_back(d);
    }
  }
  auto C = make_complex(X->A, lo, comp, diff, "cone(" + X->name + "->" + Y->name + ")");
  // Y -> cone: [0; id], cone -> Sigma X: [id, 0]
  std::vector<Mat> inj, prj;
  for (int n = lo; n <= hi; ++n) {
    size_t dx = comp_at(*X, n + 1)->dim, dy = comp_at(*Y, n)->dim;
    size_t dc = comp_at(*C, n)->dim;  // may be trimmed to zero
    Mat in(X->A->p, dc, dy);
    Mat pr(X->A->p, dx, dc);
    if (dc == dx + dy) {
      for (size_t i = 0; i < dy; ++i) in.at(dx + i, i) = 1;
      for (size_t i = 0; i < dx; ++i) pr.at(i, i) = 1;
    }
    inj.push_back(in);
    prj.push_back(pr);
  }
  ConeData out;
  out.cone = C;
  out.from_target = make_chain_map(Y, C, lo, inj);
  out.to_shift = make_chain_map(C, shift_complex(X, 1), lo, prj);
  return out;
}

ChainMap cone_functor_map(const ChainMap& f, const ChainMap& g, const ChainMap& a,
                          const ChainMap& b, const ChainMap* homotopy_h) {
  auto cf = cone(f), cg = cone(g);
  int lo = std::min(cf.cone->lo, cg.cone->lo), hi = std::max(cf.cone->hi, cg.cone->hi);
  std::vector<Mat> comps;
  for (int n = lo; n <= hi; ++n) {
    size_t sx = comp_at(*f.src, n + 1)->dim, sy = comp_at(*f.tgt, n)->dim;
    size_t tx = comp_at(*g.src, n + 1)->dim, ty = comp_at(*g.tgt, n)->dim;
    Mat m(f.src->A->p, tx + ty, sx + sy);
    Mat an = cm_at(a, n + 1), bn = cm_at(b, n);
    for (size_t i = 0; i < tx; ++i)
      for (size_t j = 0; j < sx; ++j) m.at(i, j) = an.at(i, j);
    for (size_t i = 0; i < ty; ++i)
      for (size_t j = 0; j < sy; ++j) m.at(tx + i, sx + j) = bn.at(i, j);
    if (homotopy_h) {
      // h^{n+1}: X^{n+1} -> Y'^n corrects a square commuting only up to homotopy
      Mat hn = cm_at(*homotopy_h, n + 1);
      for (size_t i = 0; i < ty; ++i)
        for (size_t j = 0; j < sx; ++j) m.at(tx + i, j) = hn.at(i, j);
    }
    comps.push_back(m);
  }
  return make_chain_map(cf.cone, cg.cone, lo, comps);
}

TruncData brutal_truncate_geq(const ComplexPtr& X, int n) {
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  int lo = std::max(n, X->lo);
  for (int m = lo; m <= X->hi; ++m) {
    comp.push_back(comp_at(*X, m));
    if (m < X->hi) diff.push_back(diff_at(*X, m));
  }
  auto T = make_complex(X->A, lo, comp, diff, "sg" + std::to_string(n) + "(" + X->name + ")");
  std::vector<Mat> id;
  for (int m = T->lo; m <= T->hi; ++m) id.push_back(Mat::identity(X->A->p, comp_at(*T, m)->dim));
  return {T, make_chain_map(T, X, T->lo, id, false)};
}

ChainMap brutal_truncate_geq_map(const ChainMap& f, int n, const ComplexPtr& sx,
                                 const ComplexPtr& sy) {
  std::vector<Mat> comps;
  int lo = std::min(sx->lo, sy->lo), hi = std::max(sx->hi, sy->hi);
  (void)n;
  if (lo > hi) return make_chain_map(sx, sy, 0, {}, false);
  for (int m = lo; m <= hi; ++m) {
    Mat fm = cm_at(f, m);
    Mat out(f.src->A->p, comp_at(*sy, m)->dim, comp_at(*sx, m)->dim);
    if (out.rows() == fm.rows() && out.cols() == fm.cols()) out = fm;
    comps.push_back(out);
  }
  return make_chain_map(sx, sy, lo, comps);
}

TruncData tau_leq(const ComplexPtr& X, int n) {
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  std::vector<Mat> incl;
  int lo = X->lo;
  for (int m = lo; m <= std::min(n, X->hi); ++m) {
    if (m < n) {
      comp.push_back(comp_at(*X, m));
      incl.push_back(Mat::identity(X->A->p, comp_at(*X, m)->dim));
    } else {  // m == n: kernel of d^n
      Mat K = kernel_basis(diff_at(*X, n));
      auto sub = submodule_from_basis(comp_at(*X, n), K);
      comp.push_back(sub.sub);
      incl.push_back(K);
    }
  }
  for (size_t t = 0; t + 1 < comp.size(); ++t) {
    int m = lo + (int)t;
    if (m + 1 < n)
      diff.push_back(diff_at(*X, m));
    else  // d^{n-1} factors through ker d^n
      diff.push_back(coords_in_basis(incl.back(), diff_at(*X, m)));
  }
  auto T = make_complex(X->A, lo, comp, diff, "tau<=" + std::to_string(n) + "(" + X->name + ")");
  std::vector<Mat> inc2;
  for (int m = T->lo; m <= T->hi; ++m) inc2.push_back(incl[m - lo]);
  return {T, make_chain_map(T, X, T->lo, inc2)};
}

TruncData tau_gt(const ComplexPtr& X, int n) {
  // degree n component X^n / ker d^n with the induced (injective) d
  std::vector<ModulePtr> comp;
  std::vector<Mat> diff;
  std::vector<Mat> proj;
  int start = std::max(n, X->lo);
  if (n < X->lo) return {X, identity_chain(X)};
  if (n > X->hi) {
    auto Z = zero_complex(X->A);
    return {Z, zero_chain(X, Z)};
  }
  Mat K = kernel_basis(diff_at(*X, n));
  auto q = quotient_by_submodule(comp_at(*X, n), K);
  for (int m = start; m <= X->hi; ++m) {
    if (m == n) {
      comp.push_back(q.quot);
      proj.push_back(q.proj.mat);
      if (m < X->hi) diff.push_back(diff_at(*X, n) * q.lift);
    } else {
      comp.push_back(comp_at(*X, m));
      proj.push_back(Mat::identity(X->A->p, comp_at(*X, m)->dim));
      if (m < X->hi) diff.push_back(diff_at(*X, m));
    }
  }
  auto T = make_complex(X->A, start, comp, diff, "tau>" + std::to_string(n) + "(" + X->name + ")");
  std::vector<Mat> pr2;
  for (int m = std::min(X->lo, T->lo); m <= std::max(X->hi, T->hi); ++m) {
    if (m >= start && m <= X->hi && m - start < (int)proj.size() && m >= T->lo && m <= T->hi)
      pr2.push_back(proj[m - start]);
    else
      pr2.push_back(zero_mat_between(*comp_at(*X, m), *comp_at(*T, m)));
  }
  return {T, make_chain_map(X, T, std::min(X->lo, T->lo), pr2)};
}

ChainMap tau_gt_map(const ChainMap& f, int n, const TruncData& tx, const TruncData& ty) {
  // induced map on quotient truncations: proj_Y . f . (section of proj_X)
  const ComplexPtr& TX = tx.cx;
  const ComplexPtr& TY = ty.cx;
  std::vector<Mat> comps;
  int lo = std::min(TX->lo, TY->lo), hi = std::max(TX->hi, TY->hi);
  if (lo > hi) return make_chain_map(TX, TY, 0, {}, false);
  for (int m = lo; m <= hi; ++m) {
    Mat px = cm_at(tx.map, m);  // X^m -> TX^m, surjective
    Mat py = cm_at(ty.map, m);
    Mat fm = cm_at(f, m);
    // choose a section of px columnwise
    Mat out(f.src->A->p, comp_at(*TY, m)->dim, comp_at(*TX, m)->dim);
    if (comp_at(*TX, m)->dim > 0) {
      auto sec = solve(px, Mat::identity(f.src->A->p, comp_at(*TX, m)->dim));
      if (!sec) throw std::logic_error("tau_gt_map: projection not surjective");
      out = py * (fm * *sec);
    }
    comps.push_back(out);
  }
  return make_chain_map(TX, TY, lo, comps);
}

Mat CohomData::project_ambient(const Mat& cols) const {
  size_t hdim = lift.cols();
  if (hdim == 0) return Mat(cols.p(), 0, cols.cols());
  if (cols.cols() == 0) return Mat(cols.p(), hdim, 0);
  return ker_proj * coords_in_basis(ker, cols);
}

CohomData cohomology(const ComplexPtr& X, int n) {
  u32 p = X->A->p;
  Mat dn = diff_at(*X, n);
  Mat dprev = diff_at(*X, n - 1);
  Mat ker = kernel_basis(dn);
  Mat im = column_space_basis(dprev);
  auto qb = quotient_basis(ker, im);
  CohomData c;
  c.ker = ker;
  c.im = im;
  c.lift = qb.lift_basis;
  c.ker_proj = qb.project;
  // module structure on the subquotient
  auto amb = comp_at(*X, n);
  std::vector<Mat> action(X->A->dim);
  for (size_t i = 0; i < X->A->dim; ++i) {
    if (c.lift.cols() == 0) {
      action[i] = Mat(p, 0, 0);
    } else {
      action[i] = c.project_ambient(amb->action[i] * c.lift);
    }
  }
  c.H = make_module(X->A, action, "H^" + std::to_string(n) + "(" + X->name + ")");
  return c;
}

ModuleMap cohomology_map(const ChainMap& f, int n, const CohomData& hx, const CohomData& hy) {
  Mat m(f.src->A->p, hy.H->dim, hx.H->dim);
  if (hx.H->dim > 0 && hy.H->dim > 0) m = hy.project_ambient(cm_at(f, n) * hx.lift);
  if (hx.H->dim > 0 && hy.H->dim == 0) m = Mat(f.src->A->p, 0, hx.H->dim);
  return make_module_map(hx.H, hy.H, m);
}

bool is_acyclic(const ComplexPtr& X) {
  for (int n = X->lo; n <= X->hi; ++n) {
    size_t kerdim = comp_at(*X, n)->dim - rank_of(diff_at(*X, n));
    if (kerdim != rank_of(diff_at(*X, n - 1))) return false;
  }
  return true;
}

std::pair<int, int> cohom_window(const ComplexPtr& X) {
  int a = 1, b = 0;
  for (int n = X->lo; n <= X->hi; ++n) {
    size_t kerdim = comp_at(*X, n)->dim - rank_of(diff_at(*X, n));
    if (kerdim != rank_of(diff_at(*X, n - 1))) {
      if (a > b) a = n;
      b = n;
    }
  }
  return {a, b};
}

}  // namespace pcc
