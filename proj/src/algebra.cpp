#include "pcc/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace pcc {

namespace {

Mat kron(const Mat& A, const Mat& B) {
  Mat r(A.p(), A.rows() * B.rows(), A.cols() * B.cols());
  Fp f(A.p());
  for (size_t i1 = 0; i1 < A.rows(); ++i1)
    for (size_t j1 = 0; j1 < A.cols(); ++j1) {
      u32 a = A.at(i1, j1);
      if (!a) continue;
      for (size_t i2 = 0; i2 < B.rows(); ++i2)
        for (size_t j2 = 0; j2 < B.cols(); ++j2)
          r.at(i1 * B.rows() + i2, j1 * B.cols() + j2) = f.mul(a, B.at(i2, j2));
    }
  return r;
}

Mat vec_cm(const Mat& F) {  // column-major flattening
  Mat v(F.p(), F.rows() * F.cols(), 1);
  for (size_t c = 0; c < F.cols(); ++c)
    for (size_t r = 0; r < F.rows(); ++r) v.at(c * F.rows() + r, 0) = F.at(r, c);
  return v;
}

Mat unvec_cm(const Mat& v, size_t rows, size_t cols) {
  Mat F(v.p(), rows, cols);
  for (size_t c = 0; c < cols; ++c)
    for (size_t r = 0; r < rows; ++r) F.at(r, c) = v.at(c * rows + r, 0);
  return F;
}

std::vector<u32> col_to_vec(const Mat& m, size_t j) { return m.col_data(j); }

}  // namespace

AlgebraPtr make_algebra(u32 p, std::vector<std::string> labels,
                        std::vector<std::vector<std::vector<u32>>> sc,
                        std::vector<u32> unit, std::string name) {
  auto A = std::make_shared<Algebra>();
  A->p = p;
  A->dim = labels.size();
  A->name = std::move(name);
  A->basis_labels = std::move(labels);
  A->sc = std::move(sc);
  A->unit = std::move(unit);
  Fp f(p);
  size_t d = A->dim;
  if (A->sc.size() != d || A->unit.size() != d)
    throw std::invalid_argument("algebra: structure constant shape mismatch");
  for (auto& row : A->sc) {
    if (row.size() != d) throw std::invalid_argument("algebra: sc shape");
    for (auto& v : row) {
      if (v.size() != d) throw std::invalid_argument("algebra: sc shape");
      for (auto& x : v) x = f.norm(x);
    }
  }
  for (auto& x : A->unit) x = f.norm(x);
  // associativity on all basis triples
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k) {
        auto lhs = alg_mul(*A, alg_mul(*A, basis_elem(*A, i), basis_elem(*A, j)), basis_elem(*A, k));
        auto rhs = alg_mul(*A, basis_elem(*A, i), alg_mul(*A, basis_elem(*A, j), basis_elem(*A, k)));
        if (lhs != rhs) {
          std::ostringstream os;
          os << "algebra not associative at basis triple (" << i << "," << j << "," << k << ")";
          throw std::invalid_argument(os.str());
        }
      }
  for (size_t i = 0; i < d; ++i) {
    auto e = basis_elem(*A, i);
    if (alg_mul(*A, A->unit, e) != e || alg_mul(*A, e, A->unit) != e)
      throw std::invalid_argument("algebra: unit fails at basis element " + std::to_string(i));
  }
  return A;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->p == b->p && a->dim == b->dim && a->sc == b->sc && a->unit == b->unit;
}

std::vector<u32> basis_elem(const Algebra& A, size_t i) {
  std::vector<u32> v(A.dim, 0);
  v[i] = 1;
  return v;
}

std::vector<u32> alg_mul(const Algebra& A, const std::vector<u32>& x, const std::vector<u32>& y) {
  Fp f(A.p);
  std::vector<u32> r(A.dim, 0);
  for (size_t i = 0; i < A.dim; ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < A.dim; ++j) {
      if (!y[j]) continue;
      u32 c = f.mul(x[i], y[j]);
      const auto& v = A.sc[i][j];
      for (size_t k = 0; k < A.dim; ++k)
        if (v[k]) r[k] = f.add(r[k], f.mul(c, v[k]));
    }
  }
  return r;
}

Mat left_mult_matrix(const Algebra& A, const std::vector<u32>& x) {
  Mat m(A.p, A.dim, A.dim);
  for (size_t j = 0; j < A.dim; ++j) {
    auto col = alg_mul(A, x, basis_elem(A, j));
    for (size_t i = 0; i < A.dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Mat right_mult_matrix(const Algebra& A, const std::vector<u32>& x) {
  Mat m(A.p, A.dim, A.dim);
  for (size_t j = 0; j < A.dim; ++j) {
    auto col = alg_mul(A, basis_elem(A, j), x);
    for (size_t i = 0; i < A.dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

AlgebraPtr opposite_algebra(const AlgebraPtr& A) {
  if (auto cached = A->opposite_cache.lock()) return cached;
  size_t d = A->dim;
  std::vector<std::vector<std::vector<u32>>> sc(d, std::vector<std::vector<u32>>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) sc[i][j] = A->sc[j][i];
  auto labels = A->basis_labels;
  auto op = make_algebra(A->p, labels, sc, A->unit, A->name + "^op");
  A->opposite_cache = op;
  op->opposite_cache = A;
  return op;
}

AlgebraPtr triangular_algebra(const AlgebraPtr& A) {
  // corners 0 = 11, 1 = 12, 2 = 22; basis index = corner*dim + a.
  size_t d = A->dim, D = 3 * d;
  std::vector<std::string> labels(D);
  const char* corner_names[3] = {"11", "12", "22"};
  for (size_t c = 0; c < 3; ++c)
    for (size_t a = 0; a < d; ++a) labels[c * d + a] = std::string(corner_names[c]) + ":" + A->basis_labels[a];
  std::vector<std::vector<std::vector<u32>>> sc(D, std::vector<std::vector<u32>>(D, std::vector<u32>(D, 0)));
  auto put = [&](size_t c1, size_t a, size_t c2, size_t b, size_t cr) {
    const auto& prod = A->sc[a][b];
    auto& out = sc[c1 * d + a][c2 * d + b];
    for (size_t k = 0; k < d; ++k) out[cr * d + k] = prod[k];
  };
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      put(0, a, 0, b, 0);  // e11 x . e11 y = e11 xy
      put(0, a, 1, b, 1);  // e11 x . e12 y = e12 xy
      put(1, a, 2, b, 1);  // e12 x . e22 y = e12 xy
      put(2, a, 2, b, 2);  // e22 x . e22 y = e22 xy
    }
  std::vector<u32> unit(D, 0);
  for (size_t k = 0; k < d; ++k) {
    unit[0 * d + k] = A->unit[k];
    unit[2 * d + k] = A->unit[k];
  }
  return make_algebra(A->p, labels, sc, unit, A->name + "_tri");
}

AlgebraPtr truncated_poly_algebra(u32 p, size_t n) {
  if (n == 0) throw std::invalid_argument("truncated_poly: n must be positive");
  std::vector<std::string> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : "x^" + std::to_string(i);
  std::vector<std::vector<std::vector<u32>>> sc(n, std::vector<std::vector<u32>>(n, std::vector<u32>(n, 0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i + j < n) sc[i][j][i + j] = 1;
  std::vector<u32> unit(n, 0);
  unit[0] = 1;
  return make_algebra(p, labels, sc, unit, "F" + std::to_string(p) + "[x]/(x^" + std::to_string(n) + ")");
}

AlgebraPtr path_algebra(u32 p, size_t n_vertices,
                        const std::vector<std::pair<size_t, size_t>>& arrows,
                        std::string name) {
  struct Path {
    size_t src, tgt;
    std::vector<size_t> edges;  // arrow indices, in traversal order
  };
  std::vector<Path> paths;
  for (size_t v = 0; v < n_vertices; ++v) paths.push_back({v, v, {}});
  // grow by length; acyclic quivers have paths of at most n_vertices-1 arrows
  size_t lo = 0, hi = paths.size();
  for (size_t len = 1; len < n_vertices + 1; ++len) {
    for (size_t t = lo; t < hi; ++t)
      for (size_t e = 0; e < arrows.size(); ++e)
        if (arrows[e].first == paths[t].tgt) {
          if (len >= n_vertices) throw std::invalid_argument("path_algebra: quiver has a cycle");
          Path np = paths[t];
          np.edges.push_back(e);
          np.tgt = arrows[e].second;
          paths.push_back(np);
        }
    lo = hi;
    hi = paths.size();
    if (lo == hi) break;
    if (paths.size() > 4096) throw std::invalid_argument("path_algebra: too many paths");
  }
  size_t d = paths.size();
  std::map<std::pair<size_t, std::vector<size_t>>, size_t> index;
  std::vector<std::string> labels(d);
  for (size_t i = 0; i < d; ++i) {
    index[{paths[i].src, paths[i].edges}] = i;
    std::ostringstream os;
    if (paths[i].edges.empty()) {
      os << "e" << paths[i].src;
    } else {
      os << paths[i].src;
      for (size_t e : paths[i].edges) os << "->" << arrows[e].second << "(" << e << ")";
    }
    labels[i] = os.str();
  }
  std::vector<std::vector<std::vector<u32>>> sc(d, std::vector<std::vector<u32>>(d, std::vector<u32>(d, 0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (paths[i].tgt == paths[j].src) {  // p.q = traverse p then q
        auto edges = paths[i].edges;
        edges.insert(edges.end(), paths[j].edges.begin(), paths[j].edges.end());
        sc[i][j][index.at({paths[i].src, edges})] = 1;
      }
  std::vector<u32> unit(d, 0);
  for (size_t v = 0; v < n_vertices; ++v) unit[v] = 1;
  if (name.empty()) name = "path_algebra_" + std::to_string(n_vertices) + "v";
  return make_algebra(p, labels, sc, unit, name);
}

AlgebraPtr path_algebra_line(u32 p, size_t n) {
  std::vector<std::pair<size_t, size_t>> arrows;
  for (size_t v = 0; v + 1 < n; ++v) arrows.push_back({v, v + 1});
  return path_algebra(p, n, arrows, "A" + std::to_string(n) + "(F" + std::to_string(p) + ")");
}

// ---------------------------------------------------------------------------

ModulePtr make_module(AlgebraPtr A, std::vector<Mat> action, std::string name) {
  auto M = std::make_shared<Module>();
  M->A = A;
  M->name = std::move(name);
  M->action = std::move(action);
  if (M->action.size() != A->dim) throw std::invalid_argument("module: one action matrix per basis element required");
  size_t m = M->action.empty() ? 0 : M->action[0].rows();
  M->dim = m;
  for (auto& mat : M->action)
    if (mat.rows() != m || mat.cols() != m || mat.p() != A->p)
      throw std::invalid_argument("module: action matrix shape/modulus mismatch");
  // axiom: (x.b_i).b_j = x.(b_i b_j)
  for (size_t i = 0; i < A->dim; ++i)
    for (size_t j = 0; j < A->dim; ++j) {
      Mat lhs = M->action[j] * M->action[i];
      Mat rhs(A->p, m, m);
      for (size_t k = 0; k < A->dim; ++k)
        if (A->sc[i][j][k]) rhs = rhs + M->action[k].scaled(A->sc[i][j][k]);
      if (!(lhs == rhs))
        throw std::invalid_argument("module: action violates structure constants at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (!elem_action(*M, A->unit).is_identity())
    throw std::invalid_argument("module: unit does not act as identity");
  return M;
}

ModulePtr zero_module(AlgebraPtr A) {
  std::vector<Mat> action(A->dim, Mat(A->p, 0, 0));
  return make_module(A, action, "0");
}

ModulePtr regular_module(AlgebraPtr A) {
  std::vector<Mat> action(A->dim);
  for (size_t i = 0; i < A->dim; ++i) action[i] = right_mult_matrix(*A, basis_elem(*A, i));
  return make_module(A, action, A->name.empty() ? "regular" : A->name);
}

ModulePtr direct_sum_module(const std::vector<ModulePtr>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
  auto A = parts[0]->A;
  size_t total = 0;
  for (auto& P : parts) {
    if (!same_algebra(P->A, A)) throw std::invalid_argument("direct_sum: algebra mismatch");
    total += P->dim;
  }
  std::vector<Mat> action(A->dim, Mat(A->p, total, total));
  for (size_t i = 0; i < A->dim; ++i) {
    size_t off = 0;
    for (auto& P : parts) {
      for (size_t r = 0; r < P->dim; ++r)
        for (size_t c = 0; c < P->dim; ++c) action[i].at(off + r, off + c) = P->action[i].at(r, c);
      off += P->dim;
    }
  }
  return make_module(A, action, "sum");
}

Mat elem_action(const Module& M, const std::vector<u32>& coords) {
  Mat r(M.A->p, M.dim, M.dim);
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i]) r = r + M.action[i].scaled(coords[i]);
  return r;
}

ModuleMap make_module_map(ModulePtr src, ModulePtr tgt, Mat mat) {
  if (!same_algebra(src->A, tgt->A)) throw std::invalid_argument("module map: algebra mismatch");
  if (mat.rows() != tgt->dim || mat.cols() != src->dim)
    throw std::invalid_argument("module map: shape mismatch");
  for (size_t i = 0; i < src->A->dim; ++i)
    if (!(mat * src->action[i] == tgt->action[i] * mat))
      throw std::invalid_argument("module map: not equivariant");
  return {src, tgt, mat};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.src->dim != f.tgt->dim) throw std::invalid_argument("compose: mismatch");
  return {f.src, g.tgt, g.mat * f.mat};
}

namespace {

// Invariant subspace spanned by {gens . b_i}: one multiplication step suffices
// because the result is closed under the action (structure constants).
Mat invariant_span(const Module& M, const Mat& gens) {
  if (gens.cols() == 0) return Mat(M.A->p, M.dim, 0);
  Mat acc = gens;
  for (size_t i = 0; i < M.A->dim; ++i) acc = acc.hstack(M.action[i] * gens);
  return column_space_basis(acc);
}

}  // namespace

SubmoduleData submodule_from_basis(const ModulePtr& M, const Mat& basis) {
  std::vector<Mat> action(M->A->dim);
  for (size_t i = 0; i < M->A->dim; ++i) {
    if (basis.cols() == 0) {
      action[i] = Mat(M->A->p, 0, 0);
    } else {
      action[i] = coords_in_basis(basis, M->action[i] * basis);
    }
  }
  auto sub = make_module(M->A, action, M->name + "|sub");
  ModuleMap incl = make_module_map(sub, M, basis);
  return {sub, basis, incl};
}

SubmoduleData submodule_generated(const ModulePtr& M, const Mat& gens) {
  return submodule_from_basis(M, invariant_span(*M, gens));
}

QuotientModuleData quotient_by_submodule(const ModulePtr& M, const Mat& sub_basis) {
  auto qb = quotient_basis(Mat::identity(M->A->p, M->dim), sub_basis);
  std::vector<Mat> action(M->A->dim);
  for (size_t i = 0; i < M->A->dim; ++i)
    action[i] = qb.project * (M->action[i] * qb.lift_basis);
  auto quot = make_module(M->A, action, M->name + "|q");
  ModuleMap proj = make_module_map(M, quot, qb.project);
  return {quot, proj, qb.lift_basis};
}

ModHomSpace module_hom(const ModulePtr& M, const ModulePtr& N) {
  if (!same_algebra(M->A, N->A)) throw std::invalid_argument("module_hom: algebra mismatch");
  u32 p = M->A->p;
  size_t dm = M->dim, dn = N->dim;
  ModHomSpace H;
  H.src = M;
  H.tgt = N;
  if (dm == 0 || dn == 0) {
    H.flat_basis = Mat(p, dm * dn, 0);
    return H;
  }
  Mat sys(p, 0, dm * dn);
  for (size_t i = 0; i < M->A->dim; ++i) {
    Mat row = kron(M->action[i].transpose(), Mat::identity(p, dn)) -
              kron(Mat::identity(p, dm), N->action[i]);
    sys = sys.vstack(row);
  }
  Mat K = kernel_basis(sys);
  H.flat_basis = K;
  for (size_t c = 0; c < K.cols(); ++c) H.basis.push_back(unvec_cm(K.col(c), dn, dm));
  return H;
}

Mat ModHomSpace::coords_of(const Mat& f) const {
  if (flat_basis.cols() == 0) {
    if (!f.is_zero()) throw std::invalid_argument("coords_of: nonzero map in zero hom space");
    return Mat(f.p(), 0, 1);
  }
  auto x = solve(flat_basis, vec_cm(f));
  if (!x) throw std::invalid_argument("coords_of: map not in hom space");
  return *x;
}

// --------------------------- radical (trace chain) -------------------------

namespace {

// Jacobson radical via the characteristic-p trace chain: I_0 cut down by the
// plain trace form, then I_{k+1} = {a in I_k : f_k(a b) = 0 for all b in I_k}
// where f_k(c) = tr(C^(p^k))/p^k mod p for an integer lift C of the left
// regular matrix of c.  Each f_k is additive on I_k and Frobenius-semilinear,
// hence linear over the prime field.
u32 f_k_value(const Algebra& A, const std::vector<u32>& c, u64 pk, u64 mod) {
  size_t n = A.dim;
  Mat L = left_mult_matrix(A, c);
  std::vector<u64> base(n * n), acc(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) base[i * n + j] = L.at(i, j);
  for (size_t i = 0; i < n; ++i) acc[i * n + i] = 1 % mod;
  auto matmul = [&](const std::vector<u64>& X, const std::vector<u64>& Y) {
    std::vector<u64> Z(n * n, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        u64 x = X[i * n + k];
        if (!x) continue;
        for (size_t j = 0; j < n; ++j) Z[i * n + j] = (Z[i * n + j] + x * Y[k * n + j]) % mod;
      }
    return Z;
  };
  u64 e = pk;
  auto b = base;
  while (e) {
    if (e & 1) acc = matmul(acc, b);
    b = matmul(b, b);
    e >>= 1;
  }
  u64 tr = 0;
  for (size_t i = 0; i < n; ++i) tr = (tr + acc[i * n + i]) % mod;
  if (tr % pk != 0) throw std::logic_error("radical: trace divisibility certificate failed");
  return (u32)((tr / pk) % A.p);
}

Mat compute_radical(const Algebra& A) {
  u32 p = A.p;
  size_t n = A.dim;
  Fp f(p);
  // step 0: plain trace form over the whole algebra
  Mat cur = Mat::identity(p, n);
  {
    Mat cond(p, n, n);  // rows: b, cols: unknown a coordinate
    for (size_t bi = 0; bi < n; ++bi)
      for (size_t ai = 0; ai < n; ++ai) {
        auto prod = alg_mul(A, basis_elem(A, ai), basis_elem(A, bi));
        Mat L = left_mult_matrix(A, prod);
        u32 tr = 0;
        for (size_t t = 0; t < n; ++t) tr = f.add(tr, L.at(t, t));
        cond.at(bi, ai) = tr;
      }
    cur = kernel_basis(cond);
  }
  // higher steps
  for (u64 pk = p; pk <= n; pk *= p) {
    if (cur.cols() == 0) break;
    u64 mod = pk * p;
    size_t m = cur.cols();
    Mat cond(p, m, m);
    for (size_t bi = 0; bi < m; ++bi) {
      auto b = col_to_vec(cur, bi);
      for (size_t ai = 0; ai < m; ++ai) {
        auto a = col_to_vec(cur, ai);
        cond.at(bi, ai) = f_k_value(A, alg_mul(A, a, b), pk, mod);
      }
    }
    cur = column_space_basis(cur * kernel_basis(cond));
  }
  return cur;
}

}  // namespace

const Mat& radical_basis(const AlgebraPtr& A) {
  if (!A->radical_cache) {
    Mat rad = compute_radical(*A);
    // certify: two-sided ideal...
    for (size_t i = 0; i < A->dim; ++i)
      for (size_t c = 0; c < rad.cols(); ++c) {
        auto r = col_to_vec(rad, c);
        auto lft = alg_mul(*A, basis_elem(*A, i), r);
        auto rgt = alg_mul(*A, r, basis_elem(*A, i));
        if (!spans_contain(rad, Mat::col_vec(A->p, lft)) ||
            !spans_contain(rad, Mat::col_vec(A->p, rgt)))
          throw std::logic_error("radical: ideal certificate failed");
      }
    // ...and nilpotent
    Mat pw = rad;
    for (size_t step = 0; step < A->dim + 1 && pw.cols() > 0; ++step) {
      Mat next(A->p, A->dim, 0);
      for (size_t i = 0; i < pw.cols(); ++i)
        for (size_t j = 0; j < rad.cols(); ++j)
          next = next.hstack(Mat::col_vec(A->p, alg_mul(*A, col_to_vec(pw, i), col_to_vec(rad, j))));
      pw = column_space_basis(next);
    }
    if (pw.cols() > 0) throw std::logic_error("radical: nilpotency certificate failed");
    A->radical_cache = rad;
  }
  return *A->radical_cache;
}

size_t loewy_length(const AlgebraPtr& A) {
  const Mat& rad = radical_basis(A);
  Mat pw = rad;
  size_t n = 1;
  while (pw.cols() > 0) {
    Mat next(A->p, A->dim, 0);
    for (size_t i = 0; i < pw.cols(); ++i)
      for (size_t j = 0; j < rad.cols(); ++j)
        next = next.hstack(Mat::col_vec(A->p, alg_mul(*A, col_to_vec(pw, i), col_to_vec(rad, j))));
    pw = column_space_basis(next);
    ++n;
  }
  return n;
}

// ------------------------------- socle -------------------------------------

SubmoduleData socle(const ModulePtr& M) {
  const Mat& rad = radical_basis(M->A);
  if (rad.cols() == 0 || M->dim == 0)
    return submodule_from_basis(M, Mat::identity(M->A->p, M->dim));
  Mat stack(M->A->p, 0, M->dim);
  for (size_t c = 0; c < rad.cols(); ++c)
    stack = stack.vstack(elem_action(*M, col_to_vec(rad, c)));
  return submodule_from_basis(M, kernel_basis(stack));
}

SocleSeries socle_series(const ModulePtr& M, size_t n) {
  SocleSeries s;
  u32 p = M->A->p;
  s.bases.push_back(Mat(p, M->dim, 0));
  s.terms.push_back(zero_module(M->A));
  Mat cur(p, M->dim, 0);
  for (size_t i = 1; i <= n; ++i) {
    if (cur.cols() == M->dim) {  // stabilized at M
      s.bases.push_back(cur);
      s.terms.push_back(s.terms.back());
      continue;
    }
    auto q = quotient_by_submodule(M, cur);
    auto sq = socle(q.quot);
    // preimage of soc(M/cur) under the projection
    Mat pre = cur.hstack(q.lift * sq.basis);
    cur = column_space_basis(pre);
    auto sub = submodule_from_basis(M, cur);
    s.bases.push_back(cur);
    s.terms.push_back(sub.sub);
  }
  return s;
}

// ------------------------- simples and projectives -------------------------

SubmoduleData find_simple_submodule(const ModulePtr& M) {
  if (M->dim == 0) throw std::invalid_argument("find_simple_submodule: zero module");
  u32 p = M->A->p;
  auto cyclic = [&](const Mat& v) { return invariant_span(*M, v); };
  Mat best(p, M->dim, 0);
  for (size_t j = 0; j < M->dim; ++j) {
    Mat c = cyclic(Mat::identity(p, M->dim).col(j));
    if (best.cols() == 0 || c.cols() < best.cols()) best = c;
  }
  // shrink until every nonzero vector generates the whole candidate: then the
  // candidate has no proper nonzero submodule.
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    size_t d = best.cols();
    double count = 1;
    for (size_t t = 0; t < d; ++t) count *= p;
    if (count > 2e5) throw std::runtime_error("find_simple_submodule: enumeration exceeds desk-scale bound");
    std::vector<u32> coeff(d, 0);
    for (size_t idx = 1; idx < (size_t)count; ++idx) {
      size_t x = idx;
      for (size_t t = 0; t < d; ++t) {
        coeff[t] = x % p;
        x /= p;
      }
      Mat v(p, M->dim, 1);
      for (size_t t = 0; t < d; ++t)
        if (coeff[t]) v = v + best.col(t).scaled(coeff[t]);
      Mat c = cyclic(v);
      if (c.cols() < best.cols()) {
        best = c;
        shrunk = true;
        break;
      }
    }
  }
  return submodule_from_basis(M, best);
}

bool iso_simples(const ModulePtr& S, const ModulePtr& T) {
  if (S->dim != T->dim) return false;
  return module_hom(S, T).dim() > 0;
}

namespace {

// Internal direct sum decomposition of a semisimple module into simples;
// returns bases in M's coordinates.
std::vector<Mat> decompose_semisimple(const ModulePtr& M) {
  std::vector<Mat> parts;
  if (M->dim == 0) return parts;
  auto S = find_simple_submodule(M);
  if (S.basis.cols() == M->dim) {
    parts.push_back(S.basis);
    return parts;
  }
  // split off S: find a right inverse of M -> M/S among module homs
  auto q = quotient_by_submodule(M, S.basis);
  auto H = module_hom(q.quot, M);
  u32 p = M->A->p;
  size_t qd = q.quot->dim;
  Mat sys(p, qd * qd, H.dim());
  for (size_t h = 0; h < H.dim(); ++h) {
    Mat comp = q.proj.mat * H.basis[h];
    for (size_t c = 0; c < qd; ++c)
      for (size_t r = 0; r < qd; ++r) sys.at(c * qd + r, h) = comp.at(r, c);
  }
  auto x = solve(sys, vec_cm(Mat::identity(p, qd)));
  if (!x) throw std::logic_error("decompose_semisimple: module is not semisimple");
  Mat sigma(p, M->dim, qd);
  for (size_t h = 0; h < H.dim(); ++h)
    if (x->at(h, 0)) sigma = sigma + H.basis[h].scaled(x->at(h, 0));
  auto C = submodule_from_basis(M, column_space_basis(sigma));
  parts.push_back(S.basis);
  for (auto& b : decompose_semisimple(C.sub)) parts.push_back(C.basis * b);
  return parts;
}

}  // namespace

const std::vector<ModulePtr>& simples(const AlgebraPtr& A) {
  if (!A->simples_cache) {
    auto reg = regular_module(A);
    auto q = quotient_by_submodule(reg, radical_basis(A));
    std::vector<ModulePtr> out;
    for (auto& b : decompose_semisimple(q.quot)) {
      auto S = submodule_from_basis(q.quot, b);
      bool dup = false;
      for (auto& prev : out)
        if (iso_simples(prev, S.sub)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(S.sub);
    }
    A->simples_cache = out;
  }
  return *A->simples_cache;
}

const std::vector<ProjData>& proj_indecs(const AlgebraPtr& A) {
  if (A->projs_cache) return *A->projs_cache;
  u32 p = A->p;
  Fp f(p);
  auto reg = regular_module(A);
  const Mat& rad = radical_basis(A);
  auto q = quotient_by_submodule(reg, rad);
  auto parts = decompose_semisimple(q.quot);
  // components of the unit in the decomposition give the primitive
  // orthogonal idempotents of A/rad
  Mat stack(p, q.quot->dim, 0);
  for (auto& b : parts) stack = stack.hstack(b);
  Mat ubar = q.proj.mat * Mat::col_vec(p, A->unit);
  Mat coords = coords_in_basis(stack, ubar);
  std::vector<std::vector<u32>> ebars;
  size_t off = 0;
  for (auto& b : parts) {
    Mat comp(p, q.quot->dim, 1);
    for (size_t c = 0; c < b.cols(); ++c)
      if (coords.at(off + c, 0)) comp = comp + b.col(c).scaled(coords.at(off + c, 0));
    ebars.push_back(comp.col_data(0));
    off += b.cols();
  }
  // lift idempotents to A, keeping them orthogonal by working in the corner
  // g A g of the remaining idempotent g = 1 - sum of previous lifts
  auto vadd = [&](const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
  };
  auto vsub = [&](const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
  };
  auto vscale = [&](u32 c, const std::vector<u32>& a) {
    std::vector<u32> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
  };
  std::vector<u32> g = A->unit;
  std::vector<std::vector<u32>> idems;
  for (auto& ebar : ebars) {
    // preimage of ebar in A
    std::vector<u32> ehat(A->dim, 0);
    Mat lifted = q.lift * Mat::col_vec(p, ebar);
    for (size_t i = 0; i < A->dim; ++i) ehat[i] = lifted.at(i, 0);
    auto x = alg_mul(*A, g, alg_mul(*A, ehat, g));
    for (int iter = 0; iter < 64; ++iter) {
      auto x2 = alg_mul(*A, x, x);
      if (x2 == x) break;
      auto x3 = alg_mul(*A, x2, x);
      // Newton step 3x^2 - 2x^3, valid in any characteristic
      x = vsub(vadd(x2, vadd(x2, x2)), vadd(x3, x3));
      if (iter == 63) throw std::logic_error("idempotent lifting did not converge");
    }
    if (alg_mul(*A, x, x) != x) throw std::logic_error("idempotent lifting failed");
    idems.push_back(x);
    g = vsub(g, x);
  }
  (void)vscale;
  if (Mat::col_vec(p, g).is_zero() == false)
    throw std::logic_error("idempotent lifts do not sum to the unit");
  // cyclic projectives e.Lambda, grouped by isomorphism class of the top
  struct Raw {
    SubmoduleData P;
    ModulePtr top;
    std::vector<u32> idem;
  };
  std::vector<Raw> raw;
  for (auto& e : idems) {
    Mat gens(p, A->dim, 0);
    for (size_t j = 0; j < A->dim; ++j)
      gens = gens.hstack(Mat::col_vec(p, alg_mul(*A, e, basis_elem(*A, j))));
    auto P = submodule_from_basis(reg, column_space_basis(gens));
    // top = P / P.rad
    Mat prad(p, P.sub->dim, 0);
    for (size_t c = 0; c < rad.cols(); ++c)
      prad = prad.hstack(elem_action(*P.sub, col_to_vec(rad, c)));
    auto top = quotient_by_submodule(P.sub, column_space_basis(prad));
    raw.push_back({P, top.quot, e});
  }
  std::vector<ProjData> out;
  for (auto& r : raw) {
    bool found = false;
    for (auto& pd : out)
      if (iso_simples(pd.top, r.top)) {
        pd.multiplicity += 1;
        found = true;
        break;
      }
    if (!found) out.push_back({r.P.sub, r.top, 1, r.idem});
  }
  // sanity: dimensions add up to dim A
  size_t total = 0;
  for (auto& pd : out) total += pd.proj->dim * pd.multiplicity;
  if (total != A->dim) throw std::logic_error("projective decomposition does not exhaust the algebra");
  A->projs_cache = out;
  return *A->projs_cache;
}

CoverData projective_cover(const ModulePtr& M) {
  u32 p = M->A->p;
  auto A = M->A;
  if (M->dim == 0) {
    auto z = zero_module(A);
    return {make_module_map(z, M, Mat(p, 0, 0)), Mat(p, 0, 0)};
  }
  const Mat& rad = radical_basis(A);
  Mat mrad(p, M->dim, 0);
  for (size_t c = 0; c < rad.cols(); ++c)
    mrad = mrad.hstack(elem_action(*M, rad.col_data(c)));
  auto T = quotient_by_submodule(M, column_space_basis(mrad));
  auto parts = decompose_semisimple(T.quot);
  const auto& projs = proj_indecs(A);
  // also need each projective's basis inside the algebra for evaluation
  std::vector<ModulePtr> summands;
  Mat mapmat(p, M->dim, 0);
  for (auto& b : parts) {
    auto Tj = submodule_from_basis(T.quot, b);
    const ProjData* pd = nullptr;
    for (auto& cand : projs)
      if (iso_simples(cand.top, Tj.sub)) {
        pd = &cand;
        break;
      }
    if (!pd) throw std::logic_error("projective_cover: top factor matches no projective");
    // pick a generator of the summand not killed by the idempotent
    Mat act = elem_action(*T.quot, pd->idem);
    Mat tprime(p, T.quot->dim, 1);
    for (size_t c = 0; c < b.cols(); ++c) {
      Mat cand = act * b.col(c);
      if (!cand.is_zero()) {
        tprime = cand;
        break;
      }
    }
    if (tprime.is_zero()) throw std::logic_error("projective_cover: idempotent kills the summand");
    auto mhat = solve(T.proj.mat, tprime);
    if (!mhat) throw std::logic_error("projective_cover: lift failed");
    Mat m0 = elem_action(*M, pd->idem) * *mhat;
    // hom P -> M determined by e |-> m0; basis of P consists of algebra
    // elements q, mapped to m0.q
    auto reg = regular_module(A);
    Mat cols(p, M->dim, 0);
    // recover P's basis in algebra coordinates via its inclusion into Lambda
    Mat gens(p, A->dim, 0);
    for (size_t j = 0; j < A->dim; ++j)
      gens = gens.hstack(Mat::col_vec(p, alg_mul(*A, pd->idem, basis_elem(*A, j))));
    Mat pbasis = column_space_basis(gens);
    for (size_t c = 0; c < pbasis.cols(); ++c)
      cols = cols.hstack(elem_action(*M, pbasis.col_data(c)) * m0);
    summands.push_back(pd->proj);
    mapmat = mapmat.hstack(cols);
  }
  ModulePtr P = summands.empty() ? zero_module(A) : direct_sum_module(summands);
  auto cover = make_module_map(P, M, mapmat);
  if (rank_of(mapmat) != M->dim) throw std::logic_error("projective_cover: not surjective");
  return {cover, kernel_basis(mapmat)};
}

bool is_projective(const ModulePtr& M) { return projective_cover(M).kernel_basis.cols() == 0; }

// ------------------------------- duality -----------------------------------

ModulePtr k_dual(const ModulePtr& M) {
  auto op = opposite_algebra(M->A);
  std::vector<Mat> action(op->dim);
  for (size_t i = 0; i < op->dim; ++i) action[i] = M->action[i].transpose();
  return make_module(op, action, "D(" + M->name + ")");
}

ModuleMap k_dual(const ModuleMap& f) {
  return make_module_map(k_dual(f.tgt), k_dual(f.src), f.mat.transpose());
}

// ----------------------------- isomorphism ---------------------------------

Ternary iso_modules(const ModulePtr& M, const ModulePtr& N, size_t budget) {
  if (M->dim != N->dim) return Ternary::No;
  if (M->dim == 0) return Ternary::Yes;
  auto H = module_hom(M, N);
  if (H.dim() == 0) return Ternary::No;
  u32 p = M->A->p;
  double count = 1;
  for (size_t t = 0; t < H.dim(); ++t) count *= p;
  auto try_combo = [&](const std::vector<u32>& c) {
    Mat F(p, N->dim, M->dim);
    for (size_t t = 0; t < H.dim(); ++t)
      if (c[t]) F = F + H.basis[t].scaled(c[t]);
    return rank_of(F) == M->dim;
  };
  if (count <= (double)budget) {
    std::vector<u32> c(H.dim(), 0);
    for (size_t idx = 1; idx < (size_t)count; ++idx) {
      size_t x = idx;
      for (size_t t = 0; t < H.dim(); ++t) {
        c[t] = x % p;
        x /= p;
      }
      if (try_combo(c)) return Ternary::Yes;
    }
    return Ternary::No;
  }
  std::mt19937 rng(12345);
  std::vector<u32> c(H.dim());
  for (size_t tries = 0; tries < 2000; ++tries) {
    for (auto& x : c) x = rng() % p;
    if (try_combo(c)) return Ternary::Yes;
  }
  return Ternary::Undecided;
}

}  // namespace pcc
