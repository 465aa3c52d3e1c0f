#include "pcc/fp.hpp"

#include <sstream>

namespace pcc {

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; (u64)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fp::Fp(u32 p_) : p(p_) {
  if (!is_prime(p_)) throw std::invalid_argument("modulus must be prime: " + std::to_string(p_));
}

u32 Fp::inv(u32 a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2) mod p.
  u32 e = p - 2;
  u64 base = a, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return (u32)acc;
}

Mat::Mat(u32 p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  Fp check(p);  // validates primality
}

Mat Mat::identity(u32 p, size_t n) {
  Mat m(p, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(u32 p, const std::vector<std::vector<u32>>& rows) {
  size_t nc = rows.empty() ? 0 : rows[0].size();
  Mat m(p, rows.size(), nc);
  Fp f(p);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < nc; ++j) m.at(i, j) = f.norm(rows[i][j]);
  }
  return m;
}

Mat Mat::col_vec(u32 p, const std::vector<u32>& v) {
  Mat m(p, v.size(), 1);
  Fp f(p);
  for (size_t i = 0; i < v.size(); ++i) m.at(i, 0) = f.norm(v[i]);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (p_ != o.p_ || cols_ != o.rows_) throw std::invalid_argument("mat mul shape/modulus mismatch");
  Mat r(p_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      u32 aik = at(i, k);
      if (!aik) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        u64 v = r.at(i, j) + (u64)aik * o.at(k, j) % p_;
        r.at(i, j) = (u32)(v >= p_ ? v - p_ : v);
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("mat add mismatch");
  Fp f(p_);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("mat sub mismatch");
  Fp f(p_);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::scaled(u32 c) const {
  Fp f(p_);
  c = f.norm(c);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.mul(a_[i], c);
  return r;
}

Mat Mat::negated() const {
  Fp f(p_);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.neg(a_[i]);
  return r;
}

Mat Mat::transpose() const {
  Mat r(p_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::hstack(const Mat& o) const {
  if (p_ != o.p_ || rows_ != o.rows_) throw std::invalid_argument("hstack mismatch");
  Mat r(p_, rows_, cols_ + o.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

Mat Mat::vstack(const Mat& o) const {
  if (p_ != o.p_ || cols_ != o.cols_) throw std::invalid_argument("vstack mismatch");
  Mat r(p_, rows_ + o.rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (size_t i = 0; i < o.rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
  return r;
}

Mat Mat::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix out of range");
  Mat r(p_, nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

std::vector<u32> Mat::col_data(size_t j) const {
  std::vector<u32> v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

bool Mat::is_zero() const {
  for (u32 x : a_)
    if (x) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << " mod " << p_ << "\n";
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
    os << "\n";
  }
  return os.str();
}

RrefResult rref(const Mat& m) {
  Fp f(m.p());
  Mat r = m;
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    // deterministic pivot: first row >= `row` with nonzero entry in this column
    size_t piv = row;
    while (piv < r.rows() && r.at(piv, col) == 0) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < r.cols(); ++j) std::swap(r.at(row, j), r.at(piv, j));
    u32 inv = f.inv(r.at(row, col));
    for (size_t j = 0; j < r.cols(); ++j) r.at(row, j) = f.mul(r.at(row, j), inv);
    for (size_t i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      u32 c = r.at(i, col);
      if (!c) continue;
      for (size_t j = 0; j < r.cols(); ++j)
        r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {pivots.size(), r, pivots};
}

size_t rank_of(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& m) {
  Fp f(m.p());
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat K(m.p(), m.cols(), free_cols.size());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    size_t fc = free_cols[t];
    K.at(fc, t) = 1;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
      K.at(rr.pivot_cols[i], t) = f.neg(rr.reduced.at(i, fc));
  }
  return K;
}

std::optional<Mat> solve(const Mat& A, const Mat& b) {
  if (A.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  RrefResult rr = rref(A.hstack(b));
  // inconsistent iff some pivot lies in the b-block
  for (size_t c : rr.pivot_cols)
    if (c >= A.cols()) return std::nullopt;
  Mat x(A.p(), A.cols(), b.cols());
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      x.at(rr.pivot_cols[i], j) = rr.reduced.at(i, A.cols() + j);
  return x;
}

Mat column_space_basis(const Mat& m) {
  RrefResult rr = rref(m);
  Mat b(m.p(), m.rows(), rr.pivot_cols.size());
  for (size_t t = 0; t < rr.pivot_cols.size(); ++t)
    for (size_t i = 0; i < m.rows(); ++i) b.at(i, t) = m.at(i, rr.pivot_cols[t]);
  return b;
}

bool spans_contain(const Mat& V, const Mat& B) {
  if (B.cols() == 0) return true;
  return rank_of(V) == rank_of(V.hstack(B));
}

Mat coords_in_basis(const Mat& basis, const Mat& B) {
  auto x = solve(basis, B);
  if (!x) throw std::invalid_argument("coords_in_basis: not in span");
  return *x;
}

QuotientBasis quotient_basis(const Mat& V, const Mat& W) {
  if (V.p() != W.p() || V.rows() != W.rows())
    throw std::invalid_argument("quotient_basis: shape/modulus mismatch");
  if (!spans_contain(V, W)) throw std::invalid_argument("quotient_basis: W not contained in span(V)");
  Mat wb = column_space_basis(W);
  // extend basis of span(W) by columns of V, greedily and deterministically
  Mat acc = wb;
  std::vector<size_t> chosen;
  size_t target = rank_of(V.hstack(W));
  for (size_t j = 0; j < V.cols() && rank_of(acc) < target; ++j) {
    Mat cand = acc.hstack(V.col(j));
    if (rank_of(cand) > rank_of(acc)) {
      acc = cand;
      chosen.push_back(j);
    }
  }
  Mat lift(V.p(), V.rows(), chosen.size());
  for (size_t t = 0; t < chosen.size(); ++t)
    for (size_t i = 0; i < V.rows(); ++i) lift.at(i, t) = V.at(i, chosen[t]);
  // projection: express each column of V in [wb | lift], keep the lift part
  Mat proj(V.p(), chosen.size(), V.cols());
  if (V.cols() > 0) {
    Mat full = wb.hstack(lift);
    Mat coords = coords_in_basis(full, V);
    for (size_t t = 0; t < chosen.size(); ++t)
      for (size_t j = 0; j < V.cols(); ++j) proj.at(t, j) = coords.at(wb.cols() + t, j);
  }
  return {lift, proj};
}

Mat intersect_col_spans(const Mat& A, const Mat& B) {
  if (A.p() != B.p() || A.rows() != B.rows())
    throw std::invalid_argument("intersect: mismatch");
  // ker[A | -B] -> x part gives intersection elements A x.
  if (A.cols() == 0 || B.cols() == 0) return Mat(A.p(), A.rows(), 0);
  Mat K = kernel_basis(A.hstack(B.negated()));
  Mat xpart = K.submatrix(0, 0, A.cols(), K.cols());
  return column_space_basis(A * xpart);
}

}  // namespace pcc
