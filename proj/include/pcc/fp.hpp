// Exact dense linear algebra over prime fields F_p.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcc {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

bool is_prime(u32 n);

// Arithmetic helper for a fixed prime modulus.
struct Fp {
  u32 p;
  explicit Fp(u32 p_);
  u32 norm(long long x) const {
    long long r = x % (long long)p;
    return (u32)(r < 0 ? r + p : r);
  }
  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 mul(u32 a, u32 b) const { return (u32)((u64)a * b % p); }
  u32 inv(u32 a) const;  // a != 0
};

// Dense matrix over F_p.  Entries stored row-major as residues in [0, p).
class Mat {
 public:
  Mat() : p_(2), rows_(0), cols_(0) {}
  Mat(u32 p, size_t rows, size_t cols);
  static Mat identity(u32 p, size_t n);
  static Mat zero(u32 p, size_t rows, size_t cols) { return Mat(p, rows, cols); }
  static Mat from_rows(u32 p, const std::vector<std::vector<u32>>& rows);
  static Mat col_vec(u32 p, const std::vector<u32>& v);

  u32 p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  u32& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  u32 at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(u32 c) const;
  Mat negated() const;
  Mat transpose() const;
  Mat hstack(const Mat& o) const;  // [this | o]
  Mat vstack(const Mat& o) const;  // [this ; o]
  Mat submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
  Mat col(size_t j) const { return submatrix(0, j, rows_, 1); }
  std::vector<u32> col_data(size_t j) const;

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Mat& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  std::string str() const;

 private:
  u32 p_;
  size_t rows_, cols_;
  std::vector<u32> a_;
};

struct RrefResult {
  size_t rank;
  Mat reduced;
  std::vector<size_t> pivot_cols;
};

// Reduced row echelon form with deterministic pivoting: for each column in
// order, pick the first not-yet-used row with a nonzero entry.
RrefResult rref(const Mat& m);

size_t rank_of(const Mat& m);

// Columns span ker(m); column count = cols - rank.
Mat kernel_basis(const Mat& m);

// Solve A x = b (b may have several columns).  nullopt when inconsistent.
std::optional<Mat> solve(const Mat& A, const Mat& b);

struct QuotientBasis {
  // Columns of lift_basis are columns of V extending a basis of span(W) to a
  // basis of span(V): representatives of the quotient span(V)/span(W).
  Mat lift_basis;
  // project maps V-coordinates (a length-cols(V) vector) to quotient
  // coordinates w.r.t. lift_basis, killing W.
  Mat project;
};

// Requires span(W) subseteq span(V) (checked).
QuotientBasis quotient_basis(const Mat& V, const Mat& W);

// Coordinates of each column of B in terms of the columns of basis (which must
// be independent and contain span(B)); throws if not expressible.
Mat coords_in_basis(const Mat& basis, const Mat& B);

// Basis (as columns) of the column span, chosen deterministically among the
// input columns.
Mat column_space_basis(const Mat& m);

// True if every column of B lies in the column span of V.
bool spans_contain(const Mat& V, const Mat& B);

// Basis of the intersection of the two column spans.
Mat intersect_col_spans(const Mat& A, const Mat& B);

}  // namespace pcc
