#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qschur/partitions.hpp"
#include "qschur/ppoly.hpp"

namespace qschur {

/// A dense rows x cols matrix of polynomials over one field.
class PolyMatrix {
 public:
  PolyMatrix(FieldRef field, std::size_t rows, std::size_t cols);
  /// Rows must be non-empty and of equal length.
  static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldRef& field() const noexcept { return field_; }

  const Poly& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  Poly& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && cells_ == o.cells_;
  }

 private:
  FieldRef field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> cells_;
};

/// Determinant by Laplace expansion along rows, memoizing every minor by its
/// set of remaining columns. The 0 x 0 determinant is 1. Throws NotSquare.
Poly det(const PolyMatrix& m);

/// A Z x Z matrix given by an entry generator that must vanish below the
/// diagonal. Entries are produced on demand, so only finite windows are
/// ever materialized.
class TriangularZMatrix {
 public:
  using EntryFn = std::function<Poly(long i, long j)>;

  TriangularZMatrix(FieldRef field, EntryFn entry, std::string tag);

  Poly operator()(long i, long j) const { return entry_(i, j); }
  const FieldRef& field() const noexcept { return field_; }
  const std::string& tag() const noexcept { return tag_; }

  /// Throws HypothesisViolated if some entry (i, j) with lo <= j < i <= hi is
  /// nonzero.
  void audit(long lo, long hi) const;

  /// The identity matrix.
  static TriangularZMatrix identity(const FieldRef& field);

 private:
  FieldRef field_;
  EntryFn entry_;
  std::string tag_;
};

/// The matrix with (a, b) entry m(row_idx[a], col_idx[b]).
PolyMatrix sub_minor(const TriangularZMatrix& m, const std::vector<long>& row_idx, const std::vector<long>& col_idx);

/// The entries (i, j), lo <= i, j <= hi, of m as a dense matrix.
PolyMatrix dense_window(const TriangularZMatrix& m, long lo, long hi);

/// The entries (i, j), lo <= i, j <= hi, of the product a b: each is the
/// finite sum over k in [i, j] of a(i, k) b(k, j). Both factors are audited
/// on the window. Throws WindowInvalid when lo > hi.
PolyMatrix window_product(const TriangularZMatrix& a, const TriangularZMatrix& b, long lo, long hi);

struct CauchyBinetAddend {
  std::vector<long> g;
  Poly left;   // det of the rows i, columns g minor of a
  Poly right;  // det of the rows g, columns j minor of b
};

struct CauchyBinetResult {
  Poly determinant;  // det of the rows i, columns j minor of a b
  std::vector<CauchyBinetAddend> addends;
  Poly sum;          // sum of left * right over the addends
};

/// Expansion of a minor of a product of upper-triangular matrices over all
/// g_1 > ... > g_u with i_k <= g_k <= j_k. The product is taken on the window
/// [min - 1, max + 1] of the indices involved. Throws IndexNotDecreasing or
/// ShapeMismatch.
CauchyBinetResult cauchy_binet(const TriangularZMatrix& a, const TriangularZMatrix& b, const std::vector<long>& i,
                               const std::vector<long>& j);

/// det of ((-1)^(lambda_i - nu_j - i + j) c_{i,j}) for a u x u matrix c.
/// Throws ShapeMismatch.
Poly scale_sign_det(const PolyMatrix& c, const Partition& lambda, const Partition& nu, std::size_t u);

/// Checks the hypothesis |X| + |Y| > u with c_{x,y} = 0 on X x Y (1-based
/// indices) and returns whether det(c) = 0. Throws HypothesisViolated when
/// the hypothesis fails, NotSquare for non-square c.
bool too_many_zeroes_check(const PolyMatrix& c, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys);

}  // namespace qschur
