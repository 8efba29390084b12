#include "qschur/fmatrix.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace qschur {

PolyMatrix::PolyMatrix(FieldRef field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), cells_(rows * cols, Poly(field_)) {}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Poly>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(ErrorKind::ShapeMismatch, "matrix needs at least one entry");
  PolyMatrix m(rows.front().front().field(), rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!same_field(rows[i][j].field(), m.field_)) throw Error(ErrorKind::SpecMismatch, "matrix entries over different fields");
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

namespace {

class MinorExpander {
 public:
  explicit MinorExpander(const PolyMatrix& m) : m_(m) {}

  // Determinant of the rows [n - popcount(cols), n) restricted to `cols`.
  Poly minor(std::uint64_t cols) {
    if (cols == 0) return Poly::one(m_.field());
    if (auto it = memo_.find(cols); it != memo_.end()) return it->second;
    const std::size_t row = m_.rows() - static_cast<std::size_t>(std::popcount(cols));
    Poly total(m_.field());
    int position = 0;
    for (std::size_t c = 0; c < m_.cols(); ++c) {
      if (!(cols >> c & 1)) continue;
      const Poly& entry = m_.at(row, c);
      if (!entry.is_zero()) {
        Poly term = entry * minor(cols & ~(std::uint64_t{1} << c));
        total = (position % 2 == 0) ? total + term : total - term;
      }
      ++position;
    }
    memo_.emplace(cols, total);
    return total;
  }

 private:
  const PolyMatrix& m_;
  std::unordered_map<std::uint64_t, Poly> memo_;
};

}  // namespace

Poly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  if (m.rows() > 24) throw Error(ErrorKind::InvalidArgument, "determinant size above 24");
  if (m.rows() == 0) return Poly::one(m.field());
  MinorExpander ex(m);
  return ex.minor((std::uint64_t{1} << m.cols()) - 1);
}

TriangularZMatrix::TriangularZMatrix(FieldRef field, EntryFn entry, std::string tag)
    : field_(std::move(field)), entry_(std::move(entry)), tag_(std::move(tag)) {}

void TriangularZMatrix::audit(long lo, long hi) const {
  for (long i = lo; i <= hi; ++i)
    for (long j = lo; j < i; ++j)
      if (!entry_(i, j).is_zero())
        throw Error(ErrorKind::HypothesisViolated,
                    tag_ + " has a nonzero entry below the diagonal at (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

TriangularZMatrix TriangularZMatrix::identity(const FieldRef& field) {
  return TriangularZMatrix(
      field, [field](long i, long j) { return i == j ? Poly::one(field) : Poly::zero(field); }, "I");
}

PolyMatrix sub_minor(const TriangularZMatrix& m, const std::vector<long>& row_idx, const std::vector<long>& col_idx) {
  PolyMatrix out(m.field(), row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b) out.at(a, b) = m(row_idx[a], col_idx[b]);
  return out;
}

PolyMatrix dense_window(const TriangularZMatrix& m, long lo, long hi) {
  if (lo > hi) throw Error(ErrorKind::WindowInvalid, "empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  std::vector<long> idx;
  for (long i = lo; i <= hi; ++i) idx.push_back(i);
  return sub_minor(m, idx, idx);
}

PolyMatrix window_product(const TriangularZMatrix& a, const TriangularZMatrix& b, long lo, long hi) {
  if (lo > hi) throw Error(ErrorKind::WindowInvalid, "empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::SpecMismatch, "factors over different fields");
  a.audit(lo, hi);
  b.audit(lo, hi);
  const PolyMatrix da = dense_window(a, lo, hi);
  const PolyMatrix db = dense_window(b, lo, hi);
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  PolyMatrix out(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Poly s(a.field());
      for (std::size_t k = i; k <= j; ++k) s += da.at(i, k) * db.at(k, j);
      out.at(i, j) = s;
    }
  return out;
}

namespace {

void check_decreasing(const std::vector<long>& v, const char* name) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] >= v[k - 1]) throw Error(ErrorKind::IndexNotDecreasing, std::string(name) + " is not strictly decreasing");
}

void enumerate_g(const std::vector<long>& i, const std::vector<long>& j, std::size_t k, std::vector<long>& g,
                 std::vector<std::vector<long>>& out) {
  if (k == i.size()) {
    out.push_back(g);
    return;
  }
  const long upper = k == 0 ? j[k] : std::min(j[k], g[k - 1] - 1);
  for (long v = upper; v >= i[k]; --v) {
    g.push_back(v);
    enumerate_g(i, j, k + 1, g, out);
    g.pop_back();
  }
}

}  // namespace

CauchyBinetResult cauchy_binet(const TriangularZMatrix& a, const TriangularZMatrix& b, const std::vector<long>& i,
                               const std::vector<long>& j) {
  if (i.size() != j.size()) throw Error(ErrorKind::ShapeMismatch, "row and column index lists differ in length");
  check_decreasing(i, "row index list");
  check_decreasing(j, "column index list");
  const FieldRef& f = a.field();
  CauchyBinetResult result{Poly::one(f), {}, Poly(f)};
  if (!i.empty()) {
    const long lo = std::min(*std::min_element(i.begin(), i.end()), *std::min_element(j.begin(), j.end())) - 1;
    const long hi = std::max(*std::max_element(i.begin(), i.end()), *std::max_element(j.begin(), j.end())) + 1;
    const PolyMatrix ab = window_product(a, b, lo, hi);
    PolyMatrix minor(f, i.size(), j.size());
    for (std::size_t r = 0; r < i.size(); ++r)
      for (std::size_t c = 0; c < j.size(); ++c)
        minor.at(r, c) = ab.at(static_cast<std::size_t>(i[r] - lo), static_cast<std::size_t>(j[c] - lo));
    result.determinant = det(minor);
  }
  std::vector<std::vector<long>> gs;
  std::vector<long> g;
  enumerate_g(i, j, 0, g, gs);
  for (auto& gv : gs) {
    CauchyBinetAddend add{gv, det(sub_minor(a, i, gv)), det(sub_minor(b, gv, j))};
    result.sum += add.left * add.right;
    result.addends.push_back(std::move(add));
  }
  return result;
}

Poly scale_sign_det(const PolyMatrix& c, const Partition& lambda, const Partition& nu, std::size_t u) {
  if (c.rows() != u || c.cols() != u) throw Error(ErrorKind::ShapeMismatch, "matrix is not " + std::to_string(u) + "x" + std::to_string(u));
  if (lambda.length() > u || nu.length() > u) throw Error(ErrorKind::ShapeMismatch, "partition longer than the matrix size");
  PolyMatrix signed_c = c;
  for (std::size_t i = 1; i <= u; ++i)
    for (std::size_t j = 1; j <= u; ++j) {
      const long e = lambda.part(i) - nu.part(j) - static_cast<long>(i) + static_cast<long>(j);
      if (e % 2 != 0) signed_c.at(i - 1, j - 1) = -signed_c.at(i - 1, j - 1);
    }
  return det(signed_c);
}

bool too_many_zeroes_check(const PolyMatrix& c, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) {
  if (c.rows() != c.cols()) throw Error(ErrorKind::NotSquare, "too-many-zeroes check needs a square matrix");
  const std::size_t u = c.rows();
  auto distinct_in_range = [u](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end() && (v.empty() || (v.front() >= 1 && v.back() <= u));
  };
  if (!distinct_in_range(xs) || !distinct_in_range(ys))
    throw Error(ErrorKind::HypothesisViolated, "index sets must be distinct indices in [1, u]");
  if (xs.size() + ys.size() <= u) throw Error(ErrorKind::HypothesisViolated, "|X| + |Y| must exceed u");
  for (std::size_t x : xs)
    for (std::size_t y : ys)
      if (!c.at(x - 1, y - 1).is_zero())
        throw Error(ErrorKind::HypothesisViolated, "entry (" + std::to_string(x) + "," + std::to_string(y) + ") is nonzero");
  return det(c).is_zero();
}

}  // namespace qschur
