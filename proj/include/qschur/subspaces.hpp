#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qschur/ppoly.hpp"

namespace qschur {

/// A finite-dimensional F_q-subspace of the ambient algebra, held as a reduced
/// echelon basis: every basis vector is monic, its leading monomial occurs in
/// no other basis vector, and vectors are sorted by descending leading
/// monomial. Two spans are equal exactly when their bases are.
class Subspace {
 public:
  explicit Subspace(FieldRef field) : field_(std::move(field)) {}

  /// Zero and dependent vectors collapse.
  static Subspace span(const FieldRef& field, const std::vector<Poly>& vectors);
  /// Semicolon-separated polynomials; "" is the zero subspace.
  static Subspace parse(const FieldRef& field, std::string_view text);

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<Poly>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  /// The remainder of v after eliminating every leading monomial of the basis.
  Poly reduce(const Poly& v) const;
  bool contains(const Poly& v) const { return reduce(v).is_zero(); }
  bool contains(const Subspace& u) const;

  /// Basis vectors joined by "; " ("0" for the zero subspace).
  std::string to_string() const;

  bool operator==(const Subspace& o) const { return same_field(field_, o.field_) && basis_ == o.basis_; }

 private:
  FieldRef field_;
  std::vector<Poly> basis_;
};

/// Complete flag V = V_0 > V_1 > ... > V_n = 0.
struct Flag {
  std::vector<Subspace> chain;
};

/// Largest q^dim any enumeration accepts (default 243).
std::size_t enumeration_ceiling();
void set_enumeration_ceiling(std::size_t ceiling);

/// All q^dim vectors as sum c_i b_i, coefficient tuples in lexicographic order
/// of their codes. Throws EnumerationTooLarge.
std::vector<Poly> enumerate_vectors(const Subspace& v);

/// All (q^dim - 1)/(q - 1) lines, each the span of its monic direction
/// vector, in the order of those vectors within enumerate_vectors.
std::vector<Subspace> enumerate_lines(const Subspace& v);

/// All complete flags, built by recursing into every hyperplane.
std::vector<Flag> enumerate_flags(const Subspace& v);

/// Product of all nonzero vectors; 1 for the zero subspace.
Poly pi_product(const Subspace& v);

/// f_U(t), the product of (t + u) over all u in U. Throws NotQPolynomial if
/// the expansion is not a q-polynomial.
UniPoly additive_poly(const Subspace& u);

/// V // U, the span of f_U applied to a basis of V. Throws NotSubspace unless
/// U is contained in V and DimensionDrop if the dimension is not
/// dim V - dim U.
Subspace internal_quotient(const Subspace& v, const Subspace& u);

/// V // U == (V // T) // (U // T) for T in U in V.
bool quotient_tower_check(const Subspace& t, const Subspace& u, const Subspace& v);

/// pi(U // U') equals the product of all vectors of U outside U'.
bool coset_product_check(const Subspace& u, const Subspace& u_prime);

}  // namespace qschur
