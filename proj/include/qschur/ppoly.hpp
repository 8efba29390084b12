#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "qschur/gf.hpp"

namespace qschur {

/// A nonnegative q-local integer num / q^dpow.
///
/// Normalized: dpow == 0 or q does not divide num. The base q travels with
/// the value; q == 0 marks a plain integer whose base is not yet fixed
/// (only possible when dpow == 0).
class QExponent {
 public:
  constexpr QExponent() = default;
  static QExponent integer(std::uint64_t n, unsigned q = 0) { return make(n, 0, q); }
  static QExponent make(std::uint64_t num, std::uint32_t dpow, unsigned q);

  std::uint64_t num() const noexcept { return num_; }
  std::uint32_t dpow() const noexcept { return dpow_; }
  unsigned base() const noexcept { return q_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return dpow_ == 0; }

  QExponent operator+(const QExponent& o) const;
  /// Exact difference; throws InvalidArgument when it would be negative.
  QExponent operator-(const QExponent& o) const;
  /// Multiply by q^k; k may be negative.
  QExponent scaled(int k) const;
  QExponent times(std::uint64_t m) const;

  /// Power of q (q^i, i >= 0) test, used for q-polynomials.
  bool is_q_power() const;

  std::strong_ordering operator<=>(const QExponent& o) const;
  bool operator==(const QExponent& o) const { return num_ == o.num_ && dpow_ == o.dpow_; }

  /// "n" or "n/q" or "n/q^j", with q written as a number.
  std::string to_string() const;

 private:
  std::uint64_t num_ = 0;
  std::uint32_t dpow_ = 0;
  std::uint32_t q_ = 0;
};

/// Variable indices: the ambient namespace uses 0..kAmbientVars-1 (named
/// x, y, z, w, v, u, s, r); universal rings use kUniversalBase + i
/// (named x1, x2, ...). Substitution is the only bridge between the two.
inline constexpr std::uint32_t kAmbientVars = 8;
inline constexpr std::uint32_t kUniversalBase = 16;
inline constexpr std::uint32_t kUniversalVars = 16;

inline constexpr std::uint32_t ambient_var(std::uint32_t i) { return i; }
inline constexpr std::uint32_t universal_var(std::uint32_t i) { return kUniversalBase + i; }
inline constexpr bool is_universal_var(std::uint32_t v) { return v >= kUniversalBase; }

std::string variable_name(std::uint32_t var);
/// Returns false for unknown names.
bool variable_index(std::string_view name, std::uint32_t& out);

struct VarExp {
  std::uint32_t var;
  QExponent exp;
  bool operator==(const VarExp& o) const { return var == o.var && exp == o.exp; }
};

/// A monomial with exponents in N[1/q]: sorted by variable, no zero exponents.
/// Ordered graded (exact rational total degree) then lexicographically with
/// lower variable indices more significant.
class Monomial {
 public:
  using Storage = boost::container::small_vector<VarExp, 3>;

  Monomial() = default;
  static Monomial variable(std::uint32_t var, QExponent exp);
  /// Entries need not be sorted; zero exponents are dropped, repeats merge.
  static Monomial from_entries(std::vector<VarExp> entries);

  const Storage& entries() const noexcept { return e_; }
  const QExponent& degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return e_.empty(); }
  QExponent exponent_of(std::uint32_t var) const;
  bool has_fractional_exponent() const;

  Monomial operator*(const Monomial& o) const;
  /// this / o when o divides this; false otherwise.
  bool divide(const Monomial& o, Monomial& out) const;
  Monomial scaled(int k) const;
  Monomial times(std::uint64_t m) const;

  std::strong_ordering operator<=>(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return e_ == o.e_; }

  std::size_t hash() const noexcept;
  std::string to_string() const;

 private:
  Storage e_;
  QExponent degree_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial mono;
  std::uint8_t coeff;
};

/// Upper bound on the term count of any intermediate result.
std::size_t term_limit();
void set_term_limit(std::size_t limit);

/// Sparse polynomial over F_q with exponents in N[1/q]: an element of the
/// perfect-closure monoid algebra. Terms are kept strictly descending in the
/// monomial order with no zero coefficients, so equality is structural.
class Poly {
 public:
  explicit Poly(FieldRef field);
  Poly(FieldRef field, std::vector<Term> terms);  // arbitrary order, may repeat

  static Poly zero(const FieldRef& f) { return Poly(f); }
  static Poly one(const FieldRef& f) { return constant(FieldElement::one(f)); }
  static Poly constant(const FieldElement& c);
  static Poly variable(const FieldRef& f, std::uint32_t var);
  static Poly monomial(const FieldRef& f, Monomial m, std::uint8_t coeff = 1);

  /// Text format: "c*x^2*y + [1,1]*z^{1/2} + 1"; see to_string().
  static Poly parse(const FieldRef& f, std::string_view text);

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const noexcept;
  const Term& leading() const;
  FieldElement leading_coeff() const { return {field_, leading().coeff}; }
  FieldElement coeff_of(const Monomial& m) const;

  bool has_fractional_exponent() const;
  /// Total degree when homogeneous; false otherwise (or for zero).
  bool homogeneous_degree(QExponent& out) const;
  /// Largest variable index used plus one (0 for constants).
  std::uint32_t variable_bound() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElement& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly mul_monomial(const Monomial& m, std::uint8_t coeff) const;

  bool operator==(const Poly& o) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  void check_same(const Poly& o) const;

  FieldRef field_;
  std::vector<Term> terms_;
};

/// Hash-based sum of many products; the result is sorted once at the end.
class PolyAccumulator {
 public:
  explicit PolyAccumulator(FieldRef field) : field_(std::move(field)) {}
  void add(const Monomial& m, std::uint8_t c);
  void add(const Poly& p);
  void add_product(const Poly& a, const Poly& b);
  void add_scaled(const Poly& p, const Monomial& m, std::uint8_t c);
  Poly take();

 private:
  FieldRef field_;
  std::unordered_map<Monomial, std::uint8_t, MonomialHash> acc_;
};

Poly frobenius(const Poly& a, int k);

/// c with b*c == a; throws NotDivisible if a nonzero remainder survives.
Poly exact_div(const Poly& a, const Poly& b);

/// a^m via base-q digits: a^m = prod_i frobenius(a^{d_i}, i).
Poly pow(const Poly& a, std::uint64_t m);

/// F-algebra morphism sending universal variable x_{i+1} to images[i].
/// The input must have integer exponents and use only universal variables
/// below images.size().
Poly evaluate_morphism(const Poly& p, std::span<const Poly> images);

/// An element of A[t] with exponents of t in N[1/q].
class UniPoly {
 public:
  explicit UniPoly(FieldRef field) : field_(std::move(field)) {}
  static UniPoly t(const FieldRef& f);
  static UniPoly constant(const Poly& c);

  const FieldRef& field() const noexcept { return field_; }
  const std::map<QExponent, Poly, std::greater<>>& coeffs() const noexcept { return coeffs_; }
  void set(const QExponent& e, const Poly& c);
  Poly coeff(const QExponent& e) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  bool operator==(const UniPoly& o) const;

  std::string to_string() const;

 private:
  FieldRef field_;
  std::map<QExponent, Poly, std::greater<>> coeffs_;
};

Poly unipoly_eval(const UniPoly& f, const Poly& v);
bool unipoly_is_q_poly(const UniPoly& f);

}  // namespace qschur
