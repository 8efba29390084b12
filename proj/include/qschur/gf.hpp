#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qschur/error.hpp"

namespace qschur {

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^e, in a polynomial basis over F_p.
///
/// Elements are encoded as small integers: the code of
/// c_0 + c_1 t + ... + c_{e-1} t^{e-1} is c_0 + c_1 p + ... + c_{e-1} p^{e-1}.
/// Codes 0 and 1 are the additive and multiplicative identities, and the
/// code order is the deterministic enumeration order of the field.
/// Addition, multiplication and inversion go through precomputed q x q
/// tables, which is why q is capped (default 64).
class Field {
 public:
  static constexpr unsigned kDefaultCeiling = 64;

  /// `modulus` lists e+1 coefficients low-to-high of a monic polynomial;
  /// it must be empty when e == 1.
  static FieldRef make(unsigned p, unsigned e, std::vector<unsigned> modulus = {},
                       unsigned ceiling = kDefaultCeiling);
  static FieldRef prime(unsigned p) { return make(p, 1); }

  /// Parses "q=p", "q=p^e" / "q=N" (built-in modulus) or "q=p^e:c0,...,ce".
  static FieldRef parse(std::string_view text, unsigned ceiling = kDefaultCeiling);

  /// Built-in irreducible modulus for q in {4, 8, 9, 16, 25, 27}; empty otherwise.
  static std::vector<unsigned> builtin_modulus(unsigned p, unsigned e);

  unsigned p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  unsigned q() const noexcept { return q_; }
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
  /// Throws InvalidArgument on zero.
  std::uint8_t inv(std::uint8_t a) const;
  std::uint8_t pow(std::uint8_t a, std::uint64_t m) const;
  /// n * 1 for an integer n (reduced mod p).
  std::uint8_t from_integer(long long n) const;

  std::vector<unsigned> coords(std::uint8_t code) const;
  std::uint8_t from_coords(const std::vector<unsigned>& coords) const;

  /// "2" for prime fields, "[c0,c1,...]" otherwise.
  std::string format(std::uint8_t code) const;
  /// "q=p" or "q=p^e:c0,...,ce"; re-parses to an equal field.
  std::string describe() const;

  bool same_as(const Field& other) const noexcept {
    return this == &other || (p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_);
  }

 private:
  Field(unsigned p, unsigned e, std::vector<unsigned> modulus);

  unsigned p_;
  unsigned e_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
  std::vector<std::uint8_t> inv_;
};

bool same_field(const FieldRef& a, const FieldRef& b) noexcept;

/// A value in F_q together with its field.
class FieldElement {
 public:
  FieldElement(FieldRef field, std::uint8_t code);

  static FieldElement zero(const FieldRef& f) { return {f, 0}; }
  static FieldElement one(const FieldRef& f) { return {f, 1}; }

  const FieldRef& field() const noexcept { return field_; }
  std::uint8_t code() const noexcept { return code_; }
  std::vector<unsigned> coords() const { return field_->coords(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(std::uint64_t m) const { return {field_, field_->pow(code_, m)}; }

  bool operator==(const FieldElement& o) const noexcept {
    return code_ == o.code_ && same_field(field_, o.field_);
  }

  std::string to_string() const { return field_->format(code_); }

 private:
  const Field& checked(const FieldElement& o) const;

  FieldRef field_;
  std::uint8_t code_;
};

/// All q elements, 0 first, 1 second, then ascending code.
std::vector<FieldElement> field_enumerate(const FieldRef& field);

/// Product of all nonzero elements (equals -1).
FieldElement wilson_product(const FieldRef& field);

/// Sum over all a in F of a^i, with 0^0 = 1.
FieldElement power_sum(const FieldRef& field, std::uint64_t i);

}  // namespace qschur
