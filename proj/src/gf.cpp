#include "qschur/gf.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace qschur {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::FractionalExponent: return "FractionalExponent";
    case ErrorKind::TermLimit: return "TermLimit";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::LengthExceeded: return "LengthExceeded";
    case ErrorKind::NotFullColumn: return "NotFullColumn";
    case ErrorKind::NotVerticalStrip: return "NotVerticalStrip";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::WindowInvalid: return "WindowInvalid";
    case ErrorKind::IndexNotDecreasing: return "IndexNotDecreasing";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NotQPolynomial: return "NotQPolynomial";
    case ErrorKind::NotSubspace: return "NotSubspace";
    case ErrorKind::DimensionDrop: return "DimensionDrop";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::LengthTooLong: return "LengthTooLong";
    case ErrorKind::NotALine: return "NotALine";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using FpPoly = std::vector<unsigned>;  // low-to-high, over F_p

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b.
FpPoly fp_mod(FpPoly a, const FpPoly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
    trim(a);
  }
  return a;
}

// Every monic polynomial of degree d over F_p, by counting in base p.
bool has_monic_factor_of_degree(const FpPoly& f, unsigned d, unsigned p) {
  FpPoly g(d + 1, 0);
  g[d] = 1;
  unsigned long long count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  for (unsigned long long c = 0; c < count; ++c) {
    unsigned long long rest = c;
    for (unsigned i = 0; i < d; ++i) {
      g[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    if (fp_mod(f, g, p).empty()) return true;
  }
  return false;
}

bool is_irreducible(const FpPoly& f, unsigned p) {
  const unsigned e = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= e / 2; ++d)
    if (has_monic_factor_of_degree(f, d, p)) return false;
  return true;
}

unsigned parse_uint(std::string_view s, std::string_view whole) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::ParseError, "bad field spec '" + std::string(whole) + "'");
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<unsigned> Field::builtin_modulus(unsigned p, unsigned e) {
  if (p == 2 && e == 2) return {1, 1, 1};
  if (p == 2 && e == 3) return {1, 1, 0, 1};
  if (p == 2 && e == 4) return {1, 1, 0, 0, 1};
  if (p == 3 && e == 2) return {1, 0, 1};
  if (p == 3 && e == 3) return {1, 2, 0, 1};
  if (p == 5 && e == 2) return {2, 0, 1};
  return {};
}

FieldRef Field::make(unsigned p, unsigned e, std::vector<unsigned> modulus, unsigned ceiling) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorKind::InvalidField, "extension degree must be >= 1");
  unsigned long long q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > ceiling) break;
  }
  if (q > ceiling || q > 256)
    throw Error(ErrorKind::InvalidField, "field size exceeds ceiling " + std::to_string(ceiling));
  if (e == 1) {
    if (!modulus.empty() && modulus.size() != 2)
      throw Error(ErrorKind::InvalidField, "prime field takes no modulus");
    modulus.clear();
  } else {
    if (modulus.empty()) modulus = builtin_modulus(p, e);
    if (modulus.empty())
      throw Error(ErrorKind::InvalidField, "no built-in modulus for q=" + std::to_string(q));
    if (modulus.size() != e + 1 || modulus.back() % p != 1)
      throw Error(ErrorKind::InvalidField, "modulus must be monic of degree " + std::to_string(e));
    for (auto& c : modulus) c %= p;
    if (!is_irreducible(modulus, p)) throw Error(ErrorKind::InvalidField, "modulus is reducible over F_p");
  }
  return FieldRef(new Field(p, e, std::move(modulus)));
}

Field::Field(unsigned p, unsigned e, std::vector<unsigned> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < e_; ++i) q_ *= p_;
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    const auto ca = coords(static_cast<std::uint8_t>(a));
    std::vector<unsigned> cn(e_);
    for (unsigned i = 0; i < e_; ++i) cn[i] = (p_ - ca[i]) % p_;
    neg_[a] = from_coords(cn);
    for (unsigned b = 0; b < q_; ++b) {
      const auto cb = coords(static_cast<std::uint8_t>(b));
      std::vector<unsigned> cs(e_);
      for (unsigned i = 0; i < e_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
      add_[a * q_ + b] = from_coords(cs);
      FpPoly prod(2 * e_, 0);
      for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      if (e_ > 1) prod = fp_mod(prod, modulus_, p_);
      prod.resize(e_, 0);
      mul_[a * q_ + b] = from_coords(prod);
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
}

std::uint8_t Field::inv(std::uint8_t a) const {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  return inv_[a];
}

std::uint8_t Field::pow(std::uint8_t a, std::uint64_t m) const {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  while (m > 0) {
    if (m & 1) result = mul(result, base);
    base = mul(base, base);
    m >>= 1;
  }
  return result;
}

std::uint8_t Field::from_integer(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint8_t>(r);
}

std::vector<unsigned> Field::coords(std::uint8_t code) const {
  std::vector<unsigned> c(e_);
  unsigned rest = code;
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = rest % p_;
    rest /= p_;
  }
  return c;
}

std::uint8_t Field::from_coords(const std::vector<unsigned>& coords) const {
  unsigned code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) code = code * p_ + coords[i] % p_;
  return static_cast<std::uint8_t>(code);
}

std::string Field::format(std::uint8_t code) const {
  if (e_ == 1) return std::to_string(code);
  std::string s = "[";
  const auto c = coords(code);
  for (unsigned i = 0; i < e_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

std::string Field::describe() const {
  if (e_ == 1) return "q=" + std::to_string(p_);
  std::ostringstream out;
  out << "q=" << p_ << "^" << e_ << ":";
  for (std::size_t i = 0; i < modulus_.size(); ++i) out << (i ? "," : "") << modulus_[i];
  return out.str();
}

FieldRef Field::parse(std::string_view text, unsigned ceiling) {
  const std::string_view whole = text;
  text = strip(text);
  if (text.substr(0, 2) != "q=") throw Error(ErrorKind::ParseError, "field spec must start with 'q=': '" + std::string(whole) + "'");
  text.remove_prefix(2);
  std::vector<unsigned> modulus;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    std::string_view mod = text.substr(colon + 1);
    text = text.substr(0, colon);
    while (!mod.empty()) {
      auto comma = mod.find(',');
      modulus.push_back(parse_uint(strip(mod.substr(0, comma)), whole));
      if (comma == std::string_view::npos) break;
      mod.remove_prefix(comma + 1);
    }
  }
  unsigned p = 0;
  unsigned e = 1;
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    p = parse_uint(strip(text.substr(0, caret)), whole);
    e = parse_uint(strip(text.substr(caret + 1)), whole);
  } else {
    const unsigned q = parse_uint(strip(text), whole);
    // q given as a bare prime power
    for (unsigned d = 2; d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) throw Error(ErrorKind::InvalidField, "q must be a prime power");
    unsigned rest = q;
    e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (rest != 1) throw Error(ErrorKind::InvalidField, std::to_string(q) + " is not a prime power");
  }
  if (!modulus.empty() && e == 1 && modulus.size() == 2) modulus.clear();
  return make(p, e, std::move(modulus), ceiling);
}

bool same_field(const FieldRef& a, const FieldRef& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

FieldElement::FieldElement(FieldRef field, std::uint8_t code) : field_(std::move(field)), code_(code) {
  if (!field_) throw Error(ErrorKind::InvalidArgument, "field element without a field");
  if (code_ >= field_->q()) throw Error(ErrorKind::InvalidArgument, "field element code out of range");
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (!same_field(field_, o.field_)) throw Error(ErrorKind::SpecMismatch, "field elements from different fields");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, checked(o).add(code_, o.code_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, checked(o).sub(code_, o.code_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, checked(o).mul(code_, o.code_)}; }

std::vector<FieldElement> field_enumerate(const FieldRef& field) {
  std::vector<FieldElement> out;
  out.reserve(field->q());
  for (unsigned c = 0; c < field->q(); ++c) out.emplace_back(field, static_cast<std::uint8_t>(c));
  return out;
}

FieldElement wilson_product(const FieldRef& field) {
  std::uint8_t acc = 1;
  for (unsigned c = 1; c < field->q(); ++c) acc = field->mul(acc, static_cast<std::uint8_t>(c));
  return {field, acc};
}

FieldElement power_sum(const FieldRef& field, std::uint64_t i) {
  std::uint8_t acc = 0;
  for (unsigned c = 0; c < field->q(); ++c) {
    const std::uint8_t term = (i == 0) ? 1 : field->pow(static_cast<std::uint8_t>(c), i);
    acc = field->add(acc, term);
  }
  return {field, acc};
}

}  // namespace qschur
