#include "qschur/ppoly.hpp"

#include "packed.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <limits>

namespace qschur {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > (~static_cast<u128>(0)) / a) throw Error(ErrorKind::Overflow, "exponent arithmetic overflow");
  return a * b;
}

u128 q_power(unsigned q, std::uint32_t k) {
  u128 r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r = checked_mul(r, q);
  return r;
}

unsigned common_base(unsigned a, unsigned b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw Error(ErrorKind::SpecMismatch, "exponents over different q");
}

std::uint64_t narrow(u128 v) {
  if (v > kU64Max) throw Error(ErrorKind::Overflow, "exponent does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::atomic<std::size_t> g_term_limit{2'000'000};

void guard_terms(std::size_t n) {
  if (n > g_term_limit.load(std::memory_order_relaxed))
    throw Error(ErrorKind::TermLimit, "intermediate result exceeds " + std::to_string(g_term_limit.load()) + " terms");
}

}  // namespace

std::size_t term_limit() { return g_term_limit.load(); }
void set_term_limit(std::size_t limit) { g_term_limit.store(limit); }

// ---------------------------------------------------------------- QExponent

QExponent QExponent::make(std::uint64_t num, std::uint32_t dpow, unsigned q) {
  QExponent r;
  r.q_ = q;
  if (num == 0) return r;
  if (dpow > 0 && q < 2) throw Error(ErrorKind::InvalidArgument, "fractional exponent without a base q");
  while (dpow > 0 && num % q == 0) {
    num /= q;
    --dpow;
  }
  r.num_ = num;
  r.dpow_ = dpow;
  return r;
}

QExponent QExponent::operator+(const QExponent& o) const {
  const unsigned q = common_base(q_, o.q_);
  if (dpow_ == o.dpow_) {
    const u128 s = static_cast<u128>(num_) + o.num_;
    return make(narrow(s), dpow_, q);
  }
  const std::uint32_t d = std::max(dpow_, o.dpow_);
  const u128 s = checked_mul(num_, q_power(q, d - dpow_)) + checked_mul(o.num_, q_power(q, d - o.dpow_));
  // Only one side was rescaled, so the sum is not divisible by q^(d) wholesale;
  // make() still normalizes the common case where it is.
  u128 v = s;
  std::uint32_t dp = d;
  while (dp > 0 && v % q == 0) {
    v /= q;
    --dp;
  }
  return make(narrow(v), dp, q);
}

QExponent QExponent::operator-(const QExponent& o) const {
  const unsigned q = common_base(q_, o.q_);
  const std::uint32_t d = std::max(dpow_, o.dpow_);
  const u128 a = dpow_ == d ? num_ : checked_mul(num_, q_power(q, d - dpow_));
  const u128 b = o.dpow_ == d ? o.num_ : checked_mul(o.num_, q_power(q, d - o.dpow_));
  if (b > a) throw Error(ErrorKind::InvalidArgument, "negative exponent difference");
  u128 v = a - b;
  std::uint32_t dp = d;
  if (v == 0) return make(0, 0, q);
  while (dp > 0 && v % q == 0) {
    v /= q;
    --dp;
  }
  return make(narrow(v), dp, q);
}

QExponent QExponent::scaled(int k) const {
  if (num_ == 0 || k == 0) return *this;
  if (q_ < 2) throw Error(ErrorKind::InvalidArgument, "Frobenius scaling of an exponent without base q");
  if (k > 0) {
    const auto uk = static_cast<std::uint32_t>(k);
    if (dpow_ >= uk) return make(num_, dpow_ - uk, q_);
    return make(narrow(checked_mul(num_, q_power(q_, uk - dpow_))), 0, q_);
  }
  return make(num_, dpow_ + static_cast<std::uint32_t>(-k), q_);
}

QExponent QExponent::times(std::uint64_t m) const {
  if (m == 0 || num_ == 0) return make(0, 0, q_);
  if (dpow_ == 0) return make(narrow(checked_mul(num_, m)), 0, q_);
  return make(narrow(checked_mul(num_, m)), dpow_, q_);
}

bool QExponent::is_q_power() const {
  if (dpow_ != 0 || num_ == 0) return false;
  if (num_ == 1) return true;
  if (q_ < 2) return false;
  std::uint64_t v = num_;
  while (v % q_ == 0) v /= q_;
  return v == 1;
}

std::strong_ordering QExponent::operator<=>(const QExponent& o) const {
  if (dpow_ == o.dpow_) return num_ <=> o.num_;
  const unsigned q = common_base(q_, o.q_);
  const std::uint32_t d = std::max(dpow_, o.dpow_);
  const u128 a = dpow_ == d ? num_ : checked_mul(num_, q_power(q, d - dpow_));
  const u128 b = o.dpow_ == d ? o.num_ : checked_mul(o.num_, q_power(q, d - o.dpow_));
  return a <=> b;
}

std::string QExponent::to_string() const {
  if (dpow_ == 0) return std::to_string(num_);
  std::string s = std::to_string(num_) + "/" + std::to_string(q_);
  if (dpow_ > 1) s += "^" + std::to_string(dpow_);
  return s;
}

// ---------------------------------------------------------------- variables

namespace {
constexpr const char* kAmbientNames[kAmbientVars] = {"x", "y", "z", "w", "v", "u", "s", "r"};
}

std::string variable_name(std::uint32_t var) {
  if (var < kAmbientVars) return kAmbientNames[var];
  if (is_universal_var(var) && var < kUniversalBase + kUniversalVars) return "x" + std::to_string(var - kUniversalBase + 1);
  return "?" + std::to_string(var);
}

bool variable_index(std::string_view name, std::uint32_t& out) {
  for (std::uint32_t i = 0; i < kAmbientVars; ++i)
    if (name == kAmbientNames[i]) {
      out = i;
      return true;
    }
  if (name.size() >= 2 && name[0] == 'x') {
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
    if (ec == std::errc() && ptr == name.data() + name.size() && k >= 1 && k <= kUniversalVars) {
      out = universal_var(k - 1);
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::uint32_t var, QExponent exp) {
  Monomial m;
  if (!exp.is_zero()) {
    m.e_.push_back({var, exp});
    m.degree_ = exp;
  }
  return m;
}

Monomial Monomial::from_entries(std::vector<VarExp> entries) {
  std::sort(entries.begin(), entries.end(), [](const VarExp& a, const VarExp& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& ve : entries) {
    if (!m.e_.empty() && m.e_.back().var == ve.var) {
      m.e_.back().exp = m.e_.back().exp + ve.exp;
    } else {
      m.e_.push_back(ve);
    }
  }
  m.e_.erase(std::remove_if(m.e_.begin(), m.e_.end(), [](const VarExp& v) { return v.exp.is_zero(); }), m.e_.end());
  for (const auto& ve : m.e_) m.degree_ = m.degree_ + ve.exp;
  return m;
}

QExponent Monomial::exponent_of(std::uint32_t var) const {
  for (const auto& ve : e_)
    if (ve.var == var) return ve.exp;
  return {};
}

bool Monomial::has_fractional_exponent() const {
  return std::any_of(e_.begin(), e_.end(), [](const VarExp& v) { return !v.exp.is_integer(); });
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.e_.empty()) return *this;
  if (e_.empty()) return o;
  Monomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  auto a = e_.begin();
  auto b = o.e_.begin();
  while (a != e_.end() && b != o.e_.end()) {
    if (a->var == b->var) {
      r.e_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    } else if (a->var < b->var) {
      r.e_.push_back(*a++);
    } else {
      r.e_.push_back(*b++);
    }
  }
  r.e_.insert(r.e_.end(), a, e_.end());
  r.e_.insert(r.e_.end(), b, o.e_.end());
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divide(const Monomial& o, Monomial& out) const {
  Monomial r;
  auto a = e_.begin();
  for (const auto& ve : o.e_) {
    while (a != e_.end() && a->var < ve.var) r.e_.push_back(*a++);
    if (a == e_.end() || a->var != ve.var) return false;
    if (a->exp < ve.exp) return false;
    if (a->exp != ve.exp) r.e_.push_back({a->var, a->exp - ve.exp});
    ++a;
  }
  r.e_.insert(r.e_.end(), a, e_.end());
  r.degree_ = degree_ - o.degree_;
  out = std::move(r);
  return true;
}

Monomial Monomial::scaled(int k) const {
  Monomial r = *this;
  for (auto& ve : r.e_) ve.exp = ve.exp.scaled(k);
  r.degree_ = degree_.scaled(k);
  return r;
}

Monomial Monomial::times(std::uint64_t m) const {
  if (m == 0) return {};
  Monomial r = *this;
  for (auto& ve : r.e_) ve.exp = ve.exp.times(m);
  r.degree_ = degree_.times(m);
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (auto c = degree_ <=> o.degree_; c != 0) return c;
  auto a = e_.begin();
  auto b = o.e_.begin();
  while (a != e_.end() && b != o.e_.end()) {
    if (a->var != b->var) return a->var < b->var ? std::strong_ordering::greater : std::strong_ordering::less;
    if (auto c = a->exp <=> b->exp; c != 0) return c;
    ++a;
    ++b;
  }
  if (a != e_.end()) return std::strong_ordering::greater;
  if (b != o.e_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& ve : e_) {
    h ^= ve.var;
    h *= 1099511628211ull;
    h ^= ve.exp.num();
    h *= 1099511628211ull;
    h ^= ve.exp.dpow();
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& ve : e_) {
    if (!s.empty()) s += '*';
    s += variable_name(ve.var);
    if (ve.exp.is_integer()) {
      if (ve.exp.num() != 1) s += "^" + std::to_string(ve.exp.num());
    } else {
      s += "^{" + ve.exp.to_string() + "}";
    }
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(FieldRef field) : field_(std::move(field)) {
  if (!field_) throw Error(ErrorKind::InvalidArgument, "polynomial without a field");
}

Poly::Poly(FieldRef field, std::vector<Term> terms) : Poly(std::move(field)) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = field_->add(terms_.back().coeff, t.coeff);
    } else {
      if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
}

Poly Poly::constant(const FieldElement& c) {
  Poly p(c.field());
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c.code()});
  return p;
}

Poly Poly::variable(const FieldRef& f, std::uint32_t var) {
  return monomial(f, Monomial::variable(var, QExponent::integer(1, f->q())), 1);
}

Poly Poly::monomial(const FieldRef& f, Monomial m, std::uint8_t coeff) {
  Poly p(f);
  if (coeff != 0) p.terms_.push_back({std::move(m), coeff});
  return p;
}

bool Poly::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

const Term& Poly::leading() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "leading term of zero polynomial");
  return terms_.front();
}

FieldElement Poly::coeff_of(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono > x; });
  if (it != terms_.end() && it->mono == m) return {field_, it->coeff};
  return FieldElement::zero(field_);
}

bool Poly::has_fractional_exponent() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.has_fractional_exponent(); });
}

bool Poly::homogeneous_degree(QExponent& out) const {
  if (terms_.empty()) return false;
  out = terms_.front().mono.degree();
  return terms_.back().mono.degree() == out;
}

std::uint32_t Poly::variable_bound() const {
  std::uint32_t b = 0;
  for (const auto& t : terms_)
    for (const auto& ve : t.mono.entries()) b = std::max(b, ve.var + 1);
  return b;
}

void Poly::check_same(const Poly& o) const {
  if (!same_field(field_, o.field_)) throw Error(ErrorKind::SpecMismatch, "polynomials over different fields");
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Poly r(field_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    const auto c = a->mono <=> b->mono;
    if (c == 0) {
      const std::uint8_t s = field_->add(a->coeff, b->coeff);
      if (s != 0) r.terms_.push_back({a->mono, s});
      ++a;
      ++b;
    } else if (c > 0) {
      r.terms_.push_back(*a++);
    } else {
      r.terms_.push_back(*b++);
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = field_->neg(t.coeff);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_monomial(const Monomial& m, std::uint8_t coeff) const {
  Poly r(field_);
  if (coeff == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field_->mul(t.coeff, coeff)});
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  if (terms_.empty() || o.terms_.empty()) return Poly(field_);
  if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_monomial(terms_[0].mono, terms_[0].coeff);
  if (auto plan = detail::plan_for(*this, o)) {
    if (plan->words == 1) {
      if (auto dense = detail::dense_product<std::uint64_t>(*this, o, *plan)) return *std::move(dense);
    }
    return plan->words == 1 ? detail::packed_product<std::uint64_t>(*this, o, *plan, guard_terms)
                            : detail::packed_product<detail::u128>(*this, o, *plan, guard_terms);
  }
  PolyAccumulator acc(field_);
  acc.add_product(*this, o);
  return acc.take();
}

Poly Poly::operator*(const FieldElement& c) const {
  if (!same_field(field_, c.field())) throw Error(ErrorKind::SpecMismatch, "scalar from a different field");
  return mul_monomial(Monomial{}, c.code());
}

bool Poly::operator==(const Poly& o) const {
  if (!same_field(field_, o.field_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  return true;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    if (t.mono.is_one()) {
      s += field_->format(t.coeff);
    } else if (t.coeff == 1) {
      s += t.mono.to_string();
    } else {
      s += field_->format(t.coeff) + "*" + t.mono.to_string();
    }
  }
  return s;
}

std::size_t Poly::hash() const noexcept {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 1000003u ^ (t.mono.hash() + t.coeff);
  return h;
}

// ---------------------------------------------------------------- accumulator

void PolyAccumulator::add(const Monomial& m, std::uint8_t c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second = field_->add(it->second, c);
}

void PolyAccumulator::add(const Poly& p) {
  for (const auto& t : p.terms()) add(t.mono, t.coeff);
}

void PolyAccumulator::add_scaled(const Poly& p, const Monomial& m, std::uint8_t c) {
  if (c == 0) return;
  for (const auto& t : p.terms()) add(t.mono * m, field_->mul(t.coeff, c));
}

void PolyAccumulator::add_product(const Poly& a, const Poly& b) {
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  acc_.reserve(acc_.size() + std::min<std::size_t>(small.size() * big.size(), 1u << 22));
  for (const auto& s : small.terms()) {
    add_scaled(big, s.mono, s.coeff);
    guard_terms(acc_.size());
  }
}

Poly PolyAccumulator::take() {
  std::vector<Term> terms;
  terms.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (c != 0) terms.push_back({m, c});
  acc_.clear();
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return Poly(field_, std::move(terms));
}

// ---------------------------------------------------------------- operations

Poly frobenius(const Poly& a, int k) {
  if (k == 0 || a.is_zero()) return a;
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.mono.scaled(k), t.coeff});
  // Scaling every exponent by q^k keeps the order, so the terms stay sorted.
  return Poly(a.field(), std::move(terms));
}

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::SpecMismatch, "polynomials over different fields");
  const FieldRef& f = a.field();
  const Term& lead = b.leading();
  const std::uint8_t inv_lead = f->inv(lead.coeff);
  if (b.size() == 1) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      Monomial m;
      if (!t.mono.divide(lead.mono, m))
        throw Error(ErrorKind::NotDivisible, "monomial divisor does not divide " + t.mono.to_string());
      out.push_back({std::move(m), f->mul(t.coeff, inv_lead)});
    }
    return Poly(f, std::move(out));
  }
  if (auto plan = detail::plan_for(a, b)) {
    auto quotient = plan->words == 1 ? detail::packed_divide<std::uint64_t>(a, b, *plan, guard_terms)
                                     : detail::packed_divide<detail::u128>(a, b, *plan, guard_terms);
    if (!quotient) throw Error(ErrorKind::NotDivisible, "a nonzero remainder survives");
    return *std::move(quotient);
  }
  std::map<Monomial, std::uint8_t, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    Monomial qm;
    if (!it->first.divide(lead.mono, qm))
      throw Error(ErrorKind::NotDivisible, "remainder term " + it->first.to_string() + " survives");
    const std::uint8_t qc = f->mul(it->second, inv_lead);
    rem.erase(it);
    for (std::size_t i = 1; i < b.size(); ++i) {
      const Term& bt = b.terms()[i];
      const std::uint8_t c = f->neg(f->mul(qc, bt.coeff));
      auto [pos, inserted] = rem.try_emplace(bt.mono * qm, c);
      if (!inserted) {
        pos->second = f->add(pos->second, c);
        if (pos->second == 0) rem.erase(pos);
      }
    }
    quotient.push_back({std::move(qm), qc});
    guard_terms(quotient.size() + rem.size());
  }
  return Poly(f, std::move(quotient));
}

namespace {
Poly small_pow(const Poly& a, unsigned d) {
  Poly result = Poly::one(a.field());
  Poly base = a;
  while (d > 0) {
    if (d & 1) result = result * base;
    d >>= 1;
    if (d) base = base * base;
  }
  return result;
}
}  // namespace

Poly pow(const Poly& a, std::uint64_t m) {
  const FieldRef& f = a.field();
  if (m == 0) return Poly::one(f);
  if (a.is_zero()) return a;
  if (a.size() == 1) {
    const Term& t = a.leading();
    return Poly::monomial(f, t.mono.times(m), f->pow(t.coeff, m));
  }
  const unsigned q = f->q();
  Poly result = Poly::one(f);
  int digit_index = 0;
  while (m > 0) {
    const unsigned d = static_cast<unsigned>(m % q);
    if (d != 0) result = result * frobenius(small_pow(a, d), digit_index);
    m /= q;
    ++digit_index;
  }
  return result;
}

Poly evaluate_morphism(const Poly& p, std::span<const Poly> images) {
  const FieldRef& f = p.field();
  for (const auto& im : images)
    if (!same_field(f, im.field())) throw Error(ErrorKind::SpecMismatch, "morphism images over a different field");
  std::map<std::pair<std::uint32_t, std::uint64_t>, Poly> power_cache;
  auto power = [&](std::uint32_t idx, std::uint64_t e) -> const Poly& {
    auto key = std::make_pair(idx, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) it = power_cache.emplace(key, pow(images[idx], e)).first;
    return it->second;
  };
  PolyAccumulator acc(f);
  for (const auto& t : p.terms()) {
    Poly value = Poly::monomial(f, Monomial{}, t.coeff);
    for (const auto& ve : t.mono.entries()) {
      if (!ve.exp.is_integer())
        throw Error(ErrorKind::FractionalExponent, "cannot substitute into " + t.mono.to_string());
      if (!is_universal_var(ve.var) || ve.var - kUniversalBase >= images.size())
        throw Error(ErrorKind::InvalidArgument, "variable " + variable_name(ve.var) + " has no image");
      value = value * power(ve.var - kUniversalBase, ve.exp.num());
    }
    acc.add(value);
  }
  return acc.take();
}

// ---------------------------------------------------------------- UniPoly

UniPoly UniPoly::t(const FieldRef& f) {
  UniPoly u(f);
  u.coeffs_.emplace(QExponent::integer(1, f->q()), Poly::one(f));
  return u;
}

UniPoly UniPoly::constant(const Poly& c) {
  UniPoly u(c.field());
  u.set(QExponent::integer(0, c.field()->q()), c);
  return u;
}

void UniPoly::set(const QExponent& e, const Poly& c) {
  if (c.is_zero()) {
    coeffs_.erase(e);
  } else {
    coeffs_.insert_or_assign(e, c);
  }
}

Poly UniPoly::coeff(const QExponent& e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Poly(field_) : it->second;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r = *this;
  for (const auto& [e, c] : o.coeffs_) r.set(e, r.coeff(e) + c);
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  UniPoly r(field_);
  for (const auto& [ea, ca] : coeffs_)
    for (const auto& [eb, cb] : o.coeffs_) {
      const QExponent e = ea + eb;
      r.set(e, r.coeff(e) + ca * cb);
    }
  return r;
}

bool UniPoly::operator==(const UniPoly& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  auto a = coeffs_.begin();
  auto b = o.coeffs_.begin();
  for (; a != coeffs_.end(); ++a, ++b)
    if (!(a->first == b->first) || !(a->second == b->second)) return false;
  return true;
}

std::string UniPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : coeffs_) {
    if (!s.empty()) s += " + ";
    std::string tpart;
    if (!e.is_zero()) {
      tpart = "t";
      if (!e.is_integer())
        tpart += "^{" + e.to_string() + "}";
      else if (e.num() != 1)
        tpart += "^" + std::to_string(e.num());
    }
    if (tpart.empty()) {
      s += c.size() == 1 ? c.to_string() : "(" + c.to_string() + ")";
    } else if (c.is_one()) {
      s += tpart;
    } else if (c.size() == 1) {
      s += c.to_string() + "*" + tpart;
    } else {
      s += "(" + c.to_string() + ")*" + tpart;
    }
  }
  return s;
}

Poly unipoly_eval(const UniPoly& f, const Poly& v) {
  if (!same_field(f.field(), v.field())) throw Error(ErrorKind::SpecMismatch, "evaluation point over a different field");
  PolyAccumulator acc(f.field());
  for (const auto& [e, c] : f.coeffs()) {
    Poly power(f.field());
    if (e.is_q_power()) {
      std::uint64_t n = e.num();
      int k = 0;
      while (n > 1) {
        n /= f.field()->q();
        ++k;
      }
      power = frobenius(v, k);
    } else if (e.is_integer()) {
      power = pow(v, e.num());
    } else {
      power = pow(frobenius(v, -static_cast<int>(e.dpow())), e.num());
    }
    acc.add_product(c, power);
  }
  return acc.take();
}

bool unipoly_is_q_poly(const UniPoly& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](const auto& kv) { return kv.first.is_q_power(); });
}

// ---------------------------------------------------------------- parsing

namespace {

class PolyParser {
 public:
  PolyParser(const FieldRef& f, std::string_view text) : f_(f), s_(text) {}

  Poly parse() {
    skip_ws();
    std::vector<Term> terms;
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    while (true) {
      Term t = term();
      if (negate) t.coeff = f_->neg(t.coeff);
      terms.push_back(std::move(t));
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      negate = (c == '-');
      ++pos_;
    }
    return Poly(f_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::uint64_t integer() {
    skip_ws();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::uint8_t coefficient() {
    if (peek() == '[') {
      ++pos_;
      std::vector<unsigned> coords;
      while (true) {
        coords.push_back(static_cast<unsigned>(integer() % f_->p()));
        const char c = peek();
        ++pos_;
        if (c == ']') break;
        if (c != ',') fail("expected ',' or ']'");
      }
      if (coords.size() != f_->e()) fail("coefficient needs " + std::to_string(f_->e()) + " coordinates");
      return f_->from_coords(coords);
    }
    return f_->from_integer(static_cast<long long>(integer() % f_->p()));
  }

  QExponent rational_exponent() {
    const std::uint64_t num = integer();
    if (peek() != '/') return QExponent::integer(num, f_->q());
    ++pos_;
    const std::uint64_t base = integer();
    std::uint64_t k = 1;
    if (peek() == '^') {
      ++pos_;
      k = integer();
    }
    u128 denom = 1;
    for (std::uint64_t i = 0; i < k; ++i) denom = checked_mul(denom, base);
    std::uint32_t dpow = 0;
    while (denom > 1) {
      if (denom % f_->q() != 0) fail("exponent denominator must be a power of q");
      denom /= f_->q();
      ++dpow;
    }
    return QExponent::make(num, dpow, f_->q());
  }

  QExponent exponent() {
    const char c = peek();
    if (c == '{' || c == '(') {
      ++pos_;
      QExponent e = rational_exponent();
      const char close = peek();
      if ((c == '{' && close != '}') || (c == '(' && close != ')')) fail("unbalanced exponent brackets");
      ++pos_;
      return e;
    }
    return QExponent::integer(integer(), f_->q());
  }

  Term term() {
    std::uint8_t coeff = 1;
    std::vector<VarExp> factors;
    bool any = false;
    while (true) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '[') {
        coeff = f_->mul(coeff, coefficient());
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string_view name = s_.substr(start, pos_ - start);
        std::uint32_t var = 0;
        if (!variable_index(name, var)) {
          pos_ = start;
          fail("unknown variable '" + std::string(name) + "'");
        }
        QExponent e = QExponent::integer(1, f_->q());
        if (peek() == '^') {
          ++pos_;
          e = exponent();
        }
        factors.push_back({var, e});
      } else {
        fail("expected a coefficient or variable");
      }
      any = true;
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    return {Monomial::from_entries(std::move(factors)), coeff};
  }

  const FieldRef& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const FieldRef& f, std::string_view text) {
  return PolyParser(f, text).parse();
}

}  // namespace qschur
