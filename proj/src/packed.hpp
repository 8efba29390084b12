#pragma once

// Packed-exponent kernels for the two hot loops, multiplication and exact
// division. All exponents of the operands are brought to a common
// denominator q^D and the numerators are laid out as bit fields of one
// machine word, total degree first, then variables by ascending index. With
// that layout integer comparison of keys is the graded-lex monomial order and
// monomial multiplication is key addition.

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include <absl/container/btree_map.h>
#include <absl/container/flat_hash_map.h>

#include "qschur/ppoly.hpp"

namespace qschur::detail {

using u128 = unsigned __int128;

struct PackPlan {
  std::vector<std::uint32_t> vars;  // ascending
  std::uint32_t dpow = 0;
  unsigned q = 0;
  unsigned bits = 0;
  unsigned words = 0;  // 1 for uint64_t keys, 2 for u128 keys
};

struct Extent {
  u128 max_degree = 0;
};

// Largest total degree, as a numerator over q^dpow.
inline std::optional<Extent> extent_of(const Poly& p, std::uint32_t dpow, unsigned q) {
  Extent ex;
  auto scale = [&](const QExponent& e) -> std::optional<u128> {
    u128 v = e.num();
    for (std::uint32_t i = e.dpow(); i < dpow; ++i) {
      v *= q;
      if (v >> 100) return std::nullopt;
    }
    return v;
  };
  for (const auto& t : p.terms()) {
    u128 deg = 0;
    for (const auto& ve : t.mono.entries()) {
      auto s = scale(ve.exp);
      if (!s) return std::nullopt;
      deg += *s;
    }
    ex.max_degree = std::max(ex.max_degree, deg);
  }
  return ex;
}

// Key layout for an operation on a and b; nullopt when one or two 64-bit words
// cannot hold every field.
inline std::optional<PackPlan> plan_for(const Poly& a, const Poly& b) {
  PackPlan plan;
  plan.q = a.field()->q();
  for (const Poly* p : {&a, &b})
    for (const auto& t : p->terms())
      for (const auto& ve : t.mono.entries()) {
        plan.dpow = std::max(plan.dpow, ve.exp.dpow());
        plan.vars.push_back(ve.var);
      }
  std::sort(plan.vars.begin(), plan.vars.end());
  plan.vars.erase(std::unique(plan.vars.begin(), plan.vars.end()), plan.vars.end());
  auto ea = extent_of(a, plan.dpow, plan.q);
  auto eb = extent_of(b, plan.dpow, plan.q);
  if (!ea || !eb) return std::nullopt;
  // Any factor, quotient or intermediate remainder monomial has every field
  // bounded by the sum of the two total degrees.
  const u128 bound = ea->max_degree + eb->max_degree;
  if (bound >> 64) return std::nullopt;
  plan.bits = std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(bound))));
  const unsigned fields = static_cast<unsigned>(plan.vars.size()) + 1;
  if (fields * plan.bits <= 64)
    plan.words = 1;
  else if (fields * plan.bits <= 128)
    plan.words = 2;
  else
    return std::nullopt;
  return plan;
}

template <class Key>
class Packer {
 public:
  explicit Packer(const PackPlan& plan) : plan_(plan), field_mask_((Key{1} << plan.bits) - 1) {}

  Key encode(const Monomial& m) const {
    Key key = 0;
    Key deg = 0;
    std::size_t slot = 0;
    for (const auto& ve : m.entries()) {
      while (plan_.vars[slot] != ve.var) ++slot;
      Key v = ve.exp.num();
      for (std::uint32_t i = ve.exp.dpow(); i < plan_.dpow; ++i) v *= plan_.q;
      deg += v;
      key |= v << shift_of(slot);
    }
    return key | (deg << shift_of_degree());
  }

  Monomial decode(Key key) const {
    std::vector<VarExp> entries;
    entries.reserve(plan_.vars.size());
    for (std::size_t slot = 0; slot < plan_.vars.size(); ++slot) {
      const Key v = (key >> shift_of(slot)) & field_mask_;
      if (v != 0)
        entries.push_back({plan_.vars[slot], QExponent::make(static_cast<std::uint64_t>(v), plan_.dpow, plan_.q)});
    }
    return Monomial::from_entries(std::move(entries));
  }

  // Whether the monomial `divisor` divides `key`, field by field.
  bool divides(Key divisor, Key key) const {
    for (std::size_t slot = 0; slot < plan_.vars.size(); ++slot) {
      const unsigned s = shift_of(slot);
      if (((divisor >> s) & field_mask_) > ((key >> s) & field_mask_)) return false;
    }
    return true;
  }

 private:
  unsigned shift_of(std::size_t slot) const {
    return static_cast<unsigned>(plan_.vars.size() - 1 - slot) * plan_.bits;
  }
  unsigned shift_of_degree() const { return static_cast<unsigned>(plan_.vars.size()) * plan_.bits; }

  const PackPlan& plan_;
  Key field_mask_;
};

struct U128Hash {
  std::size_t operator()(u128 v) const noexcept {
    return absl::Hash<std::uint64_t>{}(static_cast<std::uint64_t>(v) ^ static_cast<std::uint64_t>(v >> 64) * 0x9E3779B97F4A7C15ull);
  }
};

template <class Key>
using KeyHash = std::conditional_t<std::is_same_v<Key, u128>, U128Hash, absl::Hash<Key>>;

template <class Key>
Poly packed_product(const Poly& a, const Poly& b, const PackPlan& plan, void (*guard)(std::size_t)) {
  const Packer<Key> pk(plan);
  const FieldRef& f = a.field();
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  std::vector<Key> big_keys;
  big_keys.reserve(big.size());
  for (const auto& t : big.terms()) big_keys.push_back(pk.encode(t.mono));
  absl::flat_hash_map<Key, std::uint8_t, KeyHash<Key>> acc;
  acc.reserve(std::min<std::size_t>(small.size() * big.size(), 1u << 22));
  for (const auto& s : small.terms()) {
    const Key sk = pk.encode(s.mono);
    for (std::size_t i = 0; i < big_keys.size(); ++i) {
      const std::uint8_t c = f->mul(s.coeff, big.terms()[i].coeff);
      auto [it, inserted] = acc.try_emplace(sk + big_keys[i], c);
      if (!inserted) it->second = f->add(it->second, c);
    }
    guard(acc.size());
  }
  std::vector<std::pair<Key, std::uint8_t>> sorted;
  sorted.reserve(acc.size());
  for (const auto& kv : acc)
    if (kv.second != 0) sorted.push_back(kv);
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Term> terms;
  terms.reserve(sorted.size());
  for (const auto& [k, c] : sorted) terms.push_back({pk.decode(k), c});
  return Poly(f, std::move(terms));
}

// Product accumulated in a dense array indexed by the mixed-radix value of
// the exponent vector, so monomial multiplication is index addition. Only
// used when both factors are homogeneous (the last variable is then implied
// by the degree) and the index space is small relative to the work; returns
// nullopt otherwise.
template <class Key>
std::optional<Poly> dense_product(const Poly& a, const Poly& b, const PackPlan& plan) {
  const std::size_t k = plan.vars.size();
  if (k < 2) return std::nullopt;
  QExponent da, db;
  if (!a.homogeneous_degree(da) || !b.homogeneous_degree(db)) return std::nullopt;
  const Packer<Key> pk(plan);
  const unsigned bits = plan.bits;
  const Key mask = (Key{1} << bits) - 1;
  auto field = [&](Key key, std::size_t slot) {
    return static_cast<std::uint64_t>((key >> (static_cast<unsigned>(k - 1 - slot) * bits)) & mask);
  };
  std::vector<Key> ka, kb;
  ka.reserve(a.size());
  kb.reserve(b.size());
  for (const auto& t : a.terms()) ka.push_back(pk.encode(t.mono));
  for (const auto& t : b.terms()) kb.push_back(pk.encode(t.mono));
  std::vector<std::uint64_t> max_a(k - 1, 0), max_b(k - 1, 0);
  for (Key key : ka)
    for (std::size_t s = 0; s + 1 < k; ++s) max_a[s] = std::max(max_a[s], field(key, s));
  for (Key key : kb)
    for (std::size_t s = 0; s + 1 < k; ++s) max_b[s] = std::max(max_b[s], field(key, s));
  std::vector<std::uint64_t> stride(k - 1);
  std::uint64_t space = 1;
  for (std::size_t s = k - 1; s-- > 0;) {
    stride[s] = space;
    space *= max_a[s] + max_b[s] + 1;
    if (space > (std::uint64_t{1} << 25)) return std::nullopt;
  }
  const std::uint64_t work = static_cast<std::uint64_t>(a.size()) * b.size();
  if (space > 8 * work) return std::nullopt;
  auto index_of = [&](Key key) {
    std::uint64_t idx = 0;
    for (std::size_t s = 0; s + 1 < k; ++s) idx += field(key, s) * stride[s];
    return idx;
  };
  std::vector<std::uint64_t> ia, ib;
  ia.reserve(ka.size());
  ib.reserve(kb.size());
  for (Key key : ka) ia.push_back(index_of(key));
  for (Key key : kb) ib.push_back(index_of(key));
  const FieldRef& f = a.field();
  std::vector<std::uint8_t> acc(space, 0);
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint8_t ca = a.terms()[i].coeff;
    const std::uint64_t base = ia[i];
    for (std::size_t j = 0; j < nb; ++j) {
      std::uint8_t& slot = acc[base + ib[j]];
      slot = f->add(slot, f->mul(ca, b.terms()[j].coeff));
    }
  }
  const Key total = (ka.front() >> (static_cast<unsigned>(k) * bits)) + (kb.front() >> (static_cast<unsigned>(k) * bits));
  std::vector<std::pair<Key, std::uint8_t>> sorted;
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    if (acc[idx] == 0) continue;
    Key key = total << (static_cast<unsigned>(k) * bits);
    Key rest = total;
    std::uint64_t r = idx;
    for (std::size_t s = 0; s + 1 < k; ++s) {
      const std::uint64_t e = r / stride[s];
      r %= stride[s];
      rest -= e;
      key |= static_cast<Key>(e) << (static_cast<unsigned>(k - 1 - s) * bits);
    }
    sorted.emplace_back(key | rest, acc[idx]);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Term> terms;
  terms.reserve(sorted.size());
  for (const auto& [key, c] : sorted) terms.push_back({pk.decode(key), c});
  return Poly(f, std::move(terms));
}

// Returns nullopt when a remainder survives.
template <class Key>
std::optional<Poly> packed_divide(const Poly& a, const Poly& b, const PackPlan& plan, void (*guard)(std::size_t)) {
  const Packer<Key> pk(plan);
  const FieldRef& f = a.field();
  std::vector<std::pair<Key, std::uint8_t>> divisor;
  divisor.reserve(b.size());
  for (const auto& t : b.terms()) divisor.emplace_back(pk.encode(t.mono), t.coeff);
  const Key lead = divisor.front().first;
  const std::uint8_t inv_lead = f->inv(divisor.front().second);
  absl::btree_map<Key, std::uint8_t, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), pk.encode(t.mono), t.coeff);
  std::vector<std::pair<Key, std::uint8_t>> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!pk.divides(lead, it->first)) return std::nullopt;
    const Key qk = it->first - lead;
    const std::uint8_t qc = f->mul(it->second, inv_lead);
    rem.erase(it);
    for (std::size_t i = 1; i < divisor.size(); ++i) {
      const std::uint8_t c = f->neg(f->mul(qc, divisor[i].second));
      auto [pos, inserted] = rem.try_emplace(qk + divisor[i].first, c);
      if (!inserted) {
        pos->second = f->add(pos->second, c);
        if (pos->second == 0) rem.erase(pos);
      }
    }
    quotient.emplace_back(qk, qc);
    guard(quotient.size() + rem.size());
  }
  std::vector<Term> terms;
  terms.reserve(quotient.size());
  for (const auto& [k, c] : quotient) terms.push_back({pk.decode(k), c});
  return Poly(f, std::move(terms));
}

}  // namespace qschur::detail
