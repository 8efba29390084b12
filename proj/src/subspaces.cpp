#include "qschur/subspaces.hpp"

#include <algorithm>
#include <atomic>

namespace qschur {

namespace {
std::atomic<std::size_t> g_ceiling{243};

std::size_t checked_count(const Subspace& v) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    count *= v.field()->q();
    if (count > g_ceiling.load())
      throw Error(ErrorKind::EnumerationTooLarge, "q^dim exceeds the enumeration ceiling " + std::to_string(g_ceiling.load()));
  }
  return count;
}

Poly scaled(const Poly& v, std::uint8_t c) { return v.mul_monomial(Monomial{}, c); }

Poly combination(const Subspace& v, const std::vector<std::uint8_t>& coeffs) {
  Poly s(v.field());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) s += scaled(v.basis()[i], coeffs[i]);
  return s;
}

// Coefficient tuples in lexicographic order, the first entry most significant.
std::vector<std::vector<std::uint8_t>> coefficient_tuples(std::size_t dim, unsigned q) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur(dim, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (++cur[i] < q) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (dim == 0) return out;
  }
}

bool leading_entry_is_one(const std::vector<std::uint8_t>& c) {
  for (std::uint8_t x : c)
    if (x != 0) return x == 1;
  return false;
}

std::uint64_t gaussian_binomial_flags(unsigned q, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    std::uint64_t qi = 1;
    for (std::size_t k = 0; k < i; ++k) qi *= q;
    total *= (qi - 1) / (q - 1);
  }
  return total;
}

}  // namespace

std::size_t enumeration_ceiling() { return g_ceiling.load(); }
void set_enumeration_ceiling(std::size_t ceiling) { g_ceiling.store(ceiling); }

Poly Subspace::reduce(const Poly& v) const {
  if (!same_field(v.field(), field_)) throw Error(ErrorKind::SpecMismatch, "vector over a different field");
  Poly r = v;
  for (const auto& b : basis_) {
    const FieldElement c = r.coeff_of(b.leading().mono);
    if (!c.is_zero()) r -= b * c;
  }
  return r;
}

bool Subspace::contains(const Subspace& u) const {
  return std::all_of(u.basis().begin(), u.basis().end(), [&](const Poly& b) { return contains(b); });
}

Subspace Subspace::span(const FieldRef& field, const std::vector<Poly>& vectors) {
  Subspace s(field);
  for (const auto& v : vectors) {
    Poly w = s.reduce(v);
    if (w.is_zero()) continue;
    w = w * w.leading_coeff().inverse();
    const Monomial& lead = w.leading().mono;
    for (auto& b : s.basis_) {
      const FieldElement c = b.coeff_of(lead);
      if (!c.is_zero()) b -= w * c;
    }
    s.basis_.push_back(std::move(w));
  }
  std::sort(s.basis_.begin(), s.basis_.end(),
            [](const Poly& a, const Poly& b) { return a.leading().mono > b.leading().mono; });
  return s;
}

Subspace Subspace::parse(const FieldRef& field, std::string_view text) {
  std::vector<Poly> vectors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = std::min(text.find(';', pos), text.size());
    const std::string_view piece = text.substr(pos, semi - pos);
    if (piece.find_first_not_of(" \t") != std::string_view::npos) {
      vectors.push_back(Poly::parse(field, piece));
    } else if (semi < text.size()) {
      throw Error(ErrorKind::ParseError, "empty basis entry in '" + std::string(text) + "'");
    }
    pos = semi + 1;
  }
  return span(field, vectors);
}

std::string Subspace::to_string() const {
  if (basis_.empty()) return "0";
  std::string s;
  for (const auto& b : basis_) {
    if (!s.empty()) s += "; ";
    s += b.to_string();
  }
  return s;
}

std::vector<Poly> enumerate_vectors(const Subspace& v) {
  const std::size_t count = checked_count(v);
  std::vector<Poly> out;
  out.reserve(count);
  for (const auto& c : coefficient_tuples(v.dim(), v.field()->q())) out.push_back(combination(v, c));
  return out;
}

std::vector<Subspace> enumerate_lines(const Subspace& v) {
  checked_count(v);
  std::vector<Subspace> out;
  for (const auto& c : coefficient_tuples(v.dim(), v.field()->q())) {
    if (!leading_entry_is_one(c)) continue;
    out.push_back(Subspace::span(v.field(), {combination(v, c)}));
  }
  std::size_t expected = 0;
  std::size_t qi = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    expected += qi;
    qi *= v.field()->q();
  }
  if (out.size() != expected) throw Error(ErrorKind::InvalidArgument, "line count disagrees with (q^n - 1)/(q - 1)");
  return out;
}

namespace {

// Hyperplanes as kernels of normalized functionals c: the functional with
// first nonzero coordinate c_k = 1 has kernel spanned by b_j - c_j b_k, j != k.
std::vector<Subspace> hyperplanes(const Subspace& v) {
  std::vector<Subspace> out;
  const FieldRef& f = v.field();
  for (const auto& c : coefficient_tuples(v.dim(), f->q())) {
    if (!leading_entry_is_one(c)) continue;
    std::size_t k = 0;
    while (c[k] == 0) ++k;
    std::vector<Poly> kernel;
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (j != k) kernel.push_back(v.basis()[j] - scaled(v.basis()[k], c[j]));
    out.push_back(Subspace::span(f, kernel));
  }
  return out;
}

void flags_rec(const Subspace& v, std::vector<Subspace>& prefix, std::vector<Flag>& out) {
  prefix.push_back(v);
  if (v.dim() == 0) {
    out.push_back({prefix});
  } else {
    for (const auto& h : hyperplanes(v)) flags_rec(h, prefix, out);
  }
  prefix.pop_back();
}

}  // namespace

std::vector<Flag> enumerate_flags(const Subspace& v) {
  checked_count(v);
  std::vector<Flag> out;
  std::vector<Subspace> prefix;
  flags_rec(v, prefix, out);
  if (out.size() != gaussian_binomial_flags(v.field()->q(), v.dim()))
    throw Error(ErrorKind::InvalidArgument, "flag count disagrees with the product formula");
  return out;
}

Poly pi_product(const Subspace& v) {
  Poly product = Poly::one(v.field());
  for (const auto& w : enumerate_vectors(v))
    if (!w.is_zero()) product *= w;
  return product;
}

UniPoly additive_poly(const Subspace& u) {
  const FieldRef& f = u.field();
  UniPoly result = UniPoly::t(f);
  const UniPoly t = UniPoly::t(f);
  for (const auto& w : enumerate_vectors(u))
    if (!w.is_zero()) result = result * (t + UniPoly::constant(w));
  if (!unipoly_is_q_poly(result)) throw Error(ErrorKind::NotQPolynomial, "f_U is not a q-polynomial");
  return result;
}

Subspace internal_quotient(const Subspace& v, const Subspace& u) {
  if (!v.contains(u)) throw Error(ErrorKind::NotSubspace, "U = <" + u.to_string() + "> is not contained in V = <" + v.to_string() + ">");
  const UniPoly f = additive_poly(u);
  std::vector<Poly> images;
  images.reserve(v.dim());
  for (const auto& b : v.basis()) images.push_back(unipoly_eval(f, b));
  Subspace q = Subspace::span(v.field(), images);
  if (q.dim() != v.dim() - u.dim()) throw Error(ErrorKind::DimensionDrop, "dim(V//U) != dim V - dim U");
  return q;
}

bool quotient_tower_check(const Subspace& t, const Subspace& u, const Subspace& v) {
  if (!u.contains(t)) throw Error(ErrorKind::NotSubspace, "T is not contained in U");
  if (!v.contains(u)) throw Error(ErrorKind::NotSubspace, "U is not contained in V");
  return internal_quotient(v, u) == internal_quotient(internal_quotient(v, t), internal_quotient(u, t));
}

bool coset_product_check(const Subspace& u, const Subspace& u_prime) {
  if (!u.contains(u_prime)) throw Error(ErrorKind::NotSubspace, "U' is not contained in U");
  Poly product = Poly::one(u.field());
  for (const auto& w : enumerate_vectors(u))
    if (!u_prime.contains(w)) product *= w;
  return pi_product(internal_quotient(u, u_prime)) == product;
}

}  // namespace qschur
