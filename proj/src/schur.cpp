#include "qschur/schur.hpp"

#include <algorithm>

namespace qschur {

namespace {

Poly negate_if(const Poly& p, bool odd) { return odd ? -p : p; }

bool is_odd(long v) { return v % 2 != 0; }

void nu_between(const Partition& lambda, const Partition& mu, std::size_t i, std::vector<int>& cur,
                std::vector<Partition>& out) {
  if (i > lambda.length()) {
    out.emplace_back(cur);
    return;
  }
  const int upper = i == 1 ? lambda.part(1) : std::min(lambda.part(i), cur.back());
  for (int v = upper; v >= mu.part(i); --v) {
    cur.push_back(v);
    nu_between(lambda, mu, i + 1, cur, out);
    cur.pop_back();
  }
}

// Partitions nu with mu in nu in lambda.
std::vector<Partition> partitions_between(const Partition& lambda, const Partition& mu) {
  std::vector<Partition> out;
  if (!contains(lambda, mu)) return out;
  std::vector<int> cur;
  nu_between(lambda, mu, 1, cur, out);
  return out;
}

}  // namespace

Poly alternant(const FieldRef& field, const Composition& alpha) {
  std::vector<Poly> xs;
  for (std::size_t i = 0; i < alpha.size(); ++i) xs.push_back(Poly::variable(field, universal_var(static_cast<std::uint32_t>(i))));
  return alternant_of(xs, alpha);
}

Poly alternant_of(const std::vector<Poly>& vectors, const Composition& alpha) {
  if (vectors.size() != alpha.size()) throw Error(ErrorKind::ShapeMismatch, "alternant needs as many vectors as exponents");
  if (vectors.empty()) throw Error(ErrorKind::InvalidArgument, "alternant of no vectors");
  PolyMatrix m(vectors.front().field(), vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] < 0) throw Error(ErrorKind::InvalidArgument, "alternant exponent must be nonnegative");
      m.at(i, j) = frobenius(vectors[i], alpha[j]);
    }
  return det(m);
}

Subspace universal_space(const FieldRef& field, std::size_t n) {
  if (n > kUniversalVars) throw Error(ErrorKind::InvalidArgument, "at most 16 universal variables");
  std::vector<Poly> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(Poly::variable(field, universal_var(static_cast<std::uint32_t>(i))));
  return Subspace::span(field, xs);
}

Poly SchurContext::cached(const std::string& key, const std::function<Poly()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Poly value = compute();
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

Poly SchurContext::universal_schur(const Partition& lambda, std::size_t n) {
  if (lambda.length() > n)
    throw Error(ErrorKind::LengthExceeded, lambda.to_string() + " has more than " + std::to_string(n) + " parts");
  if (n == 0) return Poly::one(field_);
  return cached("U|" + lambda.to_string() + "|" + std::to_string(n), [&] {
    const int ni = static_cast<int>(n);
    return exact_div(alternant(field_, pad_and_add(lambda, ni)), alternant(field_, delta(ni)));
  });
}

Poly SchurContext::schur_S(const Partition& lambda, const Subspace& v) {
  if (!same_field(v.field(), field_)) throw Error(ErrorKind::SpecMismatch, "subspace over a different field");
  if (lambda.length() > v.dim()) return Poly::zero(field_);
  if (lambda.empty()) return Poly::one(field_);
  return cached("S|" + lambda.to_string() + "|" + v.to_string(), [&] {
    const int n = static_cast<int>(v.dim());
    return exact_div(alternant_of(v.basis(), pad_and_add(lambda, n)), alternant_of(v.basis(), delta(n)));
  });
}

Poly SchurContext::schur_S_by_substitution(const Partition& lambda, const Subspace& v) {
  if (!same_field(v.field(), field_)) throw Error(ErrorKind::SpecMismatch, "subspace over a different field");
  if (lambda.length() > v.dim()) return Poly::zero(field_);
  return evaluate_morphism(universal_schur(lambda, v.dim()), v.basis());
}

Poly SchurContext::h_r(long r, const Subspace& v) {
  if (r < 0) return Poly::zero(field_);
  return schur_S(Partition(r == 0 ? std::vector<int>{} : std::vector<int>{static_cast<int>(r)}), v);
}

Poly SchurContext::e_r(long r, const Subspace& v) {
  if (r < 0) return Poly::zero(field_);
  if (static_cast<std::size_t>(r) > v.dim()) return Poly::zero(field_);
  return schur_S(Partition(std::vector<int>(static_cast<std::size_t>(r), 1)), v);
}

Poly SchurContext::skew_S(const Partition& lambda, const Partition& mu, const Subspace& v, std::size_t k) {
  const std::size_t need = std::max(lambda.length(), mu.length());
  if (k == 0) k = need;
  if (k < need) throw Error(ErrorKind::InvalidArgument, "determinant size below max(l(lambda), l(mu))");
  PolyMatrix m(field_, k, k);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      const long r = lambda.part(i) - mu.part(j) - static_cast<long>(i) + static_cast<long>(j);
      const int twist = mu.part(j) - static_cast<int>(j) + 1;
      m.at(i - 1, j - 1) = frobenius(h_r(r, v), twist);
    }
  return det(m);
}

Poly SchurContext::tilde_S(const Partition& lambda, const Partition& mu, const Subspace& u) {
  const std::size_t k = std::max(lambda.length(), mu.length());
  PolyMatrix m(field_, k, k);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      const long r = lambda.part(i) - mu.part(j) - static_cast<long>(i) + static_cast<long>(j);
      const int twist = lambda.part(i) - static_cast<int>(i);
      m.at(i - 1, j - 1) = frobenius(e_r(r, u), twist);
    }
  return det(m);
}

TriangularZMatrix SchurContext::h_matrix(const Subspace& w) {
  return TriangularZMatrix(
      field_, [this, w](long i, long j) { return frobenius(h_r(j - i, w), static_cast<int>(i + 1)); },
      "H(" + w.to_string() + ")");
}

TriangularZMatrix SchurContext::e_matrix(const Subspace& w) {
  return TriangularZMatrix(
      field_,
      [this, w](long i, long j) { return negate_if(frobenius(e_r(j - i, w), static_cast<int>(j)), is_odd(j - i)); },
      "E(" + w.to_string() + ")");
}

bool SchurContext::quotient_factorization_check(const Subspace& v, const Subspace& u) {
  const Subspace vu = internal_quotient(v, u);
  const int d = static_cast<int>(v.dim() - u.dim());
  const TriangularZMatrix hu = h_matrix(u);
  const TriangularZMatrix twisted(field_, [&hu, d](long i, long j) { return frobenius(hu(i, j), d); }, "phi^d H(U)");
  const long w = static_cast<long>(v.dim()) + 3;
  return dense_window(h_matrix(v), -w, w) == window_product(h_matrix(vu), twisted, -w, w);
}

CoproductExpansion SchurContext::coproduct_expand(const Partition& lambda, const Partition& mu, const Subspace& v,
                                                  const Subspace& u) {
  if (!v.contains(u)) throw Error(ErrorKind::NotSubspace, "U is not contained in V");
  const int d = static_cast<int>(v.dim() - u.dim());
  CoproductExpansion out{{}, Poly(field_)};
  for (const auto& nu : partitions_between(lambda, mu)) {
    Poly term = skew_S(nu, mu, v) * frobenius(tilde_S(lambda, nu, u), d);
    term = negate_if(term, is_odd(lambda.weight() - nu.weight()));
    out.total += term;
    out.terms.push_back({nu, std::move(term)});
  }
  return out;
}

Poly SchurContext::pieri_expand(const Partition& lambda, const Partition& mu, const Subspace& v, const Poly& line) {
  if (line.is_zero()) throw Error(ErrorKind::ZeroVector, "the line must be spanned by a nonzero vector");
  if (!v.contains(line)) throw Error(ErrorKind::NotSubspace, line.to_string() + " is not in V");
  const std::size_t n = v.dim();
  if (lambda.length() >= n || mu.length() >= n)
    throw Error(ErrorKind::LengthTooLong, "lambda and mu need fewer than dim V = " + std::to_string(n) + " parts");
  Poly total(field_);
  for (const auto& nu : vertical_strip_subpartitions(lambda)) {
    const std::uint64_t e = q_exponent(lambda, nu, static_cast<int>(n), field_->q());
    total += negate_if(pow(line, e) * skew_S(nu, mu, v), is_odd(lambda.weight() - nu.weight()));
  }
  return total;
}

Poly SchurContext::fullhouse_reduce(const Partition& lambda, const Subspace& v) {
  const int n = static_cast<int>(v.dim());
  if (static_cast<int>(lambda.length()) != n || n == 0)
    throw Error(ErrorKind::NotFullColumn, lambda.to_string() + " does not have exactly dim V = " + std::to_string(n) + " positive parts");
  const Partition reduced = decrement_all(lambda, n);
  return negate_if(pi_product(v) * frobenius(schur_S(reduced, v), 1), is_odd(n));
}

bool SchurContext::hook_step_check(const Subspace& u, long r) {
  if (u.dim() != 1) throw Error(ErrorKind::NotALine, "subspace of dimension " + std::to_string(u.dim()));
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  return pi_product(u) * frobenius(h_r(r - 1, u), 1) == -h_r(r, u);
}

}  // namespace qschur
