#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qschur/fmatrix.hpp"
#include "qschur/partitions.hpp"
#include "qschur/ppoly.hpp"
#include "qschur/subspaces.hpp"

namespace qschur {

/// det(x_i^(q^alpha_j)) in the universal variables x1..xn, n = alpha.size().
Poly alternant(const FieldRef& field, const Composition& alpha);

/// det(v_i^(q^alpha_j)) for the given vectors v_1..v_n.
Poly alternant_of(const std::vector<Poly>& vectors, const Composition& alpha);

/// span(x1, ..., xn) in the universal namespace.
Subspace universal_space(const FieldRef& field, std::size_t n);

struct CoproductTerm {
  Partition nu;
  Poly term;
};

struct CoproductExpansion {
  std::vector<CoproductTerm> terms;
  Poly total;
};

/// Entry point for the Schur-type functions over one field, with memo
/// tables for the universal quotients and for straight values S_lambda(V)
/// (which include H_r and E_r). Caches are insert-once under a mutex, so a
/// context can serve concurrent queries. Matrices returned by h_matrix and
/// e_matrix refer back to the context and must not outlive it.
class SchurContext {
 public:
  explicit SchurContext(FieldRef field) : field_(std::move(field)) {}
  SchurContext(const SchurContext&) = delete;
  SchurContext& operator=(const SchurContext&) = delete;

  const FieldRef& field() const noexcept { return field_; }

  /// A_{lambda+delta} / A_delta in x1..xn. Throws LengthExceeded.
  Poly universal_schur(const Partition& lambda, std::size_t n);

  /// S_lambda(V); 0 when l(lambda) > dim V. Computed as the exact quotient of
  /// the alternants of a basis of V, which agrees with substituting that
  /// basis into universal_schur.
  Poly schur_S(const Partition& lambda, const Subspace& v);

  /// S_lambda(V) by substituting the basis of V into universal_schur.
  Poly schur_S_by_substitution(const Partition& lambda, const Subspace& v);

  /// H_r(V) = S_(r)(V) and E_r(V) = S_(1^r)(V); both 0 for r < 0.
  Poly h_r(long r, const Subspace& v);
  Poly e_r(long r, const Subspace& v);

  /// det(phi^(mu_j - j + 1) H_(lambda_i - mu_j - i + j)(V)) of size k; k = 0
  /// selects max(l(lambda), l(mu)). Throws InvalidArgument if k is too small.
  Poly skew_S(const Partition& lambda, const Partition& mu, const Subspace& v, std::size_t k = 0);

  /// det(phi^(lambda_i - i) E_(lambda_i - mu_j - i + j)(U)) of size
  /// max(l(lambda), l(mu)).
  Poly tilde_S(const Partition& lambda, const Partition& mu, const Subspace& u);

  /// (phi^(i+1) H_(j-i)(W))_{i,j} and ((-1)^(j-i) phi^j E_(j-i)(W))_{i,j}.
  TriangularZMatrix h_matrix(const Subspace& w);
  TriangularZMatrix e_matrix(const Subspace& w);

  /// H(V) = H(V//U) * phi^(dim V - dim U)(H(U)) on [-(dim V + 3), dim V + 3].
  /// Throws NotSubspace.
  bool quotient_factorization_check(const Subspace& v, const Subspace& u);

  /// The addends (-1)^(|lambda| - |nu|) S_{nu/mu}(V) phi^(dim V - dim U)
  /// S~_{lambda/nu}(U) over mu in nu in lambda, and their sum. Throws
  /// NotSubspace.
  CoproductExpansion coproduct_expand(const Partition& lambda, const Partition& mu, const Subspace& v,
                                      const Subspace& u);

  /// Sum over vertical strips lambda/nu of
  /// (-1)^(|lambda| - |nu|) l^(q(lambda, nu)) S_{nu/mu}(V).
  /// Throws ZeroVector, NotSubspace (l outside V), LengthTooLong.
  Poly pieri_expand(const Partition& lambda, const Partition& mu, const Subspace& v, const Poly& line);

  /// (-1)^n pi(V) (S_{lambda-1}(V))^q for l(lambda) = dim V = n. Throws
  /// NotFullColumn.
  Poly fullhouse_reduce(const Partition& lambda, const Subspace& v);

  /// pi(U) phi(H_(r-1)(U)) == -H_r(U) for a line U and r >= 1. Throws NotALine.
  bool hook_step_check(const Subspace& u, long r);

 private:
  Poly cached(const std::string& key, const std::function<Poly()>& compute);

  FieldRef field_;
  std::mutex mutex_;
  std::unordered_map<std::string, Poly> cache_;
};

}  // namespace qschur
