#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qschur/schur.hpp"

namespace qschur {

/// Outcome of one exact identity check. Failing cases keep both sides in full;
/// passing cases may elide sides longer than the configured limit.
struct CaseReport {
  std::string identity;
  unsigned q = 0;
  std::size_t n = 0;
  std::string lambda;
  std::string mu;
  std::string basis;
  bool passed = false;
  std::string lhs;
  std::string rhs;
  std::int64_t millis = 0;
  bool fractional = false;  // some side has an exponent outside N
};

/// Options shared by every check.
struct ReportOptions {
  std::size_t max_value_chars = 4096;  // for passing cases only; 0 keeps everything
};

/// Summand for one line L in the V/L recursion; the default is skew_S on V//L.
using LineEvaluator = std::function<Poly(const Subspace& line)>;

/// S_{lambda/mu}(V) against the sum over lines L of S_{lambda/mu}(V//L).
/// Throws LengthTooLong unless l(lambda), l(mu) < dim V.
CaseReport check_vl_recursion(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                              const LineEvaluator& line_value = {}, const ReportOptions& opts = {});

/// S_lambda(V) against the sum over lines, once directly in A and once in the
/// universal ring on dim V generators followed by substitution of the basis of
/// V. Passes only if both routes hold and their values coincide.
CaseReport check_straight_recursion(SchurContext& ctx, const Partition& lambda, const Subspace& v,
                                    const ReportOptions& opts = {});

/// S_lambda(V) against the sum over complete flags of prod_i H_lambda_i(V_(i-1)//V_i).
CaseReport check_flag_formula(SchurContext& ctx, const Partition& lambda, const Subspace& v,
                              const ReportOptions& opts = {});

/// pieri_expand against skew_S on V//L, one report per line L of V.
std::vector<CaseReport> check_pieri(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                                    const ReportOptions& opts = {});

/// coproduct_expand(lambda, mu, V, U) against skew_S on V//U.
CaseReport check_coproduct(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                           const Subspace& u, const ReportOptions& opts = {});

/// Line sums, pi of a line, the Chevalley-Warning style vanishing sum, the
/// power sums over V and over F.
std::vector<CaseReport> check_elementary_lemmas(const FieldRef& field, std::size_t n, std::uint64_t seed,
                                                const ReportOptions& opts = {});

/// The permutation lemma, exhaustively for every size up to max_n.
std::vector<CaseReport> check_perm_lemma(std::size_t max_n);

/// Cauchy-Binet on random band matrices, sign scaling and the too-many-zeroes
/// lemma, each over the given number of seeded trials.
std::vector<CaseReport> check_matrix_lemmas(const FieldRef& field, std::uint64_t seed, int trials = 50,
                                            const ReportOptions& opts = {});

/// H(V) E(V) = I on [lo, hi].
CaseReport check_h_e_inverse(SchurContext& ctx, const Subspace& v, long lo, long hi);

/// H(V) = H(V//U) phi^(dim V - dim U) H(U) on [-(dim V + 3), dim V + 3].
CaseReport check_quotient_factorization(SchurContext& ctx, const Subspace& v, const Subspace& u);

/// Tower and coset identities and the factorization of pi over every complete
/// flag of V, the hook step on every line for r <= 3, and the full-column
/// reduction for every full-column lambda with |lambda| <= max_weight.
std::vector<CaseReport> check_subspace_calculus(SchurContext& ctx, const Subspace& v, int max_weight,
                                                const ReportOptions& opts = {});

/// Basis-change invariance of S_lambda(V) under `changes` random elements of GL(V),
/// k independence and the vanishing laws for all pairs of partitions of weight
/// at most max_weight. Pairs whose (k+1)-sized determinant would need an H_r
/// with an estimated term count above 500000 are skipped.
std::vector<CaseReport> check_structural(SchurContext& ctx, const Subspace& v, int max_weight, std::uint64_t seed,
                                         int changes = 10, const ReportOptions& opts = {});

/// exact_div(a * b, b) == a for `pairs` random pairs.
CaseReport check_exact_div_roundtrip(const FieldRef& field, std::uint64_t seed, int pairs = 200);

struct SweepConfig {
  std::vector<std::string> fields{"q=2", "q=3"};
  std::size_t dim_min = 2;
  std::size_t dim_max = 3;
  int max_weight = 4;
  std::set<std::string> identities;  // "all" selects every identity
  std::uint64_t seed = 1;
  std::size_t enumeration_ceiling = 243;
  std::size_t term_limit = 2'000'000;
  unsigned threads = 0;  // 0 selects the hardware concurrency
  bool timing = false;   // millis are reported as 0 unless set
  ReportOptions report;
};

struct SweepReport {
  std::vector<CaseReport> cases;  // sorted canonically
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t fractional = 0;  // cases with a fractional exponent on some side
  std::uint64_t seed = 0;
  std::int64_t millis = 0;
  bool ok() const { return failed == 0; }
};

/// Identity names accepted by run_sweep.
const std::vector<std::string>& sweep_identities();

/// Throws ConfigInvalid for unknown identities or fields and for bounds outside
/// dim 1..4, weight 0..6, q^dim above the enumeration ceiling.
void validate(const SweepConfig& cfg);

/// Runs every selected identity over the grid of fields, dimensions (V spanned
/// by the first dim ambient variables) and partitions. Deterministic in seed.
SweepReport run_sweep(const SweepConfig& cfg);

/// Reads the keys fields, dim_min, dim_max, max_weight, identities, seed,
/// enumeration_ceiling, term_limit, threads, timing, max_value_chars.
/// Throws ConfigInvalid.
SweepConfig sweep_config_from_json(const std::string& text);

std::string case_to_json(const CaseReport& r);
std::string report_to_json(const SweepReport& r);

}  // namespace qschur
