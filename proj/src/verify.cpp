#include "qschur/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"

namespace qschur {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::string elide_or_render(const Poly& p, bool passed, const ReportOptions& opts) {
  const std::size_t limit = opts.max_value_chars;
  const auto elided = [&] { return "<elided: " + std::to_string(p.size()) + " terms>"; };
  if (passed && limit > 0 && p.size() > limit / 2) return elided();
  std::string s = p.to_string();
  if (passed && limit > 0 && s.size() > limit) return elided();
  return s;
}

std::string elide_text(std::string s, bool passed, const ReportOptions& opts) {
  if (passed && opts.max_value_chars > 0 && s.size() > opts.max_value_chars)
    return "<elided: " + std::to_string(s.size()) + " chars>";
  return s;
}

std::string matrix_text(const PolyMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m.at(i, j).to_string();
    }
  }
  return s + "]";
}

struct Header {
  std::string identity;
  unsigned q;
  std::size_t n;
  std::string lambda;
  std::string mu;
  std::string basis;
};

CaseReport poly_case(const Header& h, const Poly& lhs, const Poly& rhs, Clock::time_point start,
                     const ReportOptions& opts) {
  CaseReport r{h.identity, h.q, h.n, h.lambda, h.mu, h.basis, lhs == rhs, {}, {}, 0};
  r.fractional = lhs.has_fractional_exponent() || rhs.has_fractional_exponent();
  r.lhs = elide_or_render(lhs, r.passed, opts);
  r.rhs = elide_or_render(rhs, r.passed, opts);
  r.millis = elapsed_ms(start);
  return r;
}

CaseReport text_case(const Header& h, std::string lhs, std::string rhs, bool passed, Clock::time_point start,
                     const ReportOptions& opts) {
  CaseReport r{h.identity, h.q, h.n, h.lambda, h.mu, h.basis, passed, {}, {}, 0};
  r.lhs = elide_text(std::move(lhs), passed, opts);
  r.rhs = elide_text(std::move(rhs), passed, opts);
  r.millis = elapsed_ms(start);
  return r;
}

Poly random_poly(const FieldRef& f, std::mt19937_64& rng, std::uint32_t vars, std::uint64_t max_exp, int max_terms) {
  std::vector<Term> ts;
  const int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
  for (int t = 0; t < count; ++t) {
    std::vector<VarExp> es;
    for (std::uint32_t v = 0; v < vars; ++v) es.push_back({ambient_var(v), QExponent::integer(rng() % (max_exp + 1), f->q())});
    ts.push_back({Monomial::from_entries(es), static_cast<std::uint8_t>(1 + rng() % (f->q() - 1))});
  }
  return Poly(f, ts);
}

Subspace first_variables(const FieldRef& f, std::size_t n) {
  std::vector<Poly> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(Poly::variable(f, ambient_var(static_cast<std::uint32_t>(i))));
  return Subspace::span(f, xs);
}

std::vector<Poly> random_basis(const Subspace& v, std::mt19937_64& rng) {
  const auto elems = field_enumerate(v.field());
  while (true) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      Poly w(v.field());
      for (const auto& b : v.basis()) w += Poly::constant(elems[rng() % elems.size()]) * b;
      out.push_back(w);
    }
    if (Subspace::span(v.field(), out).dim() == v.dim()) return out;
  }
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool odd(long v) { return v % 2 != 0; }

// Largest H index in the k x k skew determinant for lambda/mu.
long max_h_index(const Partition& lambda, const Partition& mu, std::size_t k) {
  long best = 0;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j)
      best = std::max(best, static_cast<long>(lambda.part(i) - mu.part(j)) - static_cast<long>(i) + static_cast<long>(j));
  return best;
}

// Rough upper bound on the number of terms of H_r(V) for dim V = n: the count
// of monomials of degree q^(r+n-1) in n variables.
bool h_within_budget(unsigned q, std::size_t n, long r) {
  if (n <= 1) return true;
  double degree = std::pow(static_cast<double>(q), static_cast<double>(r + static_cast<long>(n) - 1));
  double count = 1;
  for (std::size_t k = 1; k < n; ++k) count *= degree / static_cast<double>(k);
  return count <= 5e5;
}

}  // namespace

CaseReport check_vl_recursion(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                              const LineEvaluator& line_value, const ReportOptions& opts) {
  if (lambda.length() >= v.dim() || mu.length() >= v.dim())
    throw Error(ErrorKind::LengthTooLong, "lambda and mu need fewer than dim V = " + std::to_string(v.dim()) + " parts");
  const auto start = Clock::now();
  const Poly lhs = ctx.skew_S(lambda, mu, v);
  Poly rhs(ctx.field());
  for (const auto& line : enumerate_lines(v))
    rhs += line_value ? line_value(line) : ctx.skew_S(lambda, mu, internal_quotient(v, line));
  return poly_case({"vl-recursion", ctx.field()->q(), v.dim(), lambda.to_string(), mu.to_string(), v.to_string()}, lhs,
                   rhs, start, opts);
}

CaseReport check_straight_recursion(SchurContext& ctx, const Partition& lambda, const Subspace& v,
                                    const ReportOptions& opts) {
  if (lambda.length() >= v.dim())
    throw Error(ErrorKind::LengthTooLong, "lambda needs fewer than dim V = " + std::to_string(v.dim()) + " parts");
  const auto start = Clock::now();
  const FieldRef& f = ctx.field();
  Header h{"straight-recursion", f->q(), v.dim(), lambda.to_string(), "[]", v.to_string()};
  const std::vector<Poly>& images = v.basis();
  const Subspace w = universal_space(f, v.dim());

  const Poly lhs = ctx.schur_S(lambda, v);
  const Poly lhs_w = ctx.schur_S(lambda, w);
  Poly rhs(f), rhs_w(f);
  for (const auto& m : enumerate_lines(w)) {
    const Poly term_w = ctx.schur_S(lambda, internal_quotient(w, m));
    const Subspace line = Subspace::span(f, {evaluate_morphism(m.basis().front(), images)});
    const Poly term = ctx.schur_S(lambda, internal_quotient(v, line));
    const Poly moved = evaluate_morphism(term_w, images);
    if (moved != term) {
      h.basis += " | transported summand for " + m.to_string();
      return poly_case(h, moved, term, start, opts);
    }
    rhs += term;
    rhs_w += term_w;
  }
  if (lhs != rhs) return poly_case(h, lhs, rhs, start, opts);
  if (lhs_w != rhs_w) {
    h.basis = w.to_string();
    return poly_case(h, lhs_w, rhs_w, start, opts);
  }
  const Poly moved_lhs = evaluate_morphism(lhs_w, images);
  const Poly moved_rhs = evaluate_morphism(rhs_w, images);
  if (moved_lhs != lhs || moved_rhs != rhs) {
    h.basis += " | transported";
    return poly_case(h, moved_lhs, moved_rhs == rhs ? lhs : rhs, start, opts);
  }
  return poly_case(h, lhs, rhs, start, opts);
}

CaseReport check_flag_formula(SchurContext& ctx, const Partition& lambda, const Subspace& v, const ReportOptions& opts) {
  const auto start = Clock::now();
  const Poly lhs = ctx.schur_S(lambda, v);
  Poly rhs(ctx.field());
  if (lambda.length() <= v.dim()) {
    for (const auto& flag : enumerate_flags(v)) {
      Poly product = Poly::one(ctx.field());
      for (std::size_t i = 1; i < flag.chain.size() && !product.is_zero(); ++i)
        product *= ctx.h_r(lambda.part(i), internal_quotient(flag.chain[i - 1], flag.chain[i]));
      rhs += product;
    }
  }
  return poly_case({"flag-formula", ctx.field()->q(), v.dim(), lambda.to_string(), "[]", v.to_string()}, lhs, rhs,
                   start, opts);
}

std::vector<CaseReport> check_pieri(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                                    const ReportOptions& opts) {
  std::vector<CaseReport> out;
  for (const auto& line : enumerate_lines(v)) {
    const auto start = Clock::now();
    const Poly lhs = ctx.pieri_expand(lambda, mu, v, line.basis().front());
    const Poly rhs = ctx.skew_S(lambda, mu, internal_quotient(v, line));
    out.push_back(poly_case({"pieri", ctx.field()->q(), v.dim(), lambda.to_string(), mu.to_string(),
                             v.to_string() + " | " + line.to_string()},
                            lhs, rhs, start, opts));
  }
  return out;
}

CaseReport check_coproduct(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                           const Subspace& u, const ReportOptions& opts) {
  const auto start = Clock::now();
  const Poly lhs = ctx.coproduct_expand(lambda, mu, v, u).total;
  const Poly rhs = ctx.skew_S(lambda, mu, internal_quotient(v, u));
  return poly_case({"coproduct", ctx.field()->q(), v.dim(), lambda.to_string(), mu.to_string(),
                    v.to_string() + " | " + u.to_string()},
                   lhs, rhs, start, opts);
}

std::vector<CaseReport> check_elementary_lemmas(const FieldRef& field, std::size_t n, std::uint64_t seed,
                                                const ReportOptions& opts) {
  std::vector<CaseReport> out;
  const unsigned q = field->q();
  const Subspace v = first_variables(field, n);
  std::mt19937_64 rng(seed);

  // Sums over lines against sums over nonzero vectors.
  for (int trial = 0; trial < 3 && n > 0; ++trial) {
    const auto start = Clock::now();
    std::map<std::string, Poly> b;
    Poly lhs(field);
    for (const auto& line : enumerate_lines(v)) {
      Poly value = random_poly(field, rng, 2, 3, 3);
      lhs += value;
      b.emplace(line.to_string(), std::move(value));
    }
    Poly rhs(field);
    for (const auto& w : enumerate_vectors(v))
      if (!w.is_zero()) rhs -= b.at(Subspace::span(field, {w}).to_string());
    out.push_back(poly_case({"linesum", q, n, "", "", v.to_string() + " | trial " + std::to_string(trial)}, lhs, rhs,
                            start, opts));
  }

  // pi(span(v)) = -v^(q-1) over the nonzero vectors of a plane.
  const Subspace plane = first_variables(field, 2);
  for (const auto& w : enumerate_vectors(plane)) {
    if (w.is_zero()) continue;
    const auto start = Clock::now();
    out.push_back(poly_case({"pispanv", q, 2, "", "", w.to_string()}, pi_product(Subspace::span(field, {w})),
                            -pow(w, q - 1), start, opts));
  }

  // A polynomial in n variables over A of total degree below n(q-1) sums to
  // zero over F^n. Evaluated point by point.
  if (n > 0) {
    const auto points = [&] {
      std::vector<std::vector<FieldElement>> pts{{}};
      const auto elems = field_enumerate(field);
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::vector<FieldElement>> next;
        for (const auto& p : pts)
          for (const auto& e : elems) {
            next.push_back(p);
            next.back().push_back(e);
          }
        pts = std::move(next);
      }
      return pts;
    }();
    const std::uint64_t bound = n * (q - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto start = Clock::now();
      std::vector<std::pair<std::vector<std::uint64_t>, Poly>> terms;
      const int count = 1 + static_cast<int>(rng() % 6);
      for (int t = 0; t < count; ++t) {
        std::vector<std::uint64_t> e(n, 0);
        const std::uint64_t deg = bound == 0 ? 0 : rng() % bound;
        for (std::uint64_t d = 0; d < deg; ++d) ++e[rng() % n];
        terms.emplace_back(e, random_poly(field, rng, 2, 2, 2));
      }
      Poly lhs(field);
      for (const auto& pt : points)
        for (const auto& [e, c] : terms) {
          FieldElement scalar = FieldElement::one(field);
          for (std::size_t k = 0; k < n; ++k) scalar = scalar * pt[k].pow(e[k]);
          lhs += c * scalar;
        }
      out.push_back(poly_case({"cw-lemma", q, n, "", "", "trial " + std::to_string(trial)}, lhs, Poly(field), start,
                              opts));
    }
  }

  // sum over nonzero w of w^((q-1)(q^a_1 + ... + q^a_k)) = 0 for k < n.
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<int> a(k, 0);
    while (true) {
      const auto start = Clock::now();
      std::uint64_t e = 0;
      for (int ai : a) e += ipow(q, static_cast<unsigned>(ai));
      e *= q - 1;
      Poly lhs(field);
      for (const auto& w : enumerate_vectors(v))
        if (!w.is_zero()) lhs += pow(w, e);
      std::string label;
      for (int ai : a) label += (label.empty() ? "" : ",") + std::to_string(ai);
      out.push_back(poly_case({"zerosum", q, n, label, "", v.to_string()}, lhs, Poly(field), start, opts));
      std::size_t pos = k;
      while (pos > 0 && a[pos - 1] == 3) --pos;
      if (pos == 0) break;
      const int next = a[pos - 1] + 1;
      for (std::size_t i = pos - 1; i < k; ++i) a[i] = next;
    }
  }

  // sum over F of alpha^i = 0 for 0 <= i < q - 1.
  for (unsigned i = 0; i + 1 < q; ++i) {
    const auto start = Clock::now();
    const FieldElement s = power_sum(field, i);
    out.push_back(text_case({"zerosum-field", q, 1, std::to_string(i), "", field->describe()}, field->format(s.code()),
                            "0", s.is_zero(), start, opts));
  }
  return out;
}

std::vector<CaseReport> check_perm_lemma(std::size_t max_n) {
  std::vector<CaseReport> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto start = Clock::now();
    const int lo = -1, hi = static_cast<int>(n);
    std::size_t counterexamples = 0, bad_witnesses = 0, cases = 0;
    std::vector<int> pick(static_cast<std::size_t>(hi - lo + 1), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n), 1);
    do {
      std::vector<int> alpha;
      for (int value = hi; value >= lo; --value)
        if (pick[static_cast<std::size_t>(hi - value)]) alpha.push_back(value);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> beta(alpha);
        for (std::size_t i = 0; i < n; ++i) beta[i] -= static_cast<int>(mask >> i & 1u);
        bool decreasing = true;
        for (std::size_t i = 1; i < n; ++i) decreasing = decreasing && beta[i - 1] > beta[i];
        if (!decreasing) continue;
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
          ++cases;
          bool admissible = true;
          for (std::size_t i = 0; i < n; ++i) {
            const int d = alpha[i] - beta[static_cast<std::size_t>(sigma[i])];
            admissible = admissible && (d == 0 || d == 1);
          }
          bool identity = true;
          for (std::size_t i = 0; i < n; ++i) identity = identity && sigma[i] == static_cast<int>(i);
          if (admissible && !identity) ++counterexamples;
          const auto w = perm_witness(alpha, beta, sigma);
          if (w.has_value() == identity) ++bad_witnesses;
          if (w) {
            const int d = alpha[*w - 1] - beta[static_cast<std::size_t>(sigma[*w - 1])];
            if (d == 0 || d == 1) ++bad_witnesses;
          }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    out.push_back(text_case({"perm", 0, n, "", "", std::to_string(cases) + " cases"},
                            std::to_string(counterexamples) + " counterexamples, " + std::to_string(bad_witnesses) +
                                " bad witnesses",
                            "0 counterexamples, 0 bad witnesses", counterexamples == 0 && bad_witnesses == 0, start, {}));
  }
  return out;
}

std::vector<CaseReport> check_matrix_lemmas(const FieldRef& field, std::uint64_t seed, int trials,
                                            const ReportOptions& opts) {
  std::vector<CaseReport> out;
  const unsigned q = field->q();
  std::mt19937_64 rng(seed);
  const auto band = [&field](std::uint64_t s) {
    return TriangularZMatrix(
        field,
        [field, s](long i, long j) {
          if (i > j || j - i > 4) return Poly::zero(field);
          if (i == j) return Poly::one(field);
          std::mt19937_64 local(s ^ (static_cast<std::uint64_t>(i + 64) * 1000003u + static_cast<std::uint64_t>(j + 64)));
          return random_poly(field, local, 2, 2, 2);
        },
        "band");
  };

  for (int trial = 0; trial < trials; ++trial) {
    const auto start = Clock::now();
    const auto a = band(rng()), b = band(rng());
    const std::size_t u = 1 + rng() % 3;
    std::vector<long> is, js;
    long top_i = 6, top_j = 8;
    for (std::size_t k = 0; k < u; ++k) {
      top_i -= 1 + static_cast<long>(rng() % 2);
      top_j -= 1 + static_cast<long>(rng() % 2);
      is.push_back(top_i);
      js.push_back(top_j);
    }
    const auto cb = cauchy_binet(a, b, is, js);
    const long lo = std::min(is.back(), js.back()) - 1, hi = std::max(is.front(), js.front()) + 1;
    const PolyMatrix ab = window_product(a, b, lo, hi);
    PolyMatrix minor(field, u, u);
    for (std::size_t x = 0; x < u; ++x)
      for (std::size_t y = 0; y < u; ++y)
        minor.at(x, y) = ab.at(static_cast<std::size_t>(is[x] - lo), static_cast<std::size_t>(js[y] - lo));
    const Poly direct = det(minor);
    std::string rows, cols;
    for (long i : is) rows += (rows.empty() ? "" : ",") + std::to_string(i);
    for (long j : js) cols += (cols.empty() ? "" : ",") + std::to_string(j);
    out.push_back(poly_case({"cauchy-binet", q, u, rows, cols, "trial " + std::to_string(trial)},
                            cb.determinant == direct ? cb.sum : cb.determinant, direct, start, opts));
  }

  const auto random_matrix = [&](std::size_t u) {
    PolyMatrix m(field, u, u);
    for (std::size_t i = 0; i < u; ++i)
      for (std::size_t j = 0; j < u; ++j) m.at(i, j) = random_poly(field, rng, 2, 2, 2);
    return m;
  };

  for (int trial = 0; trial < trials; ++trial) {
    const auto start = Clock::now();
    const std::size_t u = 1 + rng() % 3;
    const auto parts = partitions_up_to(6, u);
    const Partition& lambda = parts[rng() % parts.size()];
    const Partition& nu = parts[rng() % parts.size()];
    const PolyMatrix c = random_matrix(u);
    Poly rhs = det(c);
    if (odd(lambda.weight() - nu.weight())) rhs = -rhs;
    out.push_back(poly_case({"detscalesign", q, u, lambda.to_string(), nu.to_string(), "trial " + std::to_string(trial)},
                            scale_sign_det(c, lambda, nu, u), rhs, start, opts));
  }

  for (int trial = 0; trial < trials; ++trial) {
    const auto start = Clock::now();
    const std::size_t u = 2 + rng() % 3;
    std::vector<std::size_t> xs, ys;
    while (xs.size() + ys.size() <= u) {
      std::vector<std::size_t> all(u);
      std::iota(all.begin(), all.end(), std::size_t{1});
      std::shuffle(all.begin(), all.end(), rng);
      xs.assign(all.begin(), all.begin() + static_cast<long>(1 + rng() % u));
      std::shuffle(all.begin(), all.end(), rng);
      ys.assign(all.begin(), all.begin() + static_cast<long>(1 + rng() % u));
    }
    PolyMatrix c = random_matrix(u);
    for (std::size_t x : xs)
      for (std::size_t y : ys) c.at(x - 1, y - 1) = Poly::zero(field);
    const Poly d = det(c);
    const bool claimed = too_many_zeroes_check(c, xs, ys);
    CaseReport r = poly_case({"too-many-zeroes", q, u, "", "", "trial " + std::to_string(trial)}, d, Poly(field), start,
                             opts);
    r.passed = r.passed && claimed;
    out.push_back(std::move(r));
  }
  return out;
}

CaseReport check_h_e_inverse(SchurContext& ctx, const Subspace& v, long lo, long hi) {
  const auto start = Clock::now();
  const PolyMatrix lhs = window_product(ctx.h_matrix(v), ctx.e_matrix(v), lo, hi);
  const PolyMatrix rhs = dense_window(TriangularZMatrix::identity(ctx.field()), lo, hi);
  const bool ok = lhs == rhs;
  return text_case({"h-e-inverse", ctx.field()->q(), v.dim(), std::to_string(lo), std::to_string(hi), v.to_string()},
                   matrix_text(lhs), matrix_text(rhs), ok, start, {});
}

CaseReport check_quotient_factorization(SchurContext& ctx, const Subspace& v, const Subspace& u) {
  const auto start = Clock::now();
  const Subspace vu = internal_quotient(v, u);
  const int d = static_cast<int>(v.dim() - u.dim());
  const TriangularZMatrix hu = ctx.h_matrix(u);
  const TriangularZMatrix twisted(ctx.field(), [&hu, d](long i, long j) { return frobenius(hu(i, j), d); }, "twisted");
  const long w = static_cast<long>(v.dim()) + 3;
  const PolyMatrix lhs = dense_window(ctx.h_matrix(v), -w, w);
  const PolyMatrix rhs = window_product(ctx.h_matrix(vu), twisted, -w, w);
  const bool ok = lhs == rhs;
  return text_case({"quotient-factorization", ctx.field()->q(), v.dim(), std::to_string(-w), std::to_string(w),
                    v.to_string() + " | " + u.to_string()},
                   matrix_text(lhs), matrix_text(rhs), ok, start, {});
}

std::vector<CaseReport> check_subspace_calculus(SchurContext& ctx, const Subspace& v, int max_weight,
                                                const ReportOptions& opts) {
  std::vector<CaseReport> out;
  const FieldRef& f = ctx.field();
  const unsigned q = f->q();
  const std::size_t n = v.dim();
  const Poly pv = pi_product(v);
  std::size_t index = 0;
  for (const auto& flag : enumerate_flags(v)) {
    const std::string label = "flag " + std::to_string(index++);
    auto start = Clock::now();
    Poly product = Poly::one(f);
    for (std::size_t i = 1; i < flag.chain.size(); ++i) product *= pi_product(internal_quotient(flag.chain[i - 1], flag.chain[i]));
    out.push_back(poly_case({"pi-flag", q, n, "", "", v.to_string() + " | " + label}, pv, product, start, opts));

    for (std::size_t a = 0; a < flag.chain.size(); ++a)
      for (std::size_t b = a; b < flag.chain.size(); ++b) {
        const Subspace& u = flag.chain[a];
        const Subspace& t = flag.chain[b];
        start = Clock::now();
        const std::string lhs = internal_quotient(internal_quotient(v, t), internal_quotient(u, t)).to_string();
        const std::string rhs = internal_quotient(v, u).to_string();
        out.push_back(text_case({"tower", q, n, std::to_string(b), std::to_string(a), v.to_string() + " | " + label}, lhs,
                                rhs, lhs == rhs, start, opts));

        start = Clock::now();
        Poly coset = Poly::one(f);
        for (const auto& w : enumerate_vectors(u))
          if (!t.contains(w)) coset *= w;
        out.push_back(poly_case({"coset-product", q, n, std::to_string(a), std::to_string(b), v.to_string() + " | " + label},
                                pi_product(internal_quotient(u, t)), coset, start, opts));
      }
  }

  for (const auto& line : enumerate_lines(v))
    for (long r = 1; r <= 3; ++r) {
      const auto start = Clock::now();
      out.push_back(poly_case({"hook-step", q, 1, std::to_string(r), "", line.to_string()},
                              pi_product(line) * frobenius(ctx.h_r(r - 1, line), 1), -ctx.h_r(r, line), start, opts));
    }

  for (const auto& lambda : partitions_up_to(max_weight, n)) {
    if (lambda.length() != n || n == 0) continue;
    const auto start = Clock::now();
    out.push_back(poly_case({"fullhouse", q, n, lambda.to_string(), "", v.to_string()}, ctx.fullhouse_reduce(lambda, v),
                            ctx.schur_S(lambda, v), start, opts));
  }
  return out;
}

std::vector<CaseReport> check_structural(SchurContext& ctx, const Subspace& v, int max_weight, std::uint64_t seed,
                                         int changes, const ReportOptions& opts) {
  std::vector<CaseReport> out;
  const FieldRef& f = ctx.field();
  const unsigned q = f->q();
  const std::size_t n = v.dim();
  std::mt19937_64 rng(seed);
  const auto parts = partitions_up_to(max_weight, n);

  for (const auto& lambda : parts) {
    const auto start = Clock::now();
    const Poly s = ctx.schur_S(lambda, v);
    Poly other = s;
    const int ni = static_cast<int>(n);
    for (int c = 0; c < changes && other == s && n > 0; ++c) {
      const auto b = random_basis(v, rng);
      other = exact_div(alternant_of(b, pad_and_add(lambda, ni)), alternant_of(b, delta(ni)));
    }
    out.push_back(poly_case({"gl-invariance", q, n, lambda.to_string(), "", v.to_string()}, s, other, start, opts));
  }

  for (const auto& lambda : parts)
    for (const auto& mu : parts) {
      const std::size_t k = std::max(lambda.length(), mu.length());
      if (!h_within_budget(q, n, max_h_index(lambda, mu, k + 1))) continue;
      const Header base{"", q, n, lambda.to_string(), mu.to_string(), v.to_string()};
      auto start = Clock::now();
      const Poly s = ctx.skew_S(lambda, mu, v);
      Header h = base;
      h.identity = "k-independence";
      out.push_back(poly_case(h, s, ctx.skew_S(lambda, mu, v, k + 1), start, opts));
      if (!contains(lambda, mu)) {
        start = Clock::now();
        h.identity = "skew-vanishing";
        out.push_back(poly_case(h, s, Poly(f), start, opts));
      }
      bool in_range = true;
      for (std::size_t i = 1; i <= k; ++i) {
        const int d = lambda.part(i) - mu.part(i);
        in_range = in_range && d >= 0 && d <= static_cast<int>(n);
      }
      if (!in_range) {
        start = Clock::now();
        h.identity = "tilde-vanishing";
        out.push_back(poly_case(h, ctx.tilde_S(lambda, mu, v), Poly(f), start, opts));
      }
    }
  return out;
}

CaseReport check_exact_div_roundtrip(const FieldRef& field, std::uint64_t seed, int pairs) {
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  Poly lhs(field), rhs(field);
  for (int i = 0; i < pairs && lhs == rhs; ++i) {
    const Poly a = random_poly(field, rng, 3, 4, 8);
    Poly b = random_poly(field, rng, 3, 3, 6);
    while (b.is_zero()) b = random_poly(field, rng, 3, 3, 6);
    rhs = a;
    lhs = exact_div(a * b, b);
  }
  return poly_case({"exact-div", field->q(), 3, "", "", std::to_string(pairs) + " pairs"}, lhs, rhs, start, {});
}

const std::vector<std::string>& sweep_identities() {
  static const std::vector<std::string> names{"vl-recursion", "straight-recursion", "flag-formula", "pieri",
                                              "coproduct",    "matrix",             "subspace",     "elementary",
                                              "structural"};
  return names;
}

void validate(const SweepConfig& cfg) {
  const auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  for (const auto& id : cfg.identities)
    if (id != "all" && std::find(sweep_identities().begin(), sweep_identities().end(), id) == sweep_identities().end())
      fail("unknown identity '" + id + "'");
  if (cfg.dim_min < 1 || cfg.dim_min > cfg.dim_max) fail("dimension range must satisfy 1 <= min <= max");
  if (cfg.dim_max > 4) fail("dimension " + std::to_string(cfg.dim_max) + " exceeds the ceiling 4");
  if (cfg.max_weight < 0 || cfg.max_weight > 6) fail("max weight must lie in 0..6");
  if (cfg.fields.empty() && !cfg.identities.empty()) fail("no fields given");
  for (const auto& spec : cfg.fields) {
    FieldRef f;
    try {
      f = Field::parse(spec);
    } catch (const Error& e) {
      fail("field '" + spec + "': " + e.what());
    }
    if (ipow(f->q(), static_cast<unsigned>(cfg.dim_max)) > cfg.enumeration_ceiling)
      fail("q^dim = " + std::to_string(ipow(f->q(), static_cast<unsigned>(cfg.dim_max))) +
           " exceeds the enumeration ceiling " + std::to_string(cfg.enumeration_ceiling));
  }
  if (cfg.term_limit == 0) fail("term limit must be positive");
}

SweepReport run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  SweepReport report;
  report.seed = cfg.seed;
  const auto selected = [&](const std::string& id) { return cfg.identities.count("all") || cfg.identities.count(id); };
  if (cfg.identities.empty()) return report;

  set_enumeration_ceiling(cfg.enumeration_ceiling);
  set_term_limit(cfg.term_limit);
  const ReportOptions& opts = cfg.report;

  struct Task {
    std::string identity;
    std::function<std::vector<CaseReport>()> run;
  };
  std::vector<Task> tasks;
  const auto add = [&](std::string identity, std::function<std::vector<CaseReport>()> run) {
    tasks.push_back({std::move(identity), std::move(run)});
  };
  std::vector<std::unique_ptr<SchurContext>> contexts;
  const auto one = [](CaseReport r) { return std::vector<CaseReport>{std::move(r)}; };

  for (std::size_t fi = 0; fi < cfg.fields.size(); ++fi) {
    const FieldRef f = Field::parse(cfg.fields[fi]);
    contexts.push_back(std::make_unique<SchurContext>(f));
    SchurContext* ctx = contexts.back().get();
    const std::uint64_t field_seed = cfg.seed * 1000003u + fi;

    if (selected("matrix")) {
      add("matrix", [f, field_seed, opts] { return check_matrix_lemmas(f, field_seed, 50, opts); });
    }
    if (selected("structural"))
      add("structural", [f, field_seed, one] { return one(check_exact_div_roundtrip(f, field_seed, 200)); });

    for (std::size_t n = cfg.dim_min; n <= cfg.dim_max; ++n) {
      const Subspace v = first_variables(f, n);
      const std::uint64_t case_seed = field_seed * 31u + n;
      const auto short_parts = partitions_up_to(cfg.max_weight, n - 1);
      const auto full_parts = partitions_up_to(cfg.max_weight, n);

      if (selected("vl-recursion"))
        for (const auto& lambda : short_parts)
          add("vl-recursion", [ctx, v, lambda, short_parts, opts] {
            std::vector<CaseReport> out;
            for (const auto& mu : short_parts)
              if (mu.weight() <= lambda.weight()) out.push_back(check_vl_recursion(*ctx, lambda, mu, v, {}, opts));
            return out;
          });
      if (selected("straight-recursion"))
        for (const auto& lambda : short_parts)
          add("straight-recursion", [ctx, v, lambda, opts, one] { return one(check_straight_recursion(*ctx, lambda, v, opts)); });
      if (selected("flag-formula"))
        for (const auto& lambda : full_parts)
          add("flag-formula", [ctx, v, lambda, opts, one] { return one(check_flag_formula(*ctx, lambda, v, opts)); });
      if (selected("pieri"))
        for (const auto& lambda : short_parts)
          add("pieri", [ctx, v, lambda, short_parts, opts] {
            std::vector<CaseReport> out;
            for (const auto& mu : short_parts) {
              if (mu.weight() > lambda.weight()) continue;
              auto r = check_pieri(*ctx, lambda, mu, v, opts);
              out.insert(out.end(), r.begin(), r.end());
            }
            return out;
          });
      if (selected("coproduct")) {
        std::vector<Subspace> subs;
        for (std::size_t k = 0; k <= n; ++k) subs.push_back(first_variables(f, k));
        if (n >= 2) {
          Poly sum(f);
          for (const auto& b : v.basis()) sum += b;
          subs.push_back(Subspace::span(f, {sum}));
        }
        const auto parts = partitions_up_to(std::min(cfg.max_weight, 3), n);
        for (const auto& u : subs)
          for (const auto& lambda : parts)
            add("coproduct", [ctx, v, u, lambda, parts, opts] {
              std::vector<CaseReport> out;
              for (const auto& mu : parts) out.push_back(check_coproduct(*ctx, lambda, mu, v, u, opts));
              return out;
            });
      }
      // Windows reach H_12, which is out of reach beyond dimension 2.
      if (selected("matrix") && n <= 2) {
        add("matrix", [ctx, v, one] { return one(check_h_e_inverse(*ctx, v, -6, 6)); });
        for (std::size_t k = 0; k <= n; ++k) {
          const Subspace u = first_variables(f, k);
          add("matrix", [ctx, v, u, one] { return one(check_quotient_factorization(*ctx, v, u)); });
        }
      }
      if (selected("subspace"))
        add("subspace", [ctx, v, cfg, opts] { return check_subspace_calculus(*ctx, v, cfg.max_weight, opts); });
      if (selected("elementary"))
        add("elementary", [f, n, case_seed, opts] { return check_elementary_lemmas(f, n, case_seed, opts); });
      if (selected("structural"))
        add("structural", [ctx, v, case_seed, cfg, opts] {
          return check_structural(*ctx, v, std::min(cfg.max_weight, 3), case_seed, 10, opts);
        });
    }
  }
  if (selected("elementary")) add("elementary", [] { return check_perm_lemma(6); });

  std::vector<std::vector<CaseReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        CaseReport r;
        r.identity = tasks[i].identity;
        r.lhs = std::string("exception: ") + e.what();
        r.rhs = "no exception";
        r.basis = "task " + std::to_string(i);
        results[i] = {r};
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : results)
    for (auto& c : r) {
      if (!cfg.timing) c.millis = 0;
      report.cases.push_back(std::move(c));
    }
  std::stable_sort(report.cases.begin(), report.cases.end(), [](const CaseReport& a, const CaseReport& b) {
    return std::tie(a.identity, a.q, a.n, a.lambda, a.mu, a.basis) < std::tie(b.identity, b.q, b.n, b.lambda, b.mu, b.basis);
  });
  report.total = report.cases.size();
  for (const auto& c : report.cases) {
    (c.passed ? report.passed : report.failed)++;
    report.fractional += c.fractional;
  }
  report.millis = cfg.timing ? elapsed_ms(start) : 0;
  return report;
}

SweepConfig sweep_config_from_json(const std::string& text) {
  const auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config must be a JSON object");
  static const std::set<std::string> known{"fields",    "dim_min",   "dim_max",    "max_weight",
                                           "identities", "seed",     "enumeration_ceiling", "term_limit",
                                           "threads",   "timing",    "max_value_chars"};
  SweepConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.count(key)) fail("unknown config key '" + key + "'");
      if (key == "fields") cfg.fields = value.get<std::vector<std::string>>();
      else if (key == "dim_min") cfg.dim_min = value.get<std::size_t>();
      else if (key == "dim_max") cfg.dim_max = value.get<std::size_t>();
      else if (key == "max_weight") cfg.max_weight = value.get<int>();
      else if (key == "identities") {
        const auto ids = value.get<std::vector<std::string>>();
        cfg.identities = std::set<std::string>(ids.begin(), ids.end());
      } else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "enumeration_ceiling") cfg.enumeration_ceiling = value.get<std::size_t>();
      else if (key == "term_limit") cfg.term_limit = value.get<std::size_t>();
      else if (key == "threads") cfg.threads = value.get<unsigned>();
      else if (key == "timing") cfg.timing = value.get<bool>();
      else if (key == "max_value_chars") cfg.report.max_value_chars = value.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config value has the wrong type: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

namespace {

nlohmann::ordered_json case_json(const CaseReport& r) {
  return {{"identity", r.identity}, {"q", r.q},       {"n", r.n},       {"lambda", r.lambda},
          {"mu", r.mu},             {"basis", r.basis}, {"status", r.passed ? "pass" : "fail"},
          {"lhs", r.lhs},           {"rhs", r.rhs},   {"millis", r.millis}};
}

}  // namespace

std::string case_to_json(const CaseReport& r) { return case_json(r).dump(); }

std::string report_to_json(const SweepReport& r) {
  nlohmann::ordered_json j;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) j["cases"].push_back(case_json(c));
  j["total"] = r.total;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["fractional"] = r.fractional;
  j["seed"] = r.seed;
  j["millis"] = r.millis;
  return j.dump(2);
}

}  // namespace qschur
