#include "doctest.h"

#include "qschur/schur.hpp"

#include <random>

using namespace qschur;

namespace {

Poly P(const FieldRef& f, std::string_view s) { return Poly::parse(f, s); }
Subspace S(const FieldRef& f, std::string_view s) { return Subspace::parse(f, s); }
Partition L(std::string_view s) { return Partition::parse(s); }

// Random element of GL_n(F_q) applied to the basis of v.
std::vector<Poly> random_basis(const Subspace& v, std::mt19937_64& rng) {
  const auto elems = field_enumerate(v.field());
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  while (true) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      Poly w(v.field());
      for (const auto& b : v.basis()) w += Poly::constant(elems[pick(rng)]) * b;
      out.push_back(w);
    }
    if (Subspace::span(v.field(), out).dim() == v.dim()) return out;
  }
}

// Integer degree sum_i (q^lambda_i - 1) q^(n - i).
std::uint64_t expected_degree(const Partition& lambda, std::size_t n, std::uint64_t q) {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= lambda.length(); ++i) {
    std::uint64_t a = 1, b = 1;
    for (int k = 0; k < lambda.part(i); ++k) a *= q;
    for (std::size_t k = i; k < n; ++k) b *= q;
    total += (a - 1) * b;
  }
  return total;
}

std::vector<Partition> small_partitions(int max_weight, std::size_t max_len) {
  return partitions_up_to(max_weight, max_len);
}

}  // namespace

TEST_CASE("alternants and universal quotients") {
  auto f2 = Field::prime(2);
  CHECK(alternant(f2, {0}) == P(f2, "x1"));
  CHECK(alternant(f2, {1, 0}) == P(f2, "x1^2*x2 + x1*x2^2"));
  CHECK(alternant(f2, {2, 0}) == P(f2, "x1^4*x2 + x1*x2^4"));
  SchurContext ctx(f2);
  CHECK(ctx.universal_schur(L(""), 2) == Poly::one(f2));
  CHECK(ctx.universal_schur(L("1"), 2) == P(f2, "x1^2 + x1*x2 + x2^2"));
  CHECK(ctx.universal_schur(L("1,1"), 2) == P(f2, "x1^2*x2 + x1*x2^2"));
  CHECK_THROWS_AS(ctx.universal_schur(L("1,1,1"), 2), Error);
}

TEST_CASE("schur_S, h_r and e_r examples") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  CHECK(ctx.schur_S(L(""), v) == Poly::one(f2));
  CHECK(ctx.schur_S(L("1"), v) == P(f2, "x^2 + x*y + y^2"));
  CHECK(ctx.schur_S(L("1,1,1"), v).is_zero());
  CHECK(ctx.h_r(-1, v).is_zero());
  CHECK(ctx.e_r(0, v) == Poly::one(f2));
  CHECK(ctx.e_r(2, v) == P(f2, "x^2*y + x*y^2"));
  CHECK(ctx.e_r(2, v) == pi_product(v));
  CHECK(ctx.e_r(3, v).is_zero());
  const auto l = S(f2, "x");
  CHECK(ctx.e_r(1, l) == P(f2, "x"));
  CHECK(ctx.e_r(1, l) == -pi_product(l));
  CHECK(ctx.h_r(0, S(f2, "")) == Poly::one(f2));
  CHECK(ctx.h_r(2, S(f2, "")).is_zero());
}

TEST_CASE("H_r on a line is a product of Frobenius twists of -pi") {
  for (unsigned q : {2u, 3u, 5u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    for (auto text : {"x", "x + y", "2*x + z"}) {
      const auto u = S(f, text);
      Poly expected = Poly::one(f);
      for (long r = 0; r <= 3; ++r) {
        CHECK(ctx.h_r(r, u) == expected);
        expected = expected * frobenius(-pi_product(u), static_cast<int>(r));
      }
    }
  }
}

TEST_CASE("E_i are the signed coefficients of f_U") {
  for (auto spec : {"q=2", "q=3", "q=4"}) {
    auto f = Field::parse(spec);
    SchurContext ctx(f);
    for (auto text : {"x", "x; y", "x + y; z", "x; y; z"}) {
      const auto u = S(f, text);
      if (f->q() > 2 && u.dim() == 3) continue;
      const UniPoly fu = additive_poly(u);
      const std::size_t n = u.dim();
      for (std::size_t i = 0; i <= n; ++i) {
        std::uint64_t e = 1;
        for (std::size_t k = i; k < n; ++k) e *= f->q();
        Poly c = fu.coeff(QExponent::integer(e, f->q()));
        if (i % 2 == 1) c = -c;
        CHECK(ctx.e_r(static_cast<long>(i), u) == c);
      }
      CHECK(ctx.e_r(static_cast<long>(n), u) == (n % 2 ? -pi_product(u) : pi_product(u)));
    }
  }
}

TEST_CASE("degree formula and agreement with substitution") {
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    for (auto text : {"x", "x; y", "x + y; z", "x; y; z"}) {
      const auto v = S(f, text);
      for (const auto& lambda : small_partitions(q == 2 ? 4 : 3, v.dim())) {
        const Poly s = ctx.schur_S(lambda, v);
        QExponent d;
        REQUIRE(s.homogeneous_degree(d));
        CHECK(d == QExponent::integer(expected_degree(lambda, v.dim(), q), q));
        CHECK(s == ctx.schur_S_by_substitution(lambda, v));
      }
    }
  }
}

TEST_CASE("GL invariance") {
  std::mt19937_64 rng(11);
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    for (auto text : {"x; y", "x + y; y + z", "x; y; z"}) {
      const auto v = S(f, text);
      for (const auto& lambda : small_partitions(q == 2 ? 3 : 2, v.dim())) {
        const Poly s = ctx.schur_S(lambda, v);
        const int n = static_cast<int>(v.dim());
        for (int trial = 0; trial < 10; ++trial) {
          const auto b = random_basis(v, rng);
          CHECK(exact_div(alternant_of(b, pad_and_add(lambda, n)), alternant_of(b, delta(n))) == s);
        }
      }
    }
  }
}

TEST_CASE("universal values commute with injective substitution") {
  std::mt19937_64 rng(3);
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    const auto ambient = S(f, "x; y; z; w");
    for (std::size_t n = 1; n <= 2; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<Poly> images;
        do {
          images.clear();
          auto b = random_basis(ambient, rng);
          images.assign(b.begin(), b.begin() + static_cast<long>(n));
        } while (Subspace::span(f, images).dim() != n);
        const auto target = Subspace::span(f, images);
        for (const auto& lambda : small_partitions(2, n))
          CHECK(evaluate_morphism(ctx.universal_schur(lambda, n), images) == ctx.schur_S(lambda, target));
      }
    }
  }
}

TEST_CASE("skew and tilde examples") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  for (const auto& lambda : small_partitions(3, 2)) CHECK(ctx.skew_S(lambda, lambda, v) == Poly::one(f2));
  CHECK(ctx.skew_S(L("1"), L("2"), v).is_zero());
  CHECK(ctx.skew_S(L("1"), L(""), v) == P(f2, "x^2 + x*y + y^2"));
  const auto u = S(f2, "x");
  for (const auto& lambda : small_partitions(3, 2)) CHECK(ctx.tilde_S(lambda, lambda, u) == Poly::one(f2));
  CHECK(ctx.tilde_S(L("1"), L(""), u) == P(f2, "x"));
  CHECK(ctx.tilde_S(L("2"), L(""), u).is_zero());
  CHECK_THROWS_AS(ctx.skew_S(L("2,1"), L(""), v, 1), Error);
}

TEST_CASE("skew laws: empty mu, k independence, vanishing") {
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    for (auto text : {"x", "x; y", "x + y; y + z"}) {
      const auto v = S(f, text);
      const auto parts = small_partitions(3, 3);
      for (const auto& lambda : parts) {
        CHECK(ctx.skew_S(lambda, Partition(), v) == ctx.schur_S(lambda, v));
        for (const auto& mu : parts) {
          const Poly s = ctx.skew_S(lambda, mu, v);
          const std::size_t k = std::max(lambda.length(), mu.length());
          CHECK(ctx.skew_S(lambda, mu, v, k + 1) == s);
          if (!contains(lambda, mu)) CHECK(s.is_zero());
          bool in_range = true;
          for (std::size_t i = 1; i <= k; ++i) {
            const int d = lambda.part(i) - mu.part(i);
            if (d < 0 || d > static_cast<int>(v.dim())) in_range = false;
          }
          if (!in_range) CHECK(ctx.tilde_S(lambda, mu, v).is_zero());
        }
      }
    }
  }
}

TEST_CASE("tilde on a line: vertical strips give twisted -pi products") {
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext ctx(f);
    const auto u = S(f, "x + y");
    const auto parts = small_partitions(4, 3);
    for (const auto& lambda : parts)
      for (const auto& mu : parts) {
        Poly expected(f);
        if (contains(lambda, mu) && is_vertical_strip(lambda, mu)) {
          expected = Poly::one(f);
          for (std::size_t i = 1; i <= lambda.length(); ++i)
            if (lambda.part(i) != mu.part(i))
              expected = expected * frobenius(-pi_product(u), lambda.part(i) - static_cast<int>(i));
        }
        CHECK(ctx.tilde_S(lambda, mu, u) == expected);
      }
  }
}

TEST_CASE("H and E matrices") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  const auto h = ctx.h_matrix(v);
  const auto e = ctx.e_matrix(v);
  for (long i = -4; i <= 4; ++i) {
    CHECK(h(i, i) == Poly::one(f2));
    if (i > -4) CHECK(h(i, i - 1).is_zero());
  }
  CHECK(window_product(h, e, -4, 4) == dense_window(TriangularZMatrix::identity(f2), -4, 4));
  auto f3 = Field::prime(3);
  SchurContext ctx3(f3);
  const auto w = S(f3, "x + y; z");
  CHECK(window_product(ctx3.e_matrix(w), ctx3.h_matrix(w), -3, 3) ==
        dense_window(TriangularZMatrix::identity(f3), -3, 3));
}

TEST_CASE("quotient factorization of H") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  CHECK(ctx.quotient_factorization_check(v, S(f2, "")));
  CHECK(ctx.quotient_factorization_check(v, v));
  CHECK(ctx.quotient_factorization_check(v, S(f2, "x")));
  CHECK_THROWS_AS(ctx.quotient_factorization_check(v, S(f2, "z")), Error);
  auto f3 = Field::prime(3);
  SchurContext ctx3(f3);
  CHECK(ctx3.quotient_factorization_check(S(f3, "x; y"), S(f3, "x + 2*y")));
}

TEST_CASE("coproduct expansion") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  const auto u = S(f2, "x");
  const auto ex = ctx.coproduct_expand(L("1"), L(""), v, u);
  REQUIRE(ex.terms.size() == 2);
  CHECK(ex.total == P(f2, "x*y + y^2"));
  CHECK(ctx.coproduct_expand(L("2,1"), L("2,1"), v, v).total == Poly::one(f2));
  CHECK(ctx.coproduct_expand(L("1"), L("2"), v, u).total.is_zero());
  CHECK_THROWS_AS(ctx.coproduct_expand(L("1"), L(""), v, S(f2, "z")), Error);

  const auto parts = small_partitions(3, 3);
  for (auto utext : {"x", "y", "x + y"}) {
    const auto uu = S(f2, utext);
    const auto quotient = internal_quotient(v, uu);
    for (const auto& lambda : parts)
      for (const auto& mu : parts) {
        const auto e = ctx.coproduct_expand(lambda, mu, v, uu);
        CHECK(e.total == ctx.skew_S(lambda, mu, quotient));
        if (!contains(lambda, mu)) continue;
        // Terms with nu outside [mu, lambda] vanish.
        for (const auto& nu : partitions_up_to(lambda.weight() + 1, lambda.length() + 1)) {
          if (contains(lambda, nu) && contains(nu, mu)) continue;
          CHECK((ctx.skew_S(nu, mu, v) * ctx.tilde_S(lambda, nu, uu)).is_zero());
        }
      }
  }
}

TEST_CASE("pieri expansion") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  CHECK(ctx.pieri_expand(L(""), L(""), v, P(f2, "x")) == Poly::one(f2));
  CHECK(ctx.pieri_expand(L("1"), L(""), v, P(f2, "x")) == P(f2, "x*y + y^2"));
  CHECK(ctx.pieri_expand(L("1"), L(""), v, P(f2, "x + y")) == P(f2, "x*y"));
  CHECK(ctx.skew_S(L("1"), L(""), internal_quotient(v, S(f2, "x + y"))) == P(f2, "x*y"));
  CHECK_THROWS_AS(ctx.pieri_expand(L("1"), L(""), v, Poly(f2)), Error);
  CHECK_THROWS_AS(ctx.pieri_expand(L("1,1"), L(""), v, P(f2, "x")), Error);

  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext c(f);
    for (auto text : {"x; y", "x; y + z", "x; y; z"}) {
      const auto vv = S(f, text);
      if (q == 3 && vv.dim() == 3) continue;
      const auto parts = small_partitions(q == 2 ? 3 : 2, vv.dim() - 1);
      for (const auto& line : enumerate_lines(vv)) {
        const auto quotient = internal_quotient(vv, line);
        for (const auto& lambda : parts)
          for (const auto& mu : parts)
            CHECK(c.pieri_expand(lambda, mu, vv, line.basis().front()) == c.skew_S(lambda, mu, quotient));
      }
    }
  }
}

TEST_CASE("full column reduction and hook step") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  CHECK(ctx.fullhouse_reduce(L("1,1"), S(f2, "x; y")) == P(f2, "x^2*y + x*y^2"));
  CHECK(ctx.fullhouse_reduce(L("1"), S(f2, "x")) == P(f2, "x"));
  CHECK_THROWS_AS(ctx.fullhouse_reduce(L("1"), S(f2, "x; y")), Error);
  for (unsigned q : {2u, 3u}) {
    auto f = Field::prime(q);
    SchurContext c(f);
    for (auto text : {"x", "x; y", "x + y; z"}) {
      const auto v = S(f, text);
      for (const auto& lambda : partitions_up_to(q == 2 ? 5 : 4, v.dim()))
        if (lambda.length() == v.dim()) CHECK(c.fullhouse_reduce(lambda, v) == c.schur_S(lambda, v));
    }
  }

  CHECK(ctx.hook_step_check(S(f2, "x"), 1));
  CHECK(ctx.hook_step_check(S(f2, "x"), 2));
  CHECK(ctx.h_r(2, S(f2, "x")) == P(f2, "x^3"));
  auto f3 = Field::prime(3);
  SchurContext ctx3(f3);
  CHECK(ctx3.h_r(1, S(f3, "x")) == P(f3, "x^2"));
  for (long r = 1; r <= 4; ++r) CHECK(ctx3.hook_step_check(S(f3, "x + 2*y"), r));
  CHECK_THROWS_AS(ctx.hook_step_check(S(f2, "x; y"), 1), Error);
}
