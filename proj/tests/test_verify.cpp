#include "doctest.h"

#include "qschur/verify.hpp"

using namespace qschur;

namespace {

Poly P(const FieldRef& f, std::string_view s) { return Poly::parse(f, s); }
Subspace S(const FieldRef& f, std::string_view s) { return Subspace::parse(f, s); }
Partition L(std::string_view s) { return Partition::parse(s); }

bool all_pass(const std::vector<CaseReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return !rs.empty();
}

// A copy of the Pieri sum using (-1)^(|lambda| - |nu| + 1). Over all lines the
// addends with nu != lambda cancel whatever their sign, so only a sign error
// reaching the nu = lambda addend can show up.
Poly pieri_with_sign_error(SchurContext& ctx, const Partition& lambda, const Partition& mu, const Subspace& v,
                           const Poly& line) {
  Poly total(ctx.field());
  for (const auto& nu : vertical_strip_subpartitions(lambda)) {
    Poly term = pow(line, q_exponent(lambda, nu, static_cast<int>(v.dim()), ctx.field()->q())) * ctx.skew_S(nu, mu, v);
    total += (lambda.weight() - nu.weight()) % 2 == 0 ? -term : term;
  }
  return total;
}

}  // namespace

TEST_CASE("V/L recursion reports") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  auto r = check_vl_recursion(ctx, L("1"), L(""), v);
  CHECK(r.passed);
  CHECK(r.lhs == "x^2 + x*y + y^2");
  CHECK(r.identity == "vl-recursion");
  CHECK(r.q == 2);
  CHECK(r.n == 2);
  CHECK(r.basis == "x; y");
  CHECK(check_vl_recursion(ctx, L("1"), L("1"), v).lhs == "1");
  CHECK(check_vl_recursion(ctx, L("1"), L("1"), v).passed);
  auto z = check_vl_recursion(ctx, L("1"), L("2"), S(f2, "x; y; z"));
  CHECK(z.passed);
  CHECK(z.lhs == "0");
  CHECK_THROWS_AS(check_vl_recursion(ctx, L("1,1"), L(""), v), Error);
}

TEST_CASE("the harness catches a sign error in the Pieri sum") {
  auto f3 = Field::prime(3);
  SchurContext ctx(f3);
  for (auto text : {"x; y", "x; y; z"}) {
    const auto v = S(f3, text);
    const auto lambda = L("1");
    const auto mu = L("");
    const auto honest = [&](const Subspace& line) { return ctx.pieri_expand(lambda, mu, v, line.basis().front()); };
    const auto broken = [&](const Subspace& line) {
      return pieri_with_sign_error(ctx, lambda, mu, v, line.basis().front());
    };
    CHECK(check_vl_recursion(ctx, lambda, mu, v, honest).passed);
    ReportOptions tight;
    tight.max_value_chars = 8;
    const auto caught = check_vl_recursion(ctx, lambda, mu, v, broken, tight);
    CHECK_FALSE(caught.passed);
    // Failing reports keep both sides verbatim.
    CHECK(P(f3, caught.lhs) == ctx.schur_S(lambda, v));
    CHECK(caught.rhs.find("elided") == std::string::npos);
  }
}

TEST_CASE("straight recursion with the transport route") {
  auto f2 = Field::prime(2);
  auto f3 = Field::prime(3);
  SchurContext c2(f2), c3(f3);
  CHECK(check_straight_recursion(c2, L("1"), S(f2, "x; y")).passed);
  CHECK(check_straight_recursion(c2, L(""), S(f2, "x; y")).passed);
  CHECK(check_straight_recursion(c3, L("1"), S(f3, "x; y")).passed);
  CHECK(check_straight_recursion(c3, L("2"), S(f3, "x + y; z")).passed);
  CHECK(check_straight_recursion(c2, L("2,1"), S(f2, "x; y; z")).passed);
  CHECK_THROWS_AS(check_straight_recursion(c2, L("1,1"), S(f2, "x; y")), Error);
}

TEST_CASE("flag formula") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  CHECK(check_flag_formula(ctx, L("1"), S(f2, "x; y")).passed);
  CHECK(check_flag_formula(ctx, L("1,1"), S(f2, "x; y")).passed);
  CHECK(check_flag_formula(ctx, L("1,1"), S(f2, "x; y")).lhs == "x^2*y + x*y^2");
  CHECK(check_flag_formula(ctx, L(""), S(f2, "")).passed);
  CHECK(check_flag_formula(ctx, L("2,1"), S(f2, "x; y; z")).passed);
  auto f3 = Field::prime(3);
  SchurContext c3(f3);
  CHECK(check_flag_formula(c3, L("2,1"), S(f3, "x; y")).passed);
}

TEST_CASE("pieri and coproduct reports") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  auto rs = check_pieri(ctx, L("1"), L(""), v);
  CHECK(rs.size() == 3);
  CHECK(all_pass(rs));
  for (auto u : {"", "x", "x + y", "x; y"})
    for (auto lam : {"", "1", "2", "1,1", "2,1", "3"})
      for (auto mu : {"", "1", "2"}) CHECK(check_coproduct(ctx, L(lam), L(mu), v, S(f2, u)).passed);
}

TEST_CASE("elementary lemmas") {
  for (auto spec : {"q=2", "q=3", "q=4", "q=5"}) {
    auto f = Field::parse(spec);
    CHECK(all_pass(check_elementary_lemmas(f, 2, 7)));
  }
  auto f3 = Field::prime(3);
  bool seen = false;
  for (const auto& r : check_elementary_lemmas(f3, 2, 1))
    if (r.identity == "pispanv" && r.basis == "x") {
      CHECK(r.lhs == "2*x^2");
      seen = true;
    }
  CHECK(seen);
  CHECK(all_pass(check_elementary_lemmas(Field::prime(2), 3, 5)));
  CHECK(all_pass(check_perm_lemma(6)));
}

TEST_CASE("matrix and subspace calculus") {
  auto f2 = Field::prime(2);
  auto f3 = Field::prime(3);
  CHECK(all_pass(check_matrix_lemmas(f2, 1, 10)));
  CHECK(all_pass(check_matrix_lemmas(f3, 2, 10)));
  SchurContext ctx(f2);
  const auto v = S(f2, "x; y");
  CHECK(check_h_e_inverse(ctx, v, -4, 4).passed);
  CHECK(check_quotient_factorization(ctx, v, S(f2, "x")).passed);
  CHECK(check_quotient_factorization(ctx, v, S(f2, "")).passed);
  CHECK(all_pass(check_subspace_calculus(ctx, v, 4)));
  SchurContext c3(f3);
  CHECK(all_pass(check_subspace_calculus(c3, S(f3, "x; y"), 4)));
}

TEST_CASE("structural properties") {
  auto f2 = Field::prime(2);
  SchurContext ctx(f2);
  CHECK(all_pass(check_structural(ctx, S(f2, "x; y; z"), 3, 9)));
  CHECK(check_exact_div_roundtrip(f2, 4, 200).passed);
  CHECK(check_exact_div_roundtrip(Field::prime(3), 4, 50).passed);
}

TEST_CASE("sweep configuration") {
  SweepConfig empty;
  const auto r = run_sweep(empty);
  CHECK(r.total == 0);
  CHECK(r.ok());

  SweepConfig big;
  big.identities = {"all"};
  big.dim_max = 9;
  CHECK_THROWS_AS(validate(big), Error);
  SweepConfig unknown;
  unknown.identities = {"nonsense"};
  CHECK_THROWS_AS(validate(unknown), Error);
  SweepConfig ceiling;
  ceiling.identities = {"all"};
  ceiling.fields = {"q=5"};
  ceiling.dim_max = 4;
  CHECK_THROWS_AS(validate(ceiling), Error);
  SweepConfig bad_field;
  bad_field.identities = {"all"};
  bad_field.fields = {"q=6"};
  CHECK_THROWS_AS(validate(bad_field), Error);

  const auto cfg = sweep_config_from_json(R"({"fields": ["q=3"], "dim_min": 2, "dim_max": 2, "max_weight": 2,
                                              "identities": ["vl-recursion"], "seed": 5})");
  CHECK(cfg.fields == std::vector<std::string>{"q=3"});
  CHECK(cfg.max_weight == 2);
  CHECK(cfg.seed == 5);
  CHECK(cfg.identities.count("vl-recursion"));
  CHECK_THROWS_AS(sweep_config_from_json("{\"colour\": 1}"), Error);
  CHECK_THROWS_AS(sweep_config_from_json("{\"dim_max\": \"x\"}"), Error);
  CHECK_THROWS_AS(sweep_config_from_json("[1"), Error);
}

TEST_CASE("sweeps are deterministic and their values parse back") {
  SweepConfig cfg;
  cfg.fields = {"q=2", "q=3"};
  cfg.dim_min = 2;
  cfg.dim_max = 2;
  cfg.max_weight = 3;
  cfg.identities = {"all"};
  cfg.threads = 2;
  const auto a = run_sweep(cfg);
  cfg.threads = 1;
  const auto b = run_sweep(cfg);
  CHECK(a.ok());
  CHECK(a.total > 100);
  CHECK(report_to_json(a) == report_to_json(b));
  const std::set<std::string> poly_ids{"vl-recursion", "straight-recursion", "flag-formula", "pieri", "coproduct"};
  std::size_t parsed = 0;
  for (const auto& c : a.cases) {
    if (!poly_ids.count(c.identity) || c.lhs.find("elided") != std::string::npos) continue;
    auto f = Field::prime(c.q);
    CHECK(Poly::parse(f, c.lhs).to_string() == c.lhs);
    CHECK(Poly::parse(f, c.rhs).to_string() == c.rhs);
    ++parsed;
  }
  CHECK(parsed > 50);
  CHECK(case_to_json(a.cases.front()).find("\"status\":\"pass\"") != std::string::npos);
}
