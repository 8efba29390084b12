#include "doctest.h"

#include "qschur/gf.hpp"

#include <set>

using namespace qschur;

namespace {
// Integer reference arithmetic for prime fields, independent of the tables.
unsigned naive_pow_mod(unsigned a, unsigned m, unsigned p) {
  unsigned r = 1 % p;
  for (unsigned i = 0; i < m; ++i) r = r * a % p;
  return r;
}
}  // namespace

TEST_CASE("prime field listings") {
  auto f2 = Field::prime(2);
  auto f3 = Field::prime(3);
  auto l2 = field_enumerate(f2);
  REQUIRE(l2.size() == 2);
  CHECK(l2[0].is_zero());
  CHECK(l2[1] == FieldElement::one(f2));
  auto l3 = field_enumerate(f3);
  REQUIRE(l3.size() == 3);
  CHECK(l3[2].code() == 2);
}

TEST_CASE("F4 is closed and satisfies the field axioms") {
  auto f = Field::parse("q=2^2:1,1,1");
  CHECK(f->q() == 4);
  auto els = field_enumerate(f);
  REQUIRE(els.size() == 4);
  std::set<std::uint8_t> codes;
  for (auto& a : els) codes.insert(a.code());
  CHECK(codes.size() == 4);
  for (auto& a : els) {
    for (auto& b : els) {
      CHECK(codes.count((a + b).code()) == 1);
      CHECK(codes.count((a * b).code()) == 1);
      CHECK(a * b == b * a);
      for (auto& c : els) CHECK(a * (b + c) == a * b + a * c);
    }
    if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement::one(f));
  }
}

TEST_CASE("Frobenius fixes every element and the freshman's dream holds") {
  for (const char* spec : {"q=2", "q=3", "q=5", "q=4", "q=8", "q=9", "q=16", "q=25", "q=27"}) {
    auto f = Field::parse(spec);
    auto els = field_enumerate(f);
    CHECK(els.size() == f->q());
    for (auto& a : els) {
      CHECK(a.pow(f->q()) == a);
      for (auto& b : els) CHECK((a + b).pow(f->p()) == a.pow(f->p()) + b.pow(f->p()));
    }
  }
}

TEST_CASE("Wilson product equals minus one") {
  CHECK(wilson_product(Field::prime(3)).code() == 2);
  CHECK(wilson_product(Field::prime(2)).code() == 1);
  CHECK(wilson_product(Field::prime(5)).code() == 4);
  for (const char* spec : {"q=4", "q=7", "q=8", "q=9", "q=16", "q=25", "q=27"}) {
    auto f = Field::parse(spec);
    CHECK(wilson_product(f) == -FieldElement::one(f));
  }
}

TEST_CASE("power sums") {
  CHECK(power_sum(Field::prime(3), 1).is_zero());
  CHECK(power_sum(Field::prime(2), 0).is_zero());
  CHECK(power_sum(Field::prime(3), 2).code() == 2);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    auto f = Field::prime(p);
    for (unsigned i = 0; i < 3 * p; ++i) {
      unsigned s = 0;
      for (unsigned a = 0; a < p; ++a) s += (i == 0) ? 1 : naive_pow_mod(a, i, p);
      CHECK(power_sum(f, i).code() == s % p);
    }
  }
  for (const char* spec : {"q=4", "q=8", "q=9"}) {
    auto f = Field::parse(spec);
    for (unsigned i = 0; i + 1 < f->q(); ++i) CHECK(power_sum(f, i).is_zero());
    CHECK(!power_sum(f, f->q() - 1).is_zero());
  }
}

TEST_CASE("field spec parsing and validation") {
  CHECK(Field::parse("q=3")->q() == 3);
  CHECK(Field::parse("q=2^3")->q() == 8);
  CHECK(Field::parse("q=2^2:1,1,1")->same_as(*Field::parse("q=4")));
  CHECK_THROWS_AS(Field::parse("q=6"), Error);
  CHECK_THROWS_AS(Field::parse("q=2^2:1,0,1"), Error);  // t^2+1 = (t+1)^2
  CHECK_THROWS_AS(Field::parse("p=2"), Error);
  CHECK_THROWS_AS(Field::parse("q=128"), Error);
  auto f = Field::parse("q=3^2:1,0,1");
  CHECK(Field::parse(f->describe())->same_as(*f));
  try {
    Field::parse("q=2^2:1,0,1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidField);
  }
}

TEST_CASE("mixing fields is rejected") {
  auto a = FieldElement::one(Field::prime(2));
  auto b = FieldElement::one(Field::prime(3));
  CHECK_THROWS_AS(a + b, Error);
}
