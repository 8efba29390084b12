#include "doctest.h"

#include "qschur/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace qschur;

namespace {

Partition L(std::vector<int> p) { return Partition(std::move(p)); }

// Young diagram as a set of (row, column) cells.
std::set<std::pair<int, int>> cells(const Partition& p) {
  std::set<std::pair<int, int>> s;
  for (std::size_t i = 1; i <= p.length(); ++i)
    for (int j = 1; j <= p.part(i); ++j) s.insert({static_cast<int>(i), j});
  return s;
}

bool strip_by_diagram(const Partition& lambda, const Partition& mu) {
  auto a = cells(lambda);
  auto b = cells(mu);
  if (!std::includes(a.begin(), a.end(), b.begin(), b.end())) return false;
  std::set<int> rows;
  for (auto& c : a)
    if (!b.count(c) && !rows.insert(c.first).second) return false;
  return true;
}

// Every partition fitting in a rows-by-cols box.
std::vector<Partition> in_box(int rows, int cols) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int max_part) -> void {
    out.emplace_back(cur);
    if (static_cast<int>(cur.size()) == rows) return;
    for (int p = 1; p <= max_part; ++p) {
      cur.push_back(p);
      self(self, p);
      cur.pop_back();
    }
  };
  rec(rec, cols);
  return out;
}

}  // namespace

TEST_CASE("delta and padding") {
  CHECK(delta(2) == Composition{1, 0});
  CHECK(pad_and_add(L({1}), 2) == Composition{2, 0});
  CHECK(pad_and_add(L({2, 1}), 3) == Composition{4, 2, 0});
  CHECK(pad_and_add(L({}), 3) == delta(3));
  CHECK_THROWS_AS(pad_and_add(L({1, 1, 1}), 2), Error);
}

TEST_CASE("parsing and printing") {
  CHECK(Partition::parse("2,1") == L({2, 1}));
  CHECK(Partition::parse("[]").empty());
  CHECK(Partition::parse("").empty());
  CHECK(Partition::parse("[3,1,0]") == L({3, 1}));
  CHECK(L({3, 1}).to_string() == "3,1");
  CHECK(L({}).to_string() == "[]");
  CHECK_THROWS_AS(Partition::parse("1,2"), Error);
  CHECK_THROWS_AS(Partition::parse("1,,2"), Error);
  CHECK_THROWS_AS(Partition::parse("a"), Error);
  CHECK_THROWS_AS(L({1, -1}), Error);
}

TEST_CASE("conjugates, containment and strips") {
  CHECK(conjugate(L({2, 1})) == L({2, 1}));
  CHECK(conjugate(L({3, 1})) == L({2, 1, 1}));
  CHECK(conjugate(L({})) == L({}));
  CHECK(is_vertical_strip(L({2, 1}), L({1, 1})));
  CHECK(!is_vertical_strip(L({3, 1}), L({1, 1})));
  CHECK(contains(L({2, 1}), L({2})));
  CHECK(!contains(L({2}), L({1, 1})));
  auto all = in_box(6, 6);
  for (const auto& lambda : all) {
    CHECK(conjugate(conjugate(lambda)) == lambda);
    for (const auto& mu : all) {
      CHECK(is_vertical_strip(lambda, mu) == strip_by_diagram(lambda, mu));
      auto a = cells(lambda), b = cells(mu);
      CHECK(contains(lambda, mu) == std::includes(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}

TEST_CASE("decrement_all") {
  CHECK(decrement_all(L({1, 1}), 2) == L({}));
  CHECK(decrement_all(L({3, 2, 1}), 3) == L({2, 1}));
  CHECK(decrement_all(L({2, 2}), 2) == L({1, 1}));
  try {
    decrement_all(L({2}), 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFullColumn);
  }
}

TEST_CASE("vertical strip subpartitions") {
  CHECK(vertical_strip_subpartitions(L({1})) == std::vector<Partition>{L({1}), L({})});
  CHECK(vertical_strip_subpartitions(L({})) == std::vector<Partition>{L({})});
  CHECK(vertical_strip_subpartitions(L({2, 1})) == std::vector<Partition>{L({2, 1}), L({1, 1}), L({2}), L({1})});
  auto all = in_box(5, 5);
  for (const auto& lambda : all) {
    std::vector<Partition> brute;
    for (const auto& nu : all)
      if (strip_by_diagram(lambda, nu)) brute.push_back(nu);
    auto got = vertical_strip_subpartitions(lambda);
    std::sort(brute.begin(), brute.end());
    auto sorted = got;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == brute);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].weight() >= got[i].weight());
    // One binary choice per distinct part value's bottom row: the count is
    // the product over maximal blocks of equal parts of (block size + 1).
    std::size_t expected = 1;
    for (std::size_t i = 0; i < lambda.length();) {
      std::size_t j = i;
      while (j < lambda.length() && lambda.parts()[j] == lambda.parts()[i]) ++j;
      expected *= (j - i + 1);
      i = j;
    }
    CHECK(got.size() == expected);
  }
}

TEST_CASE("q exponent") {
  CHECK(q_exponent(L({1}), L({}), 2, 2) == 2);
  CHECK(q_exponent(L({1}), L({1}), 2, 2) == 0);
  CHECK(q_exponent(L({2, 1}), L({1, 1}), 3, 2) == 8);
  CHECK(q_exponent(L({2, 1}), L({1}), 3, 3) == 2 * 27 + 2 * 3);
  CHECK_THROWS_AS(q_exponent(L({3}), L({1}), 3, 2), Error);
  CHECK_THROWS_AS(q_exponent(L({1, 1}), L({1}), 2, 2), Error);
}

TEST_CASE("permutation witnesses") {
  CHECK(perm_witness({2, 0}, {1, 0}, {1, 0}) == std::optional<std::size_t>(1));
  CHECK(!perm_witness({1, 0}, {1, 0}, {0, 1}).has_value());
  CHECK_THROWS_AS(perm_witness({1, 0}, {0, 1}, {1, 0}), Error);
  CHECK_THROWS_AS(perm_witness({3, 0}, {1, 0}, {1, 0}), Error);
  // Exhaustive over n = 3 with entries in -3..3.
  const int n = 3;
  std::vector<int> sigma(n);
  std::size_t checked = 0;
  for (int a0 = 3; a0 >= -3; --a0)
    for (int a1 = a0 - 1; a1 >= -3; --a1)
      for (int a2 = a1 - 1; a2 >= -3; --a2)
        for (int mask = 0; mask < 8; ++mask) {
          std::vector<int> alpha{a0, a1, a2};
          std::vector<int> beta{a0 - (mask & 1), a1 - (mask >> 1 & 1), a2 - (mask >> 2 & 1)};
          if (beta[0] <= beta[1] || beta[1] <= beta[2] || beta[2] < -3) continue;
          std::iota(sigma.begin(), sigma.end(), 0);
          do {
            auto w = perm_witness(alpha, beta, sigma);
            const bool id = sigma == std::vector<int>{0, 1, 2};
            CHECK(w.has_value() == !id);
            if (w) {
              const int d = alpha[*w - 1] - beta[static_cast<std::size_t>(sigma[*w - 1])];
              CHECK((d != 0 && d != 1));
            }
            ++checked;
          } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
  CHECK(checked > 0);
}

TEST_CASE("partition enumeration") {
  CHECK(partitions_of(4, 10).size() == 5);
  CHECK(partitions_of(4, 2).size() == 3);
  CHECK(partitions_up_to(3, 2).size() == 1 + 1 + 2 + 2);
  CHECK(partitions_of(0, 0).size() == 1);
}
