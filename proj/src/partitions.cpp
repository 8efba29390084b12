#include "qschur/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace qschur {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error(ErrorKind::InvalidArgument, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(ErrorKind::InvalidArgument, "partition parts must weakly decrease");
  }
}

Partition Partition::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorKind::ParseError, "unbalanced brackets in partition '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + comma, v);
    if (ec != std::errc() || ptr != s.data() + comma)
      throw Error(ErrorKind::ParseError, "bad partition part in '" + std::string(text) + "'");
    parts.push_back(v);
    pos = comma + 1;
    if (comma + 1 == s.size()) throw Error(ErrorKind::ParseError, "trailing comma in '" + std::string(text) + "'");
  }
  try {
    return Partition(std::move(parts));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, std::string(text) + " is not a partition");
  }
}

int Partition::weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  if (parts_.empty()) return "[]";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

Composition delta(int n) {
  Composition d(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = n - 1 - i;
  return d;
}

Composition pad_and_add(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.length()) > n)
    throw Error(ErrorKind::LengthExceeded, "partition " + lambda.to_string() + " has more than " + std::to_string(n) + " parts");
  Composition c = delta(n);
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] += lambda.part(static_cast<std::size_t>(i) + 1);
  return c;
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> c(static_cast<std::size_t>(lambda.part(1)), 0);
  for (int p : lambda.parts())
    for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
  return Partition(std::move(c));
}

bool contains(const Partition& lambda, const Partition& mu) {
  if (mu.length() > lambda.length()) return false;
  for (std::size_t i = 1; i <= mu.length(); ++i)
    if (mu.part(i) > lambda.part(i)) return false;
  return true;
}

bool is_vertical_strip(const Partition& lambda, const Partition& mu) {
  if (!contains(lambda, mu)) return false;
  for (std::size_t i = 1; i <= lambda.length(); ++i)
    if (lambda.part(i) > mu.part(i) + 1) return false;
  return true;
}

Partition decrement_all(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.length()) > n)
    throw Error(ErrorKind::LengthExceeded, lambda.to_string() + " is longer than " + std::to_string(n));
  if (n <= 0 || lambda.part(static_cast<std::size_t>(n)) == 0)
    throw Error(ErrorKind::NotFullColumn, lambda.to_string() + " has no full column of height " + std::to_string(n));
  std::vector<int> parts = lambda.parts();
  for (int& p : parts) --p;
  return Partition(std::move(parts));
}

std::vector<Partition> vertical_strip_subpartitions(const Partition& lambda) {
  // Each row may lose its last cell; keep the choices that stay a partition.
  const std::size_t len = lambda.length();
  std::vector<Partition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    std::vector<int> parts = lambda.parts();
    bool ok = true;
    for (std::size_t i = 0; i < len; ++i)
      if (mask >> i & 1) --parts[i];
    for (std::size_t i = 1; i < len && ok; ++i) ok = parts[i] <= parts[i - 1];
    if (ok) out.emplace_back(std::move(parts));
  }
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() > b.weight();
    return a < b;
  });
  return out;
}

std::uint64_t q_exponent(const Partition& lambda, const Partition& nu, int n, unsigned q) {
  if (!is_vertical_strip(lambda, nu))
    throw Error(ErrorKind::NotVerticalStrip, lambda.to_string() + "/" + nu.to_string() + " is not a vertical strip");
  if (static_cast<int>(lambda.length()) >= n)
    throw Error(ErrorKind::LengthTooLong, lambda.to_string() + " needs fewer than " + std::to_string(n) + " parts");
  unsigned __int128 total = 0;
  for (std::size_t i = 1; i <= lambda.length(); ++i) {
    if (lambda.part(i) <= nu.part(i)) continue;
    unsigned __int128 term = q - 1;
    const int e = lambda.part(i) + n - 1 - static_cast<int>(i);
    for (int k = 0; k < e; ++k) {
      term *= q;
      if (term >> 64) throw Error(ErrorKind::Overflow, "q-exponent exceeds 64 bits");
    }
    total += term;
    if (total >> 64) throw Error(ErrorKind::Overflow, "q-exponent exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

std::optional<std::size_t> perm_witness(const std::vector<int>& alpha, const std::vector<int>& beta,
                                        const std::vector<int>& sigma) {
  const std::size_t n = alpha.size();
  if (beta.size() != n || sigma.size() != n) throw Error(ErrorKind::HypothesisViolated, "length mismatch");
  for (std::size_t i = 1; i < n; ++i)
    if (alpha[i] >= alpha[i - 1] || beta[i] >= beta[i - 1])
      throw Error(ErrorKind::HypothesisViolated, "alpha and beta must be strictly decreasing");
  for (std::size_t i = 0; i < n; ++i) {
    const int d = alpha[i] - beta[i];
    if (d != 0 && d != 1) throw Error(ErrorKind::HypothesisViolated, "alpha_i - beta_i must be 0 or 1");
  }
  std::vector<int> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i)) throw Error(ErrorKind::HypothesisViolated, "sigma is not a permutation");
  bool identity = true;
  for (std::size_t i = 0; i < n; ++i) identity = identity && sigma[i] == static_cast<int>(i);
  if (identity) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    const int d = alpha[i] - beta[static_cast<std::size_t>(sigma[i])];
    if (d != 0 && d != 1) return i + 1;
  }
  throw Error(ErrorKind::HypothesisViolated, "no witness for a non-identity permutation");
}

namespace {
void partitions_rec(int remaining, int max_part, std::size_t max_length, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (cur.size() == max_length) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, max_length, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int w, std::size_t max_length) {
  std::vector<Partition> out;
  if (w < 0) return out;
  std::vector<int> cur;
  partitions_rec(w, w, max_length, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int w, std::size_t max_length) {
  std::vector<Partition> out;
  for (int k = 0; k <= w; ++k) {
    auto level = partitions_of(k, max_length);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace qschur
