#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qschur/error.hpp"

namespace qschur {

/// A weakly decreasing tuple of positive integers. Stored without trailing
/// zeros; part(i) is 1-based and returns 0 past the length.
class Partition {
 public:
  Partition() = default;
  /// Trailing zeros are dropped; throws InvalidArgument on negative or
  /// increasing entries.
  explicit Partition(std::vector<int> parts);

  /// "3,1,1", "[3,1,1]", "[]" or "" (the empty partition).
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int part(std::size_t i) const noexcept { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }
  std::size_t length() const noexcept { return parts_.size(); }
  int weight() const noexcept;
  bool empty() const noexcept { return parts_.empty(); }

  /// "[]" for the empty partition, otherwise "3,1,1".
  std::string to_string() const;

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

 private:
  std::vector<int> parts_;
};

/// A fixed-length tuple of integers (an element of N^n).
using Composition = std::vector<int>;

/// (n-1, n-2, ..., 1, 0).
Composition delta(int n);

/// lambda padded with zeros to length n, plus delta(n). Throws LengthExceeded.
Composition pad_and_add(const Partition& lambda, int n);

Partition conjugate(const Partition& lambda);

/// mu is contained in lambda (mu_i <= lambda_i for all i).
bool contains(const Partition& lambda, const Partition& mu);

/// lambda/mu has at most one cell in each row: mu_i <= lambda_i <= mu_i + 1.
bool is_vertical_strip(const Partition& lambda, const Partition& mu);

/// (lambda_1 - 1, ..., lambda_n - 1) for a partition of length exactly n.
/// Throws NotFullColumn when lambda_n = 0, LengthExceeded when longer.
Partition decrement_all(const Partition& lambda, int n);

/// Every nu with lambda/nu a vertical strip, by descending |nu| and then
/// ascending lexicographic order.
std::vector<Partition> vertical_strip_subpartitions(const Partition& lambda);

/// (q-1) * sum over i with lambda_i > nu_i of q^(lambda_i + n - 1 - i).
/// Throws NotVerticalStrip, LengthTooLong (unless l(lambda) < n), Overflow.
std::uint64_t q_exponent(const Partition& lambda, const Partition& nu, int n, unsigned q);

/// For alpha, beta strictly decreasing with alpha_i - beta_i in {0, 1} and a
/// permutation sigma of {0, ..., n-1}, a 1-based index i with
/// alpha_i - beta_sigma(i) outside {0, 1}; nullopt exactly when sigma is the
/// identity. Throws HypothesisViolated when the inputs do not qualify.
std::optional<std::size_t> perm_witness(const std::vector<int>& alpha, const std::vector<int>& beta,
                                        const std::vector<int>& sigma);

/// All partitions of weight exactly w with at most max_length parts, in
/// descending lexicographic order.
std::vector<Partition> partitions_of(int w, std::size_t max_length);

/// All partitions of weight at most w with at most max_length parts, by
/// ascending weight.
std::vector<Partition> partitions_up_to(int w, std::size_t max_length);

}  // namespace qschur
