#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "barred/counting.hpp"

namespace barred {

/// Exact counts keyed by integer tuples (a single n, or a statistic tuple).
struct CountTable {
  std::string description;
  std::map<std::vector<int>, BigInt> entries;

  BigInt total() const {
    BigInt sum = 0;
    for (const auto& [key, v] : entries) sum += v;
    return sum;
  }
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}
}  // namespace detail

/// One cell of the five-statistic count for avoiders whose 1 sits at position
/// j >= 3: statistics are first entry a, predecessor-of-1 b, position j of 1,
/// number k of left-to-right maxima after 1, and index i of the leftmost
/// vertical strip holding an entry of (a, b). Writing B = b-a-j+2 for the
/// entries of (a, b) placed after 1, the cell count is
///
///   S(n-b, k) * C(b-a-1, j-3) * ((k-i+2)^B - (k-i+1)^B) * C(a+i-3, i-1).
///
/// Domain: 2 <= a < b <= n, 3 <= j <= b-a+2 (so B >= 0), 0 <= k <= n-b,
/// 1 <= i <= k+1. k = 0 occurs exactly when b = n and carries weight through
/// S(0,0) = 1. At B = 0 the power difference vanishes, so the value is 0;
/// that case is counted by summand_b0 instead.
inline BigInt summand_j_ge3(int n, int a, int b, int j, int k, int i) {
  detail::require(2 <= a && a < b && b <= n, "summand_j_ge3: need 2 <= a < b <= n");
  detail::require(3 <= j && j <= b - a + 2,
                  "summand_j_ge3: need 3 <= j <= b-a+2");
  detail::require(0 <= k && k <= n - b, "summand_j_ge3: need 0 <= k <= n-b");
  detail::require(1 <= i && i <= k + 1, "summand_j_ge3: need 1 <= i <= k+1");
  const int bullets_after_1 = b - a - j + 2;  // B
  return stirling2(n - b, k) * binomial(b - a - 1, j - 3) *
         (int_pow(k - i + 2, bullets_after_1) -
          int_pow(k - i + 1, bullets_after_1)) *
         binomial(a + i - 3, i - 1);
}

/// The cell count when no entry of (a, b) follows 1 (B = 0, i.e. j = b-a+2):
/// the entries 2..a-1 are spread over all k+1 strips, giving
/// S(n-b, k) * C(a-2+k, k).
inline BigInt summand_b0(int n, int a, int b, int k) {
  detail::require(2 <= a && a < b && b <= n, "summand_b0: need 2 <= a < b <= n");
  detail::require(0 <= k && k <= n - b, "summand_b0: need 0 <= k <= n-b");
  return stirling2(n - b, k) * binomial(a - 2 + k, k);
}

/// Expected cell count for a decomposition bucket: dispatches on whether the
/// bucket is a B = 0 bucket (i absent, j = b-a+2) or a B > 0 one.
inline BigInt bucket_expected(int n, int a, int b, int j, int k,
                              std::optional<int> i) {
  if (!i.has_value()) {
    detail::require(j == b - a + 2, "bucket_expected: B = 0 bucket needs j = b-a+2");
    return summand_b0(n, a, b, k);
  }
  return summand_j_ge3(n, a, b, j, k, *i);
}

/// Avoiders of [n] whose 1 sits at position j >= 3, as the five-fold sum of
/// summand_j_ge3 over B >= 1 plus the B = 0 double sum. Both sums run k from
/// 0 so the b = n column (where S(0,0) = 1 is the only surviving Stirling
/// weight) is included.
inline BigInt count_j_ge3(int n) {
  detail::require(n >= 1, "count_j_ge3: need n >= 1");
  BigInt total = 0;
  for (int a = 2; a <= n - 1; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int j = 3; j <= b - a + 1; ++j)
        for (int k = 0; k <= n - b; ++k)
          for (int i = 1; i <= k + 1; ++i)
            total += summand_j_ge3(n, a, b, j, k, i);
      for (int k = 0; k <= n - b; ++k) total += summand_b0(n, a, b, k);
    }
  }
  return total;
}

/// Avoiders of [n] whose 1 sits at position 2:
/// sum_{a=2}^{n} sum_{k=0}^{n-a} C(k+a-2, a-2) * S(n-a, k).
inline BigInt count_j2(int n) {
  detail::require(n >= 1, "count_j2: need n >= 1");
  BigInt total = 0;
  for (int a = 2; a <= n; ++a)
    for (int k = 0; k <= n - a; ++k)
      total += binomial(k + a - 2, a - 2) * stirling2(n - a, k);
  return total;
}

/// Closed form for the number of permutations of [n] avoiding ~1 4 3 ~5 2:
///
///   B_{n-1} + 1 + 2^{n-2} - n
///   + sum_{a=0}^{n-3} sum_{b=0}^{a-1} sum_{k=0}^{a-b}
///       ( sum_{i=0}^{k} C(n-4-a+k-i, k-i) (i+2)^b  -  C(n-3-a+k, k) )
///       * S(a-b, k)
///   + sum_{a=0}^{n-2} sum_{k=0}^{n-2-a} C(k+a+1, k+1) * S(n-2-a, k).
///
/// The n = 1 value is 1 by definition. The inner binomial needs C(-1, 0) = 1
/// (first exercised at n = 4, a = 1, k = 1, i = 1); binomial() supplies that
/// convention and traps any other negative upper index.
inline BigInt theorem_count(int n) {
  detail::require(n >= 1, "theorem_count: need n >= 1");
  if (n == 1) return 1;
  BigInt total = bell(n - 1) + 1 + int_pow(2, n - 2) - n;
  for (int a = 0; a <= n - 3; ++a) {
    for (int b = 0; b <= a - 1; ++b) {
      for (int k = 0; k <= a - b; ++k) {
        BigInt inner = 0;
        for (int i = 0; i <= k; ++i)
          inner += binomial(n - 4 - a + k - i, k - i) * int_pow(i + 2, b);
        inner -= binomial(n - 3 - a + k, k);
        total += inner * stirling2(a - b, k);
      }
    }
  }
  for (int a = 0; a <= n - 2; ++a)
    for (int k = 0; k <= n - 2 - a; ++k)
      total += binomial(k + a + 1, k + 1) * stirling2(n - 2 - a, k);
  return total;
}

/// Terms for n = 1..n_max; index t holds the n = t+1 term.
inline std::vector<BigInt> sequence_terms(int n_max) {
  detail::require(n_max >= 1, "sequence_terms: need n_max >= 1");
  std::vector<BigInt> out;
  out.reserve(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back(theorem_count(n));
  return out;
}

inline CountTable sequence_table(int n_max) {
  CountTable table;
  table.description = "avoiders of ~1 4 3 ~5 2 by n";
  for (int n = 1; n <= n_max; ++n) table.entries[{n}] = theorem_count(n);
  return table;
}

}  // namespace barred
