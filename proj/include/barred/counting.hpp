#pragma once

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace barred {

/// All counts in this library are exact; no floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;

/// base^exp for exp >= 0, with 0^0 = 1.
inline BigInt int_pow(long long base, long long exp) {
  if (exp < 0) throw std::domain_error("int_pow: negative exponent");
  return boost::multiprecision::pow(BigInt(base),
                                    static_cast<unsigned>(exp));
}

namespace detail {

/// Shared memo tables. Growth happens under the lock; callers get copies, so
/// concurrent lookups are equivalent to sequential ones.
struct CountingTables {
  std::mutex mu;
  std::vector<std::vector<BigInt>> pascal;    // pascal[m][r], r <= m
  std::vector<std::vector<BigInt>> stirling;  // stirling[n][k], k <= n
  std::vector<BigInt> bell;

  static CountingTables& instance() {
    static CountingTables t;
    return t;
  }

  void ensure_pascal(int m) {
    for (int row = static_cast<int>(pascal.size()); row <= m; ++row) {
      std::vector<BigInt> r(static_cast<size_t>(row) + 1);
      r[0] = 1;
      r[static_cast<size_t>(row)] = 1;
      for (int c = 1; c < row; ++c)
        r[static_cast<size_t>(c)] =
            pascal[static_cast<size_t>(row - 1)][static_cast<size_t>(c - 1)] +
            pascal[static_cast<size_t>(row - 1)][static_cast<size_t>(c)];
      pascal.push_back(std::move(r));
    }
  }

  void ensure_stirling(int n) {
    if (stirling.empty()) stirling.push_back({BigInt(1)});  // S(0,0) = 1
    for (int row = static_cast<int>(stirling.size()); row <= n; ++row) {
      std::vector<BigInt> r(static_cast<size_t>(row) + 1);
      r[0] = 0;  // S(n,0) = 0 for n > 0
      r[static_cast<size_t>(row)] = 1;
      for (int k = 1; k < row; ++k)
        r[static_cast<size_t>(k)] =
            BigInt(k) * stirling[static_cast<size_t>(row - 1)]
                                [static_cast<size_t>(k)] +
            stirling[static_cast<size_t>(row - 1)][static_cast<size_t>(k - 1)];
      stirling.push_back(std::move(r));
    }
  }

  void ensure_bell(int n) {
    ensure_stirling(n);
    for (int row = static_cast<int>(bell.size()); row <= n; ++row) {
      BigInt sum = 0;
      for (const BigInt& s : stirling[static_cast<size_t>(row)]) sum += s;
      bell.push_back(std::move(sum));
    }
  }
};

}  // namespace detail

/// Binomial coefficient with the conventions this library's formulas rely on:
///   C(m, 0) = 1 for every integer m, including negative m;
///   C(m, r) = 0 for r < 0, and for 0 <= m < r;
///   m < 0 with r > 0 is a domain error on purpose — the counting formulas
///   never reach that case, and trapping it keeps any index drift loud.
inline BigInt binomial(long long m, long long r) {
  if (r < 0) return 0;
  if (r == 0) return 1;
  if (m < 0)
    throw std::domain_error("binomial(" + std::to_string(m) + ", " +
                            std::to_string(r) +
                            "): negative upper index with positive lower");
  if (r > m) return 0;
  constexpr long long kCacheLimit = 4096;
  if (m > kCacheLimit) {
    // multiplicative form, exact at every step since prefixes are binomials
    BigInt out = 1;
    const long long rr = std::min(r, m - r);
    for (long long t = 1; t <= rr; ++t) {
      out *= (m - rr + t);
      out /= t;
    }
    return out;
  }
  auto& tables = detail::CountingTables::instance();
  std::lock_guard<std::mutex> lock(tables.mu);
  tables.ensure_pascal(static_cast<int>(m));
  return tables.pascal[static_cast<size_t>(m)][static_cast<size_t>(r)];
}

/// Stirling number of the second kind: partitions of an n-set into exactly k
/// blocks. S(0,0) = 1, S(n,0) = 0 for n > 0, S(n,k) = 0 for k > n.
inline BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0)
    throw std::domain_error("stirling2: negative argument");
  if (k > n) return 0;
  auto& tables = detail::CountingTables::instance();
  std::lock_guard<std::mutex> lock(tables.mu);
  tables.ensure_stirling(n);
  return tables.stirling[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

/// Bell number: B_n = sum_k S(n, k).
inline BigInt bell(int n) {
  if (n < 0) throw std::domain_error("bell: negative argument");
  auto& tables = detail::CountingTables::instance();
  std::lock_guard<std::mutex> lock(tables.mu);
  tables.ensure_bell(n);
  return tables.bell[static_cast<size_t>(n)];
}

}  // namespace barred
