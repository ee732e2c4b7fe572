#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "barred/counting.hpp"
#include "barred/formulas.hpp"
#include "barred/matcher.hpp"

namespace barred {

/// Exhaustive sweeps refuse n above the cap; 10! is minutes-scale, 11! is
/// opt-in, and nothing accepts more than the absolute ceiling.
inline constexpr int kDefaultEnumerationCap = 11;
inline constexpr int kAbsoluteEnumerationCap = 12;

inline void require_within_cap(int n, int cap) {
  if (n < 0) throw std::domain_error("n must be non-negative");
  if (n > cap)
    throw std::domain_error("n = " + std::to_string(n) +
                            " exceeds the enumeration cap " +
                            std::to_string(cap));
}

/// oracle: test every permutation of S_n with the unpruned avoidance check,
/// keeping the sweep independent of the structure theory it validates.
/// fast: backtracking generation that rejects a prefix as soon as it contains
/// an occurrence of the unbarred reduction that can no longer extend.
enum class EnumerationMode { oracle, fast };

namespace detail {

template <typename Fn>
void enumerate_oracle(int n, const BarredPattern& pattern, Fn&& fn) {
  std::vector<int> values(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) values[static_cast<size_t>(t)] = t + 1;
  AvoidanceTester tester(pattern);
  do {
    if (tester.avoids(values)) {
      if (!fn(Permutation::from_values(values))) return;
    }
  } while (std::next_permutation(values.begin(), values.end()));
}

// Sound and complete for patterns ending in an unbarred letter: an
// occurrence's bar slots all live strictly before its final position, so its
// extendability is settled the moment that final position is placed.
template <typename Fn>
bool enumerate_fast_rec(std::vector<int>& prefix, std::vector<char>& used,
                        int n, AvoidanceTester& tester, Fn&& fn) {
  const int p = static_cast<int>(prefix.size());
  if (p == n) return fn(Permutation::from_values(prefix));
  for (int v = 1; v <= n; ++v) {
    if (used[static_cast<size_t>(v - 1)]) continue;
    prefix.push_back(v);
    used[static_cast<size_t>(v - 1)] = 1;
    const bool viable = tester.prefix_ok(prefix, p + 1);
    bool keep_going = true;
    if (viable) keep_going = enumerate_fast_rec(prefix, used, n, tester, fn);
    prefix.pop_back();
    used[static_cast<size_t>(v - 1)] = 0;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace detail

/// Streams the permutations of [n] that avoid `pattern`, in lexicographic
/// order. `fn` takes const Permutation& and returns false to stop early.
/// Throws when n exceeds `cap`.
template <typename Fn>
void enumerate_avoiders(int n, const BarredPattern& pattern,
                        EnumerationMode mode, Fn&& fn,
                        int cap = kDefaultEnumerationCap) {
  require_within_cap(n, cap);
  const bool fast_applicable =
      !pattern.letters().empty() && !pattern.letters().back().barred;
  if (mode == EnumerationMode::fast && fast_applicable) {
    if (n == 0) {
      fn(Permutation());
      return;
    }
    std::vector<int> prefix;
    prefix.reserve(static_cast<size_t>(n));
    std::vector<char> used(static_cast<size_t>(n), 0);
    AvoidanceTester tester(pattern);
    detail::enumerate_fast_rec(prefix, used, n, tester, fn);
    return;
  }
  detail::enumerate_oracle(n, pattern, fn);
}

inline std::vector<Permutation> avoiders(
    int n, const BarredPattern& pattern = BarredPattern::canonical(),
    EnumerationMode mode = EnumerationMode::oracle,
    int cap = kDefaultEnumerationCap) {
  std::vector<Permutation> out;
  enumerate_avoiders(
      n, pattern, mode,
      [&](const Permutation& p) {
        out.push_back(p);
        return true;
      },
      cap);
  return out;
}

/// Number of permutations of [n] avoiding `pattern`, by exhaustive check.
/// With threads > 1 the sweep is split by first entry and the per-entry
/// counts are summed, so the result does not depend on the thread count.
inline BigInt count_avoiders_brute(int n, const BarredPattern& pattern,
                                   int cap = kDefaultEnumerationCap,
                                   int threads = 1) {
  require_within_cap(n, cap);
  if (n == 0) return 1;
  auto count_with_first = [&](int first) -> long long {
    std::vector<int> full(static_cast<size_t>(n));
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
      if (v != first) rest.push_back(v);
    full[0] = first;
    AvoidanceTester tester(pattern);
    long long count = 0;
    do {
      std::copy(rest.begin(), rest.end(), full.begin() + 1);
      if (tester.avoids(full)) ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return count;
  };

  threads = std::clamp(threads, 1, n);
  std::vector<long long> per_first(static_cast<size_t>(n), 0);
  if (threads == 1) {
    for (int f = 1; f <= n; ++f)
      per_first[static_cast<size_t>(f - 1)] = count_with_first(f);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (int f = tid + 1; f <= n; f += threads)
          per_first[static_cast<size_t>(f - 1)] = count_with_first(f);
      });
    }
    for (auto& th : pool) th.join();
  }
  BigInt total = 0;
  for (long long c : per_first) total += c;
  return total;
}

/// The statistics that drive the structural count, read off one permutation:
/// first entry a, position j of the value 1, b = entry just before 1 (j >= 2),
/// k = number of left-to-right maxima strictly after position j, and i = index
/// of the leftmost vertical strip (strips are the position gaps delimited by
/// the position of 1 and the post-1 left-to-right maxima) holding a value in
/// the open interval (a, b). Derived bullet counts: A = a-2, B = b-a-j+2,
/// C = n-b. b, i, A, B, C are meaningful only where defined (j >= 2 for b and
/// the counts; some value of (a, b) after 1 for i).
struct AvoiderStats {
  int n = 0;
  int a = 0;
  int j = 0;
  int k = 0;
  std::optional<int> b;
  std::optional<int> i;
  std::optional<int> A;
  std::optional<int> B;
  std::optional<int> C;
};

inline AvoiderStats stats_of(const Permutation& p) {
  if (p.empty()) throw std::invalid_argument("stats_of: empty permutation");
  AvoiderStats s;
  s.n = p.size();
  s.a = p.at(1);
  s.j = p.position_of(1);
  if (s.j >= 2) {
    s.b = p.at(s.j - 1);
    s.A = s.a - 2;
    s.B = *s.b - s.a - s.j + 2;
    s.C = s.n - *s.b;
  }

  std::vector<int> maxima_after;  // positions of LR maxima past position j
  for (int pos : left_to_right_maxima(p))
    if (pos > s.j) maxima_after.push_back(pos);
  s.k = static_cast<int>(maxima_after.size());

  if (s.b && *s.b > s.a + 1) {
    for (int pos = s.j + 1; pos <= s.n && !s.i; ++pos) {
      const int v = p.at(pos);
      if (v <= s.a || v >= *s.b) continue;
      // strip index = 1 + number of delimiting maxima strictly left of pos
      int strip = 1;
      for (int m : maxima_after)
        if (m < pos) ++strip;
      s.i = strip;
    }
  }
  return s;
}

/// The four structural properties of an avoider, each evaluated literally;
/// bullets that mention b are vacuously true while b is undefined (j = 1).
struct StructureReport {
  bool prefix_increasing = false;
  bool strip_a_rising = false;
  bool strip_b_right_of_a_minus_1 = false;
  bool descent_initiators_are_lr_maxima = false;

  bool overall() const {
    return prefix_increasing && strip_a_rising &&
           strip_b_right_of_a_minus_1 && descent_initiators_are_lr_maxima;
  }
};

inline StructureReport check_structure(const Permutation& p) {
  if (p.empty()) throw std::invalid_argument("check_structure: empty permutation");
  const int n = p.size();
  const int j = p.position_of(1);
  const int a = p.at(1);
  StructureReport r;

  r.prefix_increasing = true;
  for (int pos = 2; pos < j; ++pos)
    if (p.at(pos - 1) > p.at(pos)) r.prefix_increasing = false;

  // entries 2, 3, ..., a-1 appear in increasing order
  r.strip_a_rising = true;
  int last_small = 0;
  for (int pos = 1; pos <= n; ++pos) {
    const int v = p.at(pos);
    if (v < 2 || v > a - 1) continue;
    if (v < last_small) r.strip_a_rising = false;
    last_small = v;
  }

  // every entry of (a, b) sits left of 1 or right of the entry a-1
  r.strip_b_right_of_a_minus_1 = true;
  if (j >= 2) {
    const int b = p.at(j - 1);
    const int pos_a_minus_1 = (a >= 2) ? p.position_of(a - 1) : 0;
    for (int v = a + 1; v < b; ++v) {
      const int pos = p.position_of(v);
      if (pos < j) continue;
      if (pos <= pos_a_minus_1) r.strip_b_right_of_a_minus_1 = false;
    }
  }

  r.descent_initiators_are_lr_maxima = true;
  int prefix_max = 0;
  for (int pos = 1; pos <= n; ++pos) {
    const bool is_lr_max = p.at(pos) > prefix_max;
    prefix_max = std::max(prefix_max, p.at(pos));
    if (pos <= j || pos == n) continue;
    if (p.at(pos) > p.at(pos + 1) && !is_lr_max)
      r.descent_initiators_are_lr_maxima = false;
  }
  return r;
}

/// Avoider counts bucketed the way the structural count sums them: one bucket
/// for j = 1, one for j = 2, and one per (a, b, j, k, i-or-absent) tuple for
/// j >= 3 (i absent exactly on the B = 0 buckets).
struct Decomposition {
  /// Key: a, b, j, k, i with i = 0 standing for "absent".
  using Key = std::array<int, 5>;

  int n = 0;
  BigInt j1_count = 0;
  BigInt j2_count = 0;
  std::map<Key, BigInt> j_ge3;

  BigInt total() const {
    BigInt sum = j1_count + j2_count;
    for (const auto& [key, c] : j_ge3) sum += c;
    return sum;
  }

  /// Flattened view keyed (j_class, a, b, j, k, i); absent fields are 0.
  CountTable to_table() const {
    CountTable t;
    t.description = "avoider decomposition at n = " + std::to_string(n);
    t.entries[{1, 0, 0, 1, 0, 0}] = j1_count;
    t.entries[{2, 0, 0, 2, 0, 0}] = j2_count;
    for (const auto& [key, c] : j_ge3)
      t.entries[{3, key[0], key[1], key[2], key[3], key[4]}] = c;
    return t;
  }
};

inline Decomposition decompose(int n, int cap = kDefaultEnumerationCap) {
  if (n < 1) throw std::domain_error("decompose: need n >= 1");
  require_within_cap(n, cap);
  Decomposition d;
  d.n = n;
  enumerate_avoiders(
      n, BarredPattern::canonical(), EnumerationMode::oracle,
      [&](const Permutation& p) {
        const AvoiderStats s = stats_of(p);
        if (s.j == 1) {
          d.j1_count += 1;
        } else if (s.j == 2) {
          d.j2_count += 1;
        } else {
          d.j_ge3[{s.a, *s.b, s.j, s.k, s.i.value_or(0)}] += 1;
        }
        return true;
      },
      cap);
  return d;
}

}  // namespace barred
