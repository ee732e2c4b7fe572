#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "barred/pattern.hpp"
#include "barred/permutation.hpp"

namespace barred {

/// Positions (1-based, strictly increasing) witnessing a classical pattern
/// occurrence inside a host permutation.
struct Occurrence {
  std::vector<int> positions;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend bool operator<(const Occurrence& a, const Occurrence& b) {
    return a.positions < b.positions;
  }
};

namespace detail {

/// 2-D dominance counts for one host: how many entries sit in a given open
/// position window with value in a given open value window. O(n^2) to build,
/// O(1) per query; this is what keeps avoidance testing polynomial per
/// permutation during exhaustive sweeps.
class PrefixCounts {
 public:
  /// Host values need not be bounded by the host length (the pruned
  /// enumerator queries prefixes of longer permutations), so the value
  /// universe is tracked separately.
  void build(std::span<const int> host) {
    n_ = static_cast<int>(host.size());
    vmax_ = n_;
    for (int v : host) vmax_ = std::max(vmax_, v);
    const size_t w = static_cast<size_t>(vmax_) + 1;
    cells_.assign((static_cast<size_t>(n_) + 1) * w, 0);
    for (int p = 1; p <= n_; ++p) {
      const int v = host[static_cast<size_t>(p - 1)];
      for (int u = 0; u <= vmax_; ++u)
        cells_[idx(p, u)] = cells_[idx(p - 1, u)] + (v <= u ? 1 : 0);
    }
  }

  int value_max() const { return vmax_; }

  /// Entries at positions in (pl, pr) with value in (vl, vr), all exclusive.
  int count_open(int pl, int pr, int vl, int vr) const {
    const int hi_p = std::min(pr - 1, n_);
    const int hi_v = std::min(vr - 1, vmax_);
    const int lo_p = std::max(pl, 0);
    const int lo_v = std::max(vl, 0);
    if (hi_p < lo_p || hi_v < lo_v) return 0;
    return at(hi_p, hi_v) - at(lo_p, hi_v) - at(hi_p, lo_v) + at(lo_p, lo_v);
  }

  bool any_open(int pl, int pr, int vl, int vr) const {
    return count_open(pl, pr, vl, vr) > 0;
  }

 private:
  size_t idx(int p, int v) const {
    return static_cast<size_t>(p) * (static_cast<size_t>(vmax_) + 1) +
           static_cast<size_t>(v);
  }
  int at(int p, int v) const { return cells_[idx(p, v)]; }

  int n_ = 0;
  int vmax_ = 0;
  std::vector<int> cells_;
};

/// DFS over strictly increasing position tuples whose host values are
/// order-isomorphic to `pattern`. Emission is lexicographic by positions.
/// `fn` receives 1-based positions and returns false to stop. When
/// `fixed_last` is nonzero the final position is pinned to it.
template <typename Fn>
void scan_occurrences(std::span<const int> host, const Permutation& pattern,
                      int fixed_last, Fn&& fn) {
  const int n = static_cast<int>(host.size());
  const int m = pattern.size();
  if (m == 0) {
    fn(std::vector<int>{});
    return;
  }
  if (m > n) return;
  std::vector<int> chosen(static_cast<size_t>(m), 0);
  bool stop = false;
  auto rec = [&](auto&& self, int t) -> void {
    const bool last = (t == m - 1);
    int from = (t == 0) ? 1 : chosen[static_cast<size_t>(t - 1)] + 1;
    int to = n - (m - 1 - t);
    if (last && fixed_last != 0) {
      if (fixed_last < from) return;
      from = to = fixed_last;
    }
    for (int q = from; q <= to && !stop; ++q) {
      const int v = host[static_cast<size_t>(q - 1)];
      bool ok = true;
      for (int s = 0; s < t && ok; ++s) {
        const bool pat_less = pattern.at(s + 1) < pattern.at(t + 1);
        const bool host_less = host[static_cast<size_t>(
                                   chosen[static_cast<size_t>(s)] - 1)] < v;
        ok = (pat_less == host_less);
      }
      if (!ok) continue;
      chosen[static_cast<size_t>(t)] = q;
      if (last) {
        if (!fn(chosen)) stop = true;
      } else {
        self(self, t + 1);
      }
    }
  };
  rec(rec, 0);
}

/// Backtracking placement of the barred letters of `pattern` around an
/// assignment of the unbarred ones. `assigned` maps 0-based pattern slots to
/// 1-based host positions (0 = pending); `pending` lists the unassigned slots
/// ascending. A pending slot that is fenced off from every other pending slot
/// by assigned letters (in both position order and value order) cannot
/// interact with them, so a window-emptiness query replaces branching; for
/// the patterns of interest this makes the whole check a pair of O(1)
/// lookups per occurrence.
class ExtensionSolver {
 public:
  ExtensionSolver(std::span<const int> host, const PrefixCounts& counts,
                  const BarredPattern& pattern)
      : host_(host), counts_(counts), pattern_(pattern) {}

  bool solve(std::vector<int>& assigned, const std::vector<int>& pending) {
    return solve_from(assigned, pending, 0);
  }

 private:
  bool solve_from(std::vector<int>& assigned, const std::vector<int>& pending,
                  size_t idx) {
    if (idx == pending.size()) return true;
    const int n = static_cast<int>(host_.size());
    const int m = pattern_.size();
    const int t = pending[idx];  // 0-based slot
    const int rank_t = pattern_.value_at(t + 1);

    int pos_lo = 0, pos_hi = n + 1;
    int val_lo = 0, val_hi = counts_.value_max() + 1;
    for (int s = 0; s < m; ++s) {
      const int q = assigned[static_cast<size_t>(s)];
      if (q == 0) continue;
      if (s < t)
        pos_lo = std::max(pos_lo, q);
      else
        pos_hi = std::min(pos_hi, q);
      const int hv = host_[static_cast<size_t>(q - 1)];
      if (pattern_.value_at(s + 1) < rank_t)
        val_lo = std::max(val_lo, hv);
      else
        val_hi = std::min(val_hi, hv);
    }

    bool separated = true;
    for (size_t u = idx + 1; u < pending.size() && separated; ++u)
      separated = fenced(assigned, t, pending[u]);

    if (separated) {
      if (!counts_.any_open(pos_lo, pos_hi, val_lo, val_hi)) return false;
      return solve_from(assigned, pending, idx + 1);
    }
    for (int q = pos_lo + 1; q < pos_hi; ++q) {
      const int hv = host_[static_cast<size_t>(q - 1)];
      if (hv <= val_lo || hv >= val_hi) continue;
      assigned[static_cast<size_t>(t)] = q;
      const bool ok = solve_from(assigned, pending, idx + 1);
      assigned[static_cast<size_t>(t)] = 0;
      if (ok) return true;
    }
    return false;
  }

  /// Some assigned slot lies strictly between slots s and t in position
  /// order, and some assigned letter lies strictly between them in value
  /// order.
  bool fenced(const std::vector<int>& assigned, int t, int s) const {
    const int slot_lo = std::min(s, t), slot_hi = std::max(s, t);
    bool pos_fence = false;
    for (int u = slot_lo + 1; u < slot_hi && !pos_fence; ++u)
      pos_fence = assigned[static_cast<size_t>(u)] != 0;
    if (!pos_fence) return false;
    const int rank_lo = std::min(pattern_.value_at(s + 1),
                                 pattern_.value_at(t + 1));
    const int rank_hi = std::max(pattern_.value_at(s + 1),
                                 pattern_.value_at(t + 1));
    for (int u = 0; u < pattern_.size(); ++u) {
      if (assigned[static_cast<size_t>(u)] == 0) continue;
      const int r = pattern_.value_at(u + 1);
      if (rank_lo < r && r < rank_hi) return true;
    }
    return false;
  }

  std::span<const int> host_;
  const PrefixCounts& counts_;
  const BarredPattern& pattern_;
};

}  // namespace detail

/// Every occurrence of the classical pattern, lexicographic by positions.
/// An empty pattern yields exactly one empty occurrence.
template <typename Fn>
void for_each_occurrence(const Permutation& host, const Permutation& pattern,
                         Fn&& fn) {
  detail::scan_occurrences(host.span(), pattern, 0,
                           [&](const std::vector<int>& positions) {
                             return fn(Occurrence{positions});
                           });
}

inline std::vector<Occurrence> occurrences_of(const Permutation& host,
                                              const Permutation& pattern) {
  std::vector<Occurrence> out;
  for_each_occurrence(host, pattern, [&](const Occurrence& occ) {
    out.push_back(occ);
    return true;
  });
  return out;
}

/// True iff extra host positions, one per barred letter, can be placed around
/// `partial` so that the whole tuple realizes the full pattern. `partial`
/// must witness the reduction of the unbarred letters (checked; throws
/// std::invalid_argument otherwise).
inline bool extends_to_full(const Permutation& host, const Occurrence& partial,
                            const BarredPattern& pattern) {
  const Permutation& red = pattern.unbarred_reduction();
  if (static_cast<int>(partial.positions.size()) != red.size())
    throw std::invalid_argument("partial occurrence has wrong length");
  std::vector<int> vals;
  vals.reserve(partial.positions.size());
  int prev = 0;
  for (int q : partial.positions) {
    if (q <= prev || q > host.size())
      throw std::invalid_argument("partial occurrence positions invalid");
    prev = q;
    vals.push_back(host.at(q));
  }
  if (!vals.empty() && !(reduce(vals) == red))
    throw std::invalid_argument(
        "partial occurrence does not witness the unbarred reduction");

  detail::PrefixCounts counts;
  counts.build(host.span());
  std::vector<int> assigned(static_cast<size_t>(pattern.size()), 0);
  const auto& slots = pattern.unbarred_slots();
  for (size_t t = 0; t < slots.size(); ++t)
    assigned[static_cast<size_t>(slots[t] - 1)] = partial.positions[t];
  std::vector<int> pending;
  for (int s : pattern.barred_slots()) pending.push_back(s - 1);
  detail::ExtensionSolver solver(host.span(), counts, pattern);
  return solver.solve(assigned, pending);
}

/// Reusable avoidance checker. Holds per-pattern precomputation and scratch
/// space, so exhaustive sweeps don't reallocate per host. One instance per
/// thread; the free function avoids_barred is the one-shot form.
class AvoidanceTester {
 public:
  explicit AvoidanceTester(BarredPattern pattern)
      : pattern_(std::move(pattern)) {
    for (int s : pattern_.barred_slots()) pending_.push_back(s - 1);
    assigned_.assign(static_cast<size_t>(pattern_.size()), 0);
  }

  const BarredPattern& pattern() const { return pattern_; }

  /// True iff every occurrence of the unbarred reduction extends to the full
  /// pattern. A pattern with no bars degenerates to classical avoidance.
  bool avoids(std::span<const int> host) {
    const Permutation& red = pattern_.unbarred_reduction();
    if (pattern_.barred_count() == 0) {
      bool found = false;
      detail::scan_occurrences(host, red, 0, [&](const std::vector<int>&) {
        found = true;
        return false;
      });
      return !found;
    }
    counts_.build(host);
    detail::ExtensionSolver solver(host, counts_, pattern_);
    const auto& slots = pattern_.unbarred_slots();
    bool ok = true;
    detail::scan_occurrences(host, red, 0, [&](const std::vector<int>& occ) {
      for (size_t t = 0; t < slots.size(); ++t)
        assigned_[static_cast<size_t>(slots[t] - 1)] = occ[t];
      if (!solver.solve(assigned_, pending_)) {
        ok = false;
        return false;
      }
      return true;
    });
    return ok;
  }

  bool avoids(const Permutation& host) { return avoids(host.span()); }

  /// Used by the pruned enumerator: checks only occurrences whose last letter
  /// sits at host position `last_pos`. Valid whenever the pattern ends in an
  /// unbarred letter, since then every bar placement is confined to positions
  /// before the occurrence's end.
  bool prefix_ok(std::span<const int> host, int last_pos) {
    counts_.build(host);
    detail::ExtensionSolver solver(host, counts_, pattern_);
    const auto& slots = pattern_.unbarred_slots();
    bool ok = true;
    detail::scan_occurrences(
        host, pattern_.unbarred_reduction(), last_pos,
        [&](const std::vector<int>& occ) {
          if (pattern_.barred_count() == 0) {
            ok = false;
            return false;
          }
          for (size_t t = 0; t < slots.size(); ++t)
            assigned_[static_cast<size_t>(slots[t] - 1)] = occ[t];
          if (!solver.solve(assigned_, pending_)) {
            ok = false;
            return false;
          }
          return true;
        });
    return ok;
  }

 private:
  BarredPattern pattern_;
  detail::PrefixCounts counts_;
  std::vector<int> assigned_;
  std::vector<int> pending_;
};

inline bool avoids_barred(const Permutation& host,
                          const BarredPattern& pattern) {
  AvoidanceTester tester(pattern);
  return tester.avoids(host.span());
}

/// Lexicographically least occurrence of the unbarred reduction that fails to
/// extend; nullopt when the host avoids the pattern. For a pattern with no
/// bars this is simply the least occurrence.
inline std::optional<Occurrence> first_unextendable(
    const Permutation& host, const BarredPattern& pattern) {
  detail::PrefixCounts counts;
  counts.build(host.span());
  detail::ExtensionSolver solver(host.span(), counts, pattern);
  const auto& slots = pattern.unbarred_slots();
  std::vector<int> pending;
  for (int s : pattern.barred_slots()) pending.push_back(s - 1);
  std::vector<int> assigned(static_cast<size_t>(pattern.size()), 0);

  std::optional<Occurrence> witness;
  detail::scan_occurrences(
      host.span(), pattern.unbarred_reduction(), 0,
      [&](const std::vector<int>& occ) {
        if (pattern.barred_count() == 0) {
          witness = Occurrence{occ};
          return false;
        }
        for (size_t t = 0; t < slots.size(); ++t)
          assigned[static_cast<size_t>(slots[t] - 1)] = occ[t];
        if (!solver.solve(assigned, pending)) {
          witness = Occurrence{occ};
          return false;
        }
        return true;
      });
  return witness;
}

}  // namespace barred
