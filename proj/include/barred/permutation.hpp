#pragma once

#include <algorithm>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace barred {

/// A permutation of {1, ..., n} in one-line notation. Positions are 1-based
/// throughout the public interface; n = 0 (the empty permutation) is legal.
/// Instances are immutable after construction and safe to share across
/// threads.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t + 1;
    return Permutation(std::move(v));
  }

  /// Validates that `values` is a rearrangement of 1..n.
  static Permutation from_values(std::vector<int> values) {
    const int n = static_cast<int>(values.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : values) {
      if (v < 1 || v > n)
        throw std::invalid_argument("not a permutation of 1.." +
                                    std::to_string(n) + ": value " +
                                    std::to_string(v));
      if (seen[static_cast<size_t>(v - 1)])
        throw std::invalid_argument("not a permutation: duplicate value " +
                                    std::to_string(v));
      seen[static_cast<size_t>(v - 1)] = 1;
    }
    return Permutation(std::move(values));
  }

  /// Parses whitespace-separated one-line notation, e.g. "5 3 6 1 7".
  static Permutation parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    std::string tok;
    while (in >> tok) {
      size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad permutation token '" + tok + "'");
      }
      if (used != tok.size() || v < 1)
        throw std::invalid_argument("bad permutation token '" + tok + "'");
      values.push_back(v);
    }
    return from_values(std::move(values));
  }

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  /// Value at 1-based position `pos`.
  int at(int pos) const { return values_[static_cast<size_t>(pos - 1)]; }

  /// 1-based position of `value`.
  int position_of(int value) const {
    return pos_[static_cast<size_t>(value - 1)];
  }

  const std::vector<int>& values() const { return values_; }
  std::span<const int> span() const { return values_; }

  std::string str() const {
    std::string out;
    for (size_t t = 0; t < values_.size(); ++t) {
      if (t) out += ' ';
      out += std::to_string(values_[t]);
    }
    return out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.values_ == b.values_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.values_ < b.values_;
  }

 private:
  explicit Permutation(std::vector<int> v) : values_(std::move(v)) {
    pos_.resize(values_.size());
    for (int t = 0; t < size(); ++t)
      pos_[static_cast<size_t>(values_[static_cast<size_t>(t)] - 1)] = t + 1;
  }

  std::vector<int> values_;
  std::vector<int> pos_;  // pos_[v-1] = 1-based position of value v

  friend Permutation reduce(std::span<const int> values);
};

/// Standardization: replaces distinct values by their ranks, yielding the
/// unique permutation order-isomorphic to `values`. Throws on duplicates.
inline Permutation reduce(std::span<const int> values) {
  std::vector<int> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t t = 1; t < sorted.size(); ++t)
    if (sorted[t] == sorted[t - 1])
      throw std::invalid_argument("reduce: duplicate value " +
                                  std::to_string(sorted[t]));
  std::vector<int> ranks;
  ranks.reserve(values.size());
  for (int v : values) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    ranks.push_back(static_cast<int>(it - sorted.begin()) + 1);
  }
  return Permutation(std::move(ranks));
}

inline Permutation reduce(const std::vector<int>& values) {
  return reduce(std::span<const int>(values));
}

/// 1-based positions of the left-to-right maxima (entries larger than every
/// entry before them).
inline std::vector<int> left_to_right_maxima(const Permutation& p) {
  std::vector<int> out;
  int best = 0;
  for (int pos = 1; pos <= p.size(); ++pos) {
    if (p.at(pos) > best) {
      best = p.at(pos);
      out.push_back(pos);
    }
  }
  return out;
}

}  // namespace barred
