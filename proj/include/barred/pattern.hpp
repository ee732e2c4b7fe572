#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "barred/permutation.hpp"

namespace barred {

struct PatternLetter {
  int value = 0;
  bool barred = false;

  friend bool operator==(const PatternLetter&, const PatternLetter&) = default;
};

/// A pattern whose letters may carry a bar. Text notation: whitespace-separated
/// letters, `~` prefix for a bar, e.g. "~1 4 3 ~5 2".
///
/// Letters are stored standardized: values that are distinct but do not form
/// {1..m} (the customary way to write a deleted-letter pattern such as
/// "4 3 ~5 2") are replaced by their ranks on parse. At least one letter must
/// be unbarred.
class BarredPattern {
 public:
  static BarredPattern parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<PatternLetter> letters;
    std::string tok;
    while (in >> tok) {
      PatternLetter letter;
      std::string body = tok;
      if (!body.empty() && body[0] == '~') {
        letter.barred = true;
        body = body.substr(1);
      }
      size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(body, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad pattern token '" + tok + "'");
      }
      if (body.empty() || used != body.size() || v < 1)
        throw std::invalid_argument("bad pattern token '" + tok + "'");
      letter.value = v;
      letters.push_back(letter);
    }
    return from_letters(std::move(letters));
  }

  static BarredPattern from_letters(std::vector<PatternLetter> letters) {
    if (letters.empty())
      throw std::invalid_argument("pattern has no letters");
    std::vector<int> values;
    values.reserve(letters.size());
    bool any_unbarred = false;
    for (const PatternLetter& l : letters) {
      values.push_back(l.value);
      if (!l.barred) any_unbarred = true;
    }
    Permutation standardized;
    try {
      standardized = reduce(values);
    } catch (const std::invalid_argument&) {
      // surface which value repeats
      for (size_t s = 0; s < values.size(); ++s)
        for (size_t t = s + 1; t < values.size(); ++t)
          if (values[s] == values[t])
            throw std::invalid_argument("pattern repeats letter " +
                                        std::to_string(values[s]));
      throw;
    }
    if (!any_unbarred)
      throw std::invalid_argument("all pattern letters are barred");
    for (size_t t = 0; t < letters.size(); ++t)
      letters[t].value = standardized.at(static_cast<int>(t) + 1);
    return BarredPattern(std::move(letters));
  }

  /// The pattern this toolkit is about: ~1 4 3 ~5 2.
  static const BarredPattern& canonical() {
    static const BarredPattern p = parse("~1 4 3 ~5 2");
    return p;
  }

  int size() const { return static_cast<int>(letters_.size()); }
  const std::vector<PatternLetter>& letters() const { return letters_; }

  /// Pattern value at 1-based slot.
  int value_at(int slot) const {
    return letters_[static_cast<size_t>(slot - 1)].value;
  }
  bool barred_at(int slot) const {
    return letters_[static_cast<size_t>(slot - 1)].barred;
  }

  int barred_count() const { return static_cast<int>(barred_slots_.size()); }

  /// All letters read as a classical pattern (bars ignored).
  const Permutation& full() const { return full_; }

  /// Standardization of the unbarred letters; this is the pattern whose
  /// occurrences must extend.
  const Permutation& unbarred_reduction() const { return reduction_; }

  /// 1-based slots of the unbarred letters, ascending.
  const std::vector<int>& unbarred_slots() const { return unbarred_slots_; }
  /// 1-based slots of the barred letters, ascending.
  const std::vector<int>& barred_slots() const { return barred_slots_; }

  std::string str() const {
    std::string out;
    for (size_t t = 0; t < letters_.size(); ++t) {
      if (t) out += ' ';
      if (letters_[t].barred) out += '~';
      out += std::to_string(letters_[t].value);
    }
    return out;
  }

  friend bool operator==(const BarredPattern& a, const BarredPattern& b) {
    return a.letters_ == b.letters_;
  }

 private:
  explicit BarredPattern(std::vector<PatternLetter> letters)
      : letters_(std::move(letters)) {
    std::vector<int> full_values;
    std::vector<int> unbarred_values;
    for (size_t t = 0; t < letters_.size(); ++t) {
      full_values.push_back(letters_[t].value);
      if (letters_[t].barred) {
        barred_slots_.push_back(static_cast<int>(t) + 1);
      } else {
        unbarred_slots_.push_back(static_cast<int>(t) + 1);
        unbarred_values.push_back(letters_[t].value);
      }
    }
    full_ = Permutation::from_values(std::move(full_values));
    reduction_ = reduce(unbarred_values);
  }

  std::vector<PatternLetter> letters_;
  Permutation full_;
  Permutation reduction_;
  std::vector<int> unbarred_slots_;
  std::vector<int> barred_slots_;
};

}  // namespace barred
