#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "barred/counting.hpp"

namespace barred {

enum class SequenceSource { network, cache, fixture };

inline const char* to_string(SequenceSource s) {
  switch (s) {
    case SequenceSource::network: return "network";
    case SequenceSource::cache: return "cache";
    case SequenceSource::fixture: return "fixture";
  }
  return "?";
}

/// Terms of one OEIS sequence as read from a b-file, plus provenance.
struct OeisSequence {
  std::string id;  // 'A' + six digits
  long offset = 0;
  std::vector<BigInt> terms;
  std::string fetched_at;  // ISO 8601 UTC; empty when unknown
  SequenceSource source = SequenceSource::cache;
};

/// A bare value sequence with an index offset, for comparisons.
struct Series {
  std::vector<BigInt> terms;
  long offset = 0;
  std::string label;
};

inline Series as_series(const OeisSequence& s) {
  return Series{s.terms, s.offset, s.id};
}

inline bool is_valid_oeis_id(const std::string& id) {
  if (id.size() != 7 || id[0] != 'A') return false;
  for (size_t t = 1; t < id.size(); ++t)
    if (!std::isdigit(static_cast<unsigned char>(id[t]))) return false;
  return true;
}

/// b-file grammar: '#' comment lines, otherwise "<index> <value>"; leading
/// and trailing whitespace tolerated on read, indices must be consecutive.
inline OeisSequence parse_b_file(const std::string& text,
                                 const std::string& id,
                                 SequenceSource source) {
  OeisSequence seq;
  seq.id = id;
  seq.source = source;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_offset = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream fields(line);
    std::string idx_tok, val_tok, extra;
    if (!(fields >> idx_tok >> val_tok) || (fields >> extra))
      throw std::runtime_error("b-file line " + std::to_string(line_no) +
                               " is not '<index> <value>': " + line);
    long index = 0;
    try {
      size_t used = 0;
      index = std::stol(idx_tok, &used);
      if (used != idx_tok.size()) throw std::invalid_argument(idx_tok);
    } catch (const std::exception&) {
      throw std::runtime_error("b-file line " + std::to_string(line_no) +
                               " has a bad index: " + idx_tok);
    }
    for (size_t t = 0; t < val_tok.size(); ++t) {
      const char c = val_tok[t];
      if (!(std::isdigit(static_cast<unsigned char>(c)) ||
            (t == 0 && c == '-')))
        throw std::runtime_error("b-file line " + std::to_string(line_no) +
                                 " has a bad value: " + val_tok);
    }
    if (!have_offset) {
      seq.offset = index;
      have_offset = true;
    } else if (index != seq.offset + static_cast<long>(seq.terms.size())) {
      throw std::runtime_error("b-file line " + std::to_string(line_no) +
                               ": index " + idx_tok + " not consecutive");
    }
    seq.terms.emplace_back(val_tok);
  }
  if (seq.terms.empty())
    throw std::runtime_error("b-file for " + id + " has no terms");
  return seq;
}

/// Normalized b-file text: "<index> <value>\n" per term.
inline std::string write_b_file(const OeisSequence& seq) {
  std::string out;
  for (size_t t = 0; t < seq.terms.size(); ++t) {
    out += std::to_string(seq.offset + static_cast<long>(t));
    out += ' ';
    out += seq.terms[t].str();
    out += '\n';
  }
  return out;
}

struct FetchOptions {
  std::string base_url;                 // default: $BARRED_OEIS_BASE_URL or https://oeis.org
  std::filesystem::path fixture_dir;    // default: $BARRED_OEIS_FIXTURE_DIR
  int timeout_seconds = 30;
};

namespace detail {

inline std::string utc_now_iso8601() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

/// Write-to-temp-then-rename, so concurrent fetchers never expose a torn file.
inline void write_file_atomic(const std::filesystem::path& p,
                              const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << bytes;
  }
  std::filesystem::rename(tmp, p);
}

inline std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v && *v) ? std::string(v) : fallback;
}

}  // namespace detail

inline std::filesystem::path cache_file_for(
    const std::filesystem::path& cache_dir, const std::string& id) {
  return cache_dir / (id + ".b.txt");
}

inline std::filesystem::path sidecar_file_for(
    const std::filesystem::path& cache_dir, const std::string& id) {
  return cache_dir / (id + ".meta.json");
}

/// Returns the parsed b-file for `id`. Lookup order: cache, fixture dir,
/// network (unless offline). Network fetches are parsed before caching and
/// cached bit-exactly with a JSON sidecar recording when and from where.
inline OeisSequence fetch(const std::string& id,
                          const std::filesystem::path& cache_dir,
                          bool offline, FetchOptions opts = {}) {
  if (!is_valid_oeis_id(id))
    throw std::invalid_argument(
        "malformed OEIS id '" + id + "' (want 'A' followed by six digits)");
  if (opts.base_url.empty())
    opts.base_url = detail::env_or("BARRED_OEIS_BASE_URL", "https://oeis.org");
  if (opts.fixture_dir.empty())
    opts.fixture_dir = detail::env_or("BARRED_OEIS_FIXTURE_DIR", "");

  const std::filesystem::path cache_file = cache_file_for(cache_dir, id);
  if (auto bytes = detail::read_file(cache_file)) {
    OeisSequence seq = parse_b_file(*bytes, id, SequenceSource::cache);
    if (auto meta = detail::read_file(sidecar_file_for(cache_dir, id))) {
      try {
        seq.fetched_at = nlohmann::json::parse(*meta).value("fetched_at", "");
      } catch (const nlohmann::json::exception&) {
        // stale sidecar is not fatal; the b-file bytes are the data
      }
    }
    return seq;
  }

  if (!opts.fixture_dir.empty()) {
    if (auto bytes = detail::read_file(opts.fixture_dir / (id + ".b.txt")))
      return parse_b_file(*bytes, id, SequenceSource::fixture);
  }

  if (offline)
    throw std::runtime_error("offline and no cached copy of " + id + " under " +
                             cache_dir.string());

  const std::string path = "/" + id + "/b" + id.substr(1) + ".txt";
  httplib::Client client(opts.base_url);
  client.set_connection_timeout(opts.timeout_seconds, 0);
  client.set_read_timeout(opts.timeout_seconds, 0);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res)
    throw std::runtime_error("fetch of " + opts.base_url + path + " failed (" +
                             httplib::to_string(res.error()) +
                             "); cache at " + cache_dir.string() + " is empty");
  if (res->status != 200)
    throw std::runtime_error("fetch of " + opts.base_url + path +
                             " returned HTTP " + std::to_string(res->status));

  OeisSequence seq = parse_b_file(res->body, id, SequenceSource::network);
  seq.fetched_at = detail::utc_now_iso8601();
  detail::write_file_atomic(cache_file, res->body);
  nlohmann::json meta{{"id", id},
                      {"fetched_at", seq.fetched_at},
                      {"source_url", opts.base_url + path}};
  detail::write_file_atomic(sidecar_file_for(cache_dir, id),
                            meta.dump(2) + "\n");
  return seq;
}

/// Where two aligned sequences part ways. Alignment index t pairs
/// left.terms[t] with right.terms[t + term_shift]; alignment_shift reports the
/// resulting index-space displacement right.offset + term_shift - left.offset.
struct ComparisonReport {
  int common_prefix_length = 0;
  std::optional<int> divergence_index;  // alignment index, 0-based
  BigInt left_value = 0;                // set at divergence
  BigInt right_value = 0;
  long alignment_shift = 0;
  int overlap_length = 0;
};

inline ComparisonReport compare(const Series& left, const Series& right,
                                int term_shift = 0) {
  if (left.terms.empty() || right.terms.empty())
    throw std::invalid_argument("compare: sequences must be non-empty");
  ComparisonReport rep;
  rep.alignment_shift = right.offset + term_shift - left.offset;
  const int t0 = std::max(0, -term_shift);
  const int t1 = std::min(static_cast<int>(left.terms.size()),
                          static_cast<int>(right.terms.size()) - term_shift);
  if (t0 >= t1) throw std::runtime_error("compare: no overlap after alignment");
  rep.overlap_length = t1 - t0;
  for (int t = t0; t < t1; ++t) {
    const BigInt& lv = left.terms[static_cast<size_t>(t)];
    const BigInt& rv = right.terms[static_cast<size_t>(t + term_shift)];
    if (lv != rv) {
      rep.divergence_index = t;
      rep.left_value = lv;
      rep.right_value = rv;
      break;
    }
    ++rep.common_prefix_length;
  }
  return rep;
}

}  // namespace barred
