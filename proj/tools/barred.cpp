// Command-line front end: exact avoider counts, sequence listings, single
// permutation checks, exhaustive enumeration, statistic decompositions, and
// OEIS comparisons. Data goes to stdout, diagnostics to stderr; exit status
// is 0 on success and nonzero on any error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "barred/barred.hpp"

namespace {

using barred::BigInt;

std::string default_cache_dir() {
  if (const char* env = std::getenv("BARRED_CACHE_DIR"); env && *env)
    return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/barred-oeis";
  return "barred-oeis-cache";
}

struct GlobalOpts {
  std::string format = "plain";
  std::string cache_dir = default_cache_dir();
  bool offline = false;
  int cap = barred::kDefaultEnumerationCap;
};

BigInt count_by_method(const std::string& method, int n,
                       const barred::BarredPattern& pattern,
                       bool default_pattern, const GlobalOpts& g,
                       int threads) {
  if (method == "brute")
    return barred::count_avoiders_brute(n, pattern, g.cap, threads);
  if (!default_pattern)
    throw std::runtime_error("--method " + method +
                             " evaluates the closed form for the default "
                             "pattern; use --method brute with --pattern");
  if (method == "formula") return barred::theorem_count(n);
  if (method == "eq1")
    return barred::bell(n - 1) + barred::count_j2(n) + barred::count_j_ge3(n);
  throw std::runtime_error("unknown method '" + method + "'");
}

std::string join(const std::vector<int>& xs, const char* sep) {
  std::string out;
  for (size_t t = 0; t < xs.size(); ++t) {
    if (t) out += sep;
    out += std::to_string(xs[t]);
  }
  return out;
}

std::string opt_field(std::optional<int> v) {
  return v ? std::to_string(*v) : "-";
}

void run_decompose(int n, const GlobalOpts& g) {
  const barred::Decomposition d = barred::decompose(n, g.cap);
  const bool lines = g.format == "lines";
  if (!lines) std::cout << "# j_class a b j k i count formula match\n";
  auto emit = [&](int j_class, const std::string& a, const std::string& b,
                  const std::string& j, const std::string& k,
                  const std::string& i, const BigInt& count,
                  const BigInt& formula) {
    const char* match = (count == formula) ? "equal" : "unequal";
    if (lines) {
      std::cout << "j_class=" << j_class << " a=" << a << " b=" << b
                << " j=" << j << " k=" << k << " i=" << i
                << " count=" << count << " formula=" << formula
                << " match=" << match << "\n";
    } else {
      std::cout << j_class << ' ' << a << ' ' << b << ' ' << j << ' ' << k
                << ' ' << i << ' ' << count << ' ' << formula << ' ' << match
                << "\n";
    }
  };
  emit(1, "-", "-", "1", "-", "-", d.j1_count, barred::bell(n - 1));
  emit(2, "-", "-", "2", "-", "-", d.j2_count, barred::count_j2(n));
  for (const auto& [key, count] : d.j_ge3) {
    const auto [a, b, j, k, i] = key;
    const std::optional<int> iopt =
        i ? std::optional<int>(i) : std::nullopt;
    emit(3, std::to_string(a), std::to_string(b), std::to_string(j),
         std::to_string(k), opt_field(iopt), count,
         barred::bucket_expected(n, a, b, j, k, iopt));
  }
}

void run_oeis_compare(const std::string& id, int max_n, const GlobalOpts& g) {
  barred::OeisSequence theirs =
      barred::fetch(id, g.cache_dir, g.offline);
  std::cerr << id << ": source=" << barred::to_string(theirs.source)
            << " terms=" << theirs.terms.size() << " offset=" << theirs.offset
            << "\n";

  // our sequence with the empty-permutation term prepended, indexed from 0
  barred::Series ours;
  ours.label = "ours";
  ours.offset = 0;
  ours.terms.push_back(1);
  for (const BigInt& v : barred::sequence_terms(max_n)) ours.terms.push_back(v);

  const barred::ComparisonReport rep =
      barred::compare(ours, barred::as_series(theirs));

  const bool lines = g.format == "lines";
  const int shown = std::min(static_cast<int>(ours.terms.size()),
                             static_cast<int>(theirs.terms.size()));
  if (!lines) std::cout << "# idx ours " << id << "\n";
  for (int t = 0; t < shown; ++t) {
    if (lines)
      std::cout << "idx=" << t << " ours=" << ours.terms[t]
                << " theirs=" << theirs.terms[t] << "\n";
    else
      std::cout << t << ' ' << ours.terms[t] << ' ' << theirs.terms[t] << "\n";
  }
  if (lines) {
    std::cout << "common_prefix=" << rep.common_prefix_length
              << " shift=" << rep.alignment_shift;
    if (rep.divergence_index)
      std::cout << " divergence_index=" << *rep.divergence_index
                << " ours=" << rep.left_value
                << " theirs=" << rep.right_value << "\n";
    else
      std::cout << " divergence_index=-\n";
    return;
  }
  std::cout << "common prefix: " << rep.common_prefix_length
            << " term(s) (alignment shift " << rep.alignment_shift << ")\n";
  if (rep.divergence_index)
    std::cout << "first divergence at aligned index " << *rep.divergence_index
              << ": ours=" << rep.left_value << " " << id << "="
              << rep.right_value << "\n";
  else
    std::cout << "no divergence within overlap of " << rep.overlap_length
              << " term(s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "barred: exact counting and structure tools for permutations avoiding "
      "barred patterns (default pattern: ~1 4 3 ~5 2)"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"plain", "lines"}))
      ->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir,
                 "OEIS cache directory (env BARRED_CACHE_DIR)")
      ->capture_default_str();
  app.add_flag("--offline", g.offline, "never touch the network");
  app.add_option("--cap", g.cap, "exhaustive-enumeration cap")
      ->check(CLI::Range(0, barred::kAbsoluteEnumerationCap))
      ->capture_default_str();

  // count
  auto* cmd_count = app.add_subcommand("count", "count avoiders of [n]");
  int count_n = 0;
  std::string count_method = "formula";
  std::string count_pattern;
  int count_threads = 1;
  cmd_count->add_option("--n", count_n, "size of the permutations")->required();
  cmd_count->add_option("--method", count_method, "formula, eq1 or brute")
      ->check(CLI::IsMember({"formula", "eq1", "brute"}))
      ->capture_default_str();
  cmd_count->add_option("--pattern", count_pattern,
                        "pattern text, e.g. \"~1 4 3 ~5 2\"");
  cmd_count->add_option("--threads", count_threads,
                        "worker threads for --method brute")
      ->check(CLI::Range(1, 64));

  // sequence
  auto* cmd_seq = app.add_subcommand("sequence", "list counts for n = 1..max");
  int seq_max = 0;
  std::string seq_method = "formula";
  bool seq_bfile = false;
  cmd_seq->add_option("--max", seq_max, "largest n")->required();
  cmd_seq->add_option("--method", seq_method, "formula, eq1 or brute")
      ->check(CLI::IsMember({"formula", "eq1", "brute"}))
      ->capture_default_str();
  cmd_seq->add_flag("--bfile", seq_bfile, "emit b-file lines (\"n value\")");

  // check
  auto* cmd_check =
      app.add_subcommand("check", "test one permutation against a pattern");
  std::string check_perm;
  std::string check_pattern;
  cmd_check->add_option("--perm", check_perm, "one-line notation, e.g. \"3 2 1\"")
      ->required();
  cmd_check->add_option("--pattern", check_pattern, "pattern text");

  // enumerate
  auto* cmd_enum =
      app.add_subcommand("enumerate", "stream every avoider of [n]");
  int enum_n = 0;
  std::string enum_pattern;
  std::string enum_mode = "oracle";
  cmd_enum->add_option("--n", enum_n, "size of the permutations")->required();
  cmd_enum->add_option("--pattern", enum_pattern, "pattern text");
  cmd_enum->add_option("--mode", enum_mode, "oracle (unpruned) or fast")
      ->check(CLI::IsMember({"oracle", "fast"}))
      ->capture_default_str();

  // decompose
  auto* cmd_dec = app.add_subcommand(
      "decompose", "bucket avoiders by the counting statistics");
  int dec_n = 0;
  cmd_dec->add_option("--n", dec_n, "size of the permutations")->required();

  // oeis compare
  auto* cmd_oeis = app.add_subcommand("oeis", "OEIS sequence operations");
  cmd_oeis->require_subcommand(1);
  auto* cmd_cmp = cmd_oeis->add_subcommand(
      "compare", "align our sequence with an OEIS b-file");
  std::string oeis_id = "A122993";
  int oeis_max = 12;
  cmd_cmp->add_option("--id", oeis_id, "OEIS id")->capture_default_str();
  cmd_cmp->add_option("--max", oeis_max, "largest n of our sequence")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const bool lines = g.format == "lines";

    if (*cmd_count) {
      const barred::BarredPattern pattern =
          count_pattern.empty() ? barred::BarredPattern::canonical()
                                : barred::BarredPattern::parse(count_pattern);
      const BigInt c = count_by_method(count_method, count_n, pattern,
                                       count_pattern.empty(), g, count_threads);
      if (lines)
        std::cout << "n=" << count_n << " method=" << count_method
                  << " count=" << c << "\n";
      else
        std::cout << c << "\n";
    }

    if (*cmd_seq) {
      if (seq_max < 1) throw std::runtime_error("--max must be at least 1");
      for (int n = 1; n <= seq_max; ++n) {
        const BigInt c = count_by_method(seq_method, n,
                                         barred::BarredPattern::canonical(),
                                         true, g, 1);
        if (seq_bfile)
          std::cout << n << ' ' << c << "\n";
        else if (lines)
          std::cout << "n=" << n << " count=" << c << "\n";
        else
          std::cout << n << '\t' << c << "\n";
      }
    }

    if (*cmd_check) {
      const barred::Permutation host = barred::Permutation::parse(check_perm);
      const barred::BarredPattern pattern =
          check_pattern.empty() ? barred::BarredPattern::canonical()
                                : barred::BarredPattern::parse(check_pattern);
      const auto witness = barred::first_unextendable(host, pattern);
      if (!witness) {
        std::cout << (lines ? "verdict=avoids" : "avoids") << "\n";
      } else {
        std::vector<int> values;
        for (int q : witness->positions) values.push_back(host.at(q));
        if (lines)
          std::cout << "verdict=contains positions="
                    << join(witness->positions, ",") << " values="
                    << join(values, ",") << "\n";
        else
          std::cout << "contains\nwitness positions: "
                    << join(witness->positions, " ") << "\nwitness values: "
                    << join(values, " ") << "\n";
      }
    }

    if (*cmd_enum) {
      const barred::BarredPattern pattern =
          enum_pattern.empty() ? barred::BarredPattern::canonical()
                               : barred::BarredPattern::parse(enum_pattern);
      const auto mode = enum_mode == "fast" ? barred::EnumerationMode::fast
                                            : barred::EnumerationMode::oracle;
      barred::enumerate_avoiders(
          enum_n, pattern, mode,
          [](const barred::Permutation& p) {
            std::cout << p.str() << "\n";
            return true;
          },
          g.cap);
    }

    if (*cmd_dec) run_decompose(dec_n, g);

    if (*cmd_cmp) run_oeis_compare(oeis_id, oeis_max, g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
