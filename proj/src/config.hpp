#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "date.hpp"
#include "textprep.hpp"

namespace trendmine {

inline constexpr const char* kVersion = "1.0";
inline constexpr const char* kSeedEnv = "TRENDMINE_SEED";

enum class TableFormat { Csv, Json };

struct RunConfig {
  // inputs
  std::string in;
  std::string polls;
  std::string states;
  std::string labeled;
  std::string results;
  std::string stopwords;
  std::string negations;

  // window; unset bounds come from the data
  std::optional<Date> first_day;
  std::optional<Date> last_day;
  int offset_minutes = -480;

  std::optional<std::uint64_t> seed;
  std::size_t sample_size = 10000;
  std::string out = "out";
  std::string run_id;  // defaults to the basename of `out`
  TableFormat format = TableFormat::Csv;
  std::size_t top_n = 20;  // histogram bins
  double min_prominence = 1.5;

  std::vector<text::CandidateSpec> candidates = text::default_candidates();

  // lda
  int k = 5;
  int iters = 1000;
  std::optional<double> alpha;
  double beta = 0.01;
  int top_words = 15;
  int min_count = 1;

  // synth
  std::size_t geo_per_state = 2000;
  std::size_t labeled_rows = 989;
  std::size_t base_volume = 1000;

  int port = 8080;

  // Sets one key from its text form. Keys are the flag names with '-' or
  // '_' accepted interchangeably. Throws Error(InvalidArgument).
  void set(const std::string& key, const std::string& value);

  // Reads a sectioned key = value file; section names are ignored except
  // [candidates], whose entries are `name = alias, alias`.
  void load_file(const std::string& path);

  // CLI seed, else file seed, else $TRENDMINE_SEED, else 1.
  std::uint64_t effective_seed() const;
  std::string effective_run_id() const;

  // Canonical JSON of everything that affects outputs (not `out`, `port`);
  // input files are represented by their content checksums.
  nlohmann::json canonical() const;
  std::string hash() const;  // sha256 hex of canonical().dump()
};

std::vector<text::CandidateSpec> parse_candidates(const std::string& text);

}  // namespace trendmine
