#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evotopic/chronology.hpp"

namespace evotopic::cli {

/// Environment variable that overrides output_dir from a config file.
inline constexpr const char* kOutputDirEnv = "EVOTOPIC_OUTPUT_DIR";

/// Every pipeline parameter. Defaults target the Chornobyl literature: the four
/// Chornobyl spellings, event year 1986, five-year anniversary cycle,
/// k_c = 4, P50 termhood threshold and a TOP50 term list.
struct PipelineConfig {
  // ingest
  std::string input;
  std::string format = "jsonl";
  std::string field_map;
  std::string source = "input";
  std::string topic = "chornobyl OR chornobyl' OR chernobyl OR chernobyl'";
  std::string joint_topic;  ///< optional second query, e.g. "fukushima"

  // chronology
  int year_start = 1986;
  std::optional<int> year_end;  ///< defaults to the latest record year
  int event_year = 1986;
  int cycle = 5;
  double min_prominence = 1.2;
  std::string region_map;

  // disciplines
  double trend_quantile = 0.25;

  // network
  int window_len = 6;
  int window_step = 6;
  std::vector<YearRange> windows;
  std::string clustering = "local";  ///< local | transitivity
  bool mean_degree_isolates = true;

  // terms
  std::string tagger = "rule";  ///< rule | pretagged
  std::string lexicon;
  std::string pretagged;
  std::string term_source = "abstract";  ///< abstract | title | both
  std::int64_t k_c = 4;
  double percentile = 50.0;
  std::size_t top_n = 50;
  std::int64_t zipf_min_freq = 2;

  // run
  std::string output_dir = "evotopic-out";
  int jobs = 1;

  /// Applies one key/value; throws ConfigError naming the key.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError for the first parameter outside its bounds.
  void validate() const;

  /// Effective config in the same key = value format that read_config accepts.
  std::string to_text() const;
};

/// Parses "key = value" lines ('#' starts a comment) into an ordered list.
/// Throws ConfigError on a line without '='.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in);

/// Defaults, then the config file (if any), then the output-dir environment
/// override, then CLI overrides. Validates the result.
PipelineConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace evotopic::cli
