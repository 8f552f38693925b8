#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evotopic/cli/config.hpp"
#include "evotopic/corpus.hpp"
#include "evotopic/termmine/occurrence.hpp"
#include "evotopic/termmine/tagger.hpp"

namespace evotopic::cli {

enum class Subcommand { ingest, series, trends, network, terms, all };

/// Throws ConfigError("subcommand", ...) for an unknown name.
Subcommand parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand cmd);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> warnings;
  std::string error;
  std::string error_key;  ///< offending config key for exit code 3
};

/// Runs one subcommand and writes its reports into config.output_dir,
/// together with effective_config.conf and report.json (or error.json).
/// Never throws; failures map to the exit codes above.
RunResult run(Subcommand cmd, const PipelineConfig& config);

/// Which record text feeds term extraction.
enum class TextSource { abstract, title, both };
TextSource parse_text_source(std::string_view name);

/// Document text for a record, empty when the source field is absent.
std::string document_text(const PubRecord& record, TextSource source);

/// Extracts per-document unit sets with `jobs` worker threads. Records
/// without text are skipped; a tagger failure skips the document and adds
/// a warning. Output order follows corpus order regardless of `jobs`.
std::vector<termmine::DocumentUnits> extract_documents(const Corpus& corpus, const termmine::Tagger& tagger,
                                                       TextSource source, int jobs,
                                                       std::vector<std::string>& warnings);

/// Same, but reading tokens from pre-tagged documents. Documents carrying
/// "#doc <id>" markers are matched by id; otherwise they are matched in
/// order to the corpus records that have text. Throws InputError when the
/// documents cannot be matched.
std::vector<termmine::DocumentUnits> extract_pretagged(const Corpus& corpus,
                                                       const std::vector<termmine::PretaggedDocument>& docs,
                                                       TextSource source, std::vector<std::string>& warnings);

}  // namespace evotopic::cli
