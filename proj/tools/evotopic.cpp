// evotopic: command-line front end for the bibliometrics pipeline.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evotopic/cli/config.hpp"
#include "evotopic/cli/pipeline.hpp"
#include "evotopic/corpus.hpp"
#include "evotopic/error.hpp"
#include "evotopic/synth.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string input, format, output, topic, years, region_map, tagger, pretagged, lexicon, term_source;
  std::vector<std::string> windows;
  std::optional<long long> k_c, top_n, window_len, step, jobs;
  std::optional<double> percentile;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("-c,--config", o.config_path, "key = value configuration file");
  sub->add_option("--set", o.sets, "Override any config key (key=value); repeatable");
  sub->add_option("-i,--input", o.input, "Input records file");
  sub->add_option("--format", o.format, "Input format: jsonl or csv");
  sub->add_option("-o,--output", o.output, "Output directory");
  sub->add_option("--topic", o.topic, "Topic query, e.g. \"chernobyl OR chornobyl\"");
  sub->add_option("--years", o.years, "Analysis year range FIRST:LAST");
  sub->add_option("--window", o.windows, "Extra network window FIRST:LAST; repeatable");
  sub->add_option("--window-len", o.window_len, "Sliding window length in years");
  sub->add_option("--step", o.step, "Sliding window step in years");
  sub->add_option("--region-map", o.region_map, "country,region CSV");
  sub->add_option("--tagger", o.tagger, "rule or pretagged");
  sub->add_option("--pretagged", o.pretagged, "Pre-tagged token file");
  sub->add_option("--lexicon", o.lexicon, "Extra lexicon for the rule tagger");
  sub->add_option("--term-source", o.term_source, "abstract, title or both");
  sub->add_option("--k-c", o.k_c, "Drop units occurring in k_c or fewer documents");
  sub->add_option("--percentile", o.percentile, "Termhood percentile threshold");
  sub->add_option("--top-n", o.top_n, "Number of terms to report");
  sub->add_option("-j,--jobs", o.jobs, "Worker threads");
}

Overrides collect(const CommonOptions& o) {
  Overrides ov;
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) ov.emplace_back(key, v);
  };
  put("input", o.input);
  put("format", o.format);
  put("output_dir", o.output);
  put("topic", o.topic);
  if (!o.years.empty()) {
    const auto colon = o.years.find(':');
    if (colon == std::string::npos) throw evotopic::ConfigError("years", "expected FIRST:LAST");
    ov.emplace_back("year_start", o.years.substr(0, colon));
    ov.emplace_back("year_end", o.years.substr(colon + 1));
  }
  if (!o.windows.empty()) {
    std::string joined;
    for (const auto& w : o.windows) joined += (joined.empty() ? "" : ",") + w;
    ov.emplace_back("windows", joined);
  }
  if (o.window_len) ov.emplace_back("window_len", std::to_string(*o.window_len));
  if (o.step) ov.emplace_back("window_step", std::to_string(*o.step));
  put("region_map", o.region_map);
  put("tagger", o.tagger);
  put("pretagged", o.pretagged);
  put("lexicon", o.lexicon);
  put("term_source", o.term_source);
  if (o.k_c) ov.emplace_back("k_c", std::to_string(*o.k_c));
  if (o.percentile) ov.emplace_back("percentile", std::to_string(*o.percentile));
  if (o.top_n) ov.emplace_back("top_n", std::to_string(*o.top_n));
  if (o.jobs) ov.emplace_back("jobs", std::to_string(*o.jobs));
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw evotopic::ConfigError(s, "--set expects key=value");
    ov.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return ov;
}

int run_pipeline(evotopic::cli::Subcommand cmd, const CommonOptions& o) {
  namespace cli = evotopic::cli;
  cli::PipelineConfig cfg;
  try {
    std::optional<std::string> path;
    if (!o.config_path.empty()) path = o.config_path;
    cfg = cli::load_config(path, collect(o));
  } catch (const evotopic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    std::cout << R"({"status":"error","exit_code":3,"key":")" << e.key() << "\"}\n";
    return cli::kExitConfig;
  } catch (const evotopic::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return cli::kExitInput;
  }
  const auto result = cli::run(cmd, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (result.exit_code != cli::kExitOk) {
    std::cerr << "error: " << result.error << '\n';
  } else {
    std::cerr << "wrote reports to " << cfg.output_dir << " (" << result.warnings.size() << " warnings)\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliometric analysis of an event-triggered research topic"};
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<std::pair<CLI::App*, evotopic::cli::Subcommand>> pipeline_cmds;
  for (auto [name, cmd, help] : {
           std::tuple{"ingest", evotopic::cli::Subcommand::ingest, "Parse and validate records"},
           std::tuple{"series", evotopic::cli::Subcommand::series, "Annual series, peaks, country adoption"},
           std::tuple{"trends", evotopic::cli::Subcommand::trends, "Per-discipline trend fits"},
           std::tuple{"network", evotopic::cli::Subcommand::network, "Country co-authorship network"},
           std::tuple{"terms", evotopic::cli::Subcommand::terms, "Term extraction and termhood ranking"},
           std::tuple{"all", evotopic::cli::Subcommand::all, "Every report"}}) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, common);
    pipeline_cmds.emplace_back(sub, cmd);
  }

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus and matching region map");
  evotopic::synth::Options synth_opts;
  std::string synth_out, synth_regions;
  synth_cmd->add_option("--records", synth_opts.records, "Number of records")->capture_default_str();
  synth_cmd->add_option("--seed", synth_opts.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("-o,--output", synth_out, "Output JSONL path")->required();
  synth_cmd->add_option("--regions", synth_regions, "Also write the region map CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return evotopic::cli::kExitConfig;
  }

  if (synth_cmd->parsed()) {
    std::ofstream out(synth_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << synth_out << '\n';
      return evotopic::cli::kExitInput;
    }
    evotopic::write_jsonl(evotopic::Corpus(evotopic::synth::generate(synth_opts), {"synthetic", ""}), out);
    if (!synth_regions.empty()) {
      std::ofstream regions(synth_regions, std::ios::binary);
      evotopic::synth::write_region_map(regions);
    }
    return 0;
  }
  for (auto [sub, cmd] : pipeline_cmds) {
    if (sub->parsed()) {
      try {
        return run_pipeline(cmd, common);
      } catch (const evotopic::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return evotopic::cli::kExitConfig;
      }
    }
  }
  return evotopic::cli::kExitFailure;
}
