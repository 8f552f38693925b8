#include "evotopic/cli/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "evotopic/chronology.hpp"
#include "evotopic/conetwork.hpp"
#include "evotopic/csv.hpp"
#include "evotopic/disciplines.hpp"
#include "evotopic/error.hpp"
#include "evotopic/termmine/cooccurrence.hpp"
#include "evotopic/termmine/termhood.hpp"
#include "evotopic/termmine/units.hpp"
#include "evotopic/termmine/zipf.hpp"
#include "evotopic/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace evotopic::cli {

Subcommand parse_subcommand(std::string_view name) {
  if (name == "ingest") return Subcommand::ingest;
  if (name == "series") return Subcommand::series;
  if (name == "trends") return Subcommand::trends;
  if (name == "network") return Subcommand::network;
  if (name == "terms") return Subcommand::terms;
  if (name == "all") return Subcommand::all;
  throw ConfigError("subcommand", "unknown subcommand '" + std::string(name) + "'");
}

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::ingest: return "ingest";
    case Subcommand::series: return "series";
    case Subcommand::trends: return "trends";
    case Subcommand::network: return "network";
    case Subcommand::terms: return "terms";
    case Subcommand::all: return "all";
  }
  return "all";
}

TextSource parse_text_source(std::string_view name) {
  if (name == "abstract") return TextSource::abstract;
  if (name == "title") return TextSource::title;
  if (name == "both") return TextSource::both;
  throw ConfigError("term_source", "expected abstract, title or both");
}

std::string document_text(const PubRecord& record, TextSource source) {
  switch (source) {
    case TextSource::abstract: return record.abstract.value_or("");
    case TextSource::title: return record.title;
    case TextSource::both:
      // Title and abstract are separate sentences; the period keeps phrases
      // from running across the boundary.
      return record.abstract ? record.title + " . " + *record.abstract : record.title;
  }
  return {};
}

namespace {

termmine::DocumentUnits make_document(const PubRecord& r, const std::vector<termmine::SemanticUnit>& units) {
  termmine::DocumentUnits d;
  d.doc_id = r.id;
  d.year = r.year;
  d.disciplines = r.disciplines;
  d.units.reserve(units.size());
  for (const auto& u : units) d.units.push_back(u.key());
  return d;
}

}  // namespace

std::vector<termmine::DocumentUnits> extract_documents(const Corpus& corpus, const termmine::Tagger& tagger,
                                                       TextSource source, int jobs,
                                                       std::vector<std::string>& warnings) {
  const auto& records = corpus.records();
  struct Slot {
    bool has_text = false;
    std::optional<std::string> failure;
    termmine::DocumentUnits doc;
  };
  std::vector<Slot> slots(records.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto text = document_text(records[i], source);
      if (text::trim(text).empty()) continue;
      slots[i].has_text = true;
      try {
        slots[i].doc = make_document(records[i], termmine::extract_semantic_units(text, tagger));
      } catch (const std::exception& e) {
        slots[i].failure = e.what();
      }
    }
  };

  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(jobs), records.size()));
  if (n_threads <= 1) {
    work(0, records.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (records.size() + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t b = t * chunk, e = std::min(records.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  std::vector<termmine::DocumentUnits> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].has_text) continue;
    if (slots[i].failure) {
      warnings.push_back("document '" + records[i].id + "' skipped: tagger failure: " + *slots[i].failure);
      continue;
    }
    out.push_back(std::move(slots[i].doc));
  }
  return out;
}

std::vector<termmine::DocumentUnits> extract_pretagged(const Corpus& corpus,
                                                       const std::vector<termmine::PretaggedDocument>& docs,
                                                       TextSource source, std::vector<std::string>& warnings) {
  std::vector<const PubRecord*> with_text;
  for (const auto& r : corpus) {
    if (!text::trim(document_text(r, source)).empty()) with_text.push_back(&r);
  }
  const bool by_id = !docs.empty() && std::all_of(docs.begin(), docs.end(), [](const auto& d) { return d.id.has_value(); });

  std::vector<std::pair<const PubRecord*, const termmine::PretaggedDocument*>> pairs;
  if (by_id) {
    std::unordered_map<std::string, const termmine::PretaggedDocument*> index;
    for (const auto& d : docs) index.emplace(*d.id, &d);
    for (const auto* r : with_text) {
      auto it = index.find(r->id);
      if (it == index.end()) {
        warnings.push_back("document '" + r->id + "' skipped: no pre-tagged tokens");
        continue;
      }
      pairs.emplace_back(r, it->second);
    }
  } else {
    if (docs.size() != with_text.size()) {
      throw InputError("pre-tagged input has " + std::to_string(docs.size()) + " documents but " +
                       std::to_string(with_text.size()) + " records have text; add #doc markers");
    }
    for (std::size_t i = 0; i < docs.size(); ++i) pairs.emplace_back(with_text[i], &docs[i]);
  }

  std::vector<termmine::DocumentUnits> out;
  for (const auto& [r, d] : pairs) {
    if (d->error) {
      warnings.push_back("document '" + r->id + "' skipped: " + *d->error);
      continue;
    }
    out.push_back(make_document(*r, termmine::extract_semantic_units(d->tokens)));
  }
  return out;
}

namespace {

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + (dir_ / name).string() + "'");
    out << content;
  }
  template <class Fn>
  void write_with(const std::string& name, Fn&& fn) const {
    std::ostringstream o;
    fn(o);
    write(name, o.str());
  }

 private:
  fs::path dir_;
};

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("no ") + what + " path configured");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string("cannot read ") + what + " '" + path + "'");
  return in;
}

struct Context {
  const PipelineConfig& cfg;
  Outputs out;
  std::vector<std::string>& warnings;
  ParseResult parsed;
  Corpus analysis;     // topic- and year-filtered
  Corpus in_range;     // year-filtered only
  YearRange range;
};

void run_ingest(Context& cx) {
  cx.out.write_with("corpus.jsonl", [&](std::ostream& o) { write_jsonl(cx.parsed.corpus, o); });
  cx.out.write_with("rejects.jsonl", [&](std::ostream& o) { write_rejects(cx.parsed.rejects, o); });
  cx.out.write("validation.json", to_json(validate(cx.parsed.corpus)));
}

void run_series(Context& cx) {
  const auto annual = annual_counts(cx.analysis, cx.range);
  cx.out.write_with("annual_counts.csv", [&](std::ostream& o) { write_series_csv(annual, o); });
  cx.out.write("annual_counts.json", series_to_json(annual));

  const auto peaks = detect_peaks(annual, cx.cfg.min_prominence);
  std::map<int, int> anniversary;
  for (const auto& a : anniversary_alignment(peaks, cx.cfg.event_year, cx.cfg.cycle)) anniversary[a.peak.year] = a.k;
  cx.out.write_with("peaks.csv", [&](std::ostream& o) {
    csv::write_row(o, {"year", "count", "prominence", "anniversary_k"});
    for (const auto& p : peaks) {
      auto it = anniversary.find(p.year);
      csv::write_row(o, {std::to_string(p.year), std::to_string(p.value), text::format_double(p.prominence),
                         it == anniversary.end() ? "" : std::to_string(it->second)});
    }
  });

  RegionMap regions;
  if (!cx.cfg.region_map.empty()) {
    auto in = open_input(cx.cfg.region_map, "region map");
    regions = RegionMap::read_csv(in);
  }
  const auto cumulative = cumulative_countries(cx.analysis, regions, cx.range);
  cx.out.write_with("cumulative_countries.csv",
                    [&](std::ostream& o) { write_series_table_csv(cumulative, "region", o); });

  if (!cx.cfg.joint_topic.empty()) {
    const auto joint = joint_topic_series(cx.in_range, TopicQuery::parse(cx.cfg.topic),
                                          TopicQuery::parse(cx.cfg.joint_topic), cx.range);
    cx.out.write_with("joint_topics.csv", [&](std::ostream& o) {
      csv::write_row(o, {"year", "a", "b", "a_and_b"});
      for (int y = cx.range.first; y <= cx.range.last; ++y) {
        csv::write_row(o, {std::to_string(y), std::to_string(joint.a.at(y)), std::to_string(joint.b.at(y)),
                           std::to_string(joint.both.at(y))});
      }
    });
  }
}

void run_trends(Context& cx) {
  const auto series = discipline_series(cx.analysis, cx.range);
  cx.out.write_with("discipline_series.csv",
                    [&](std::ostream& o) { write_series_table_csv(series, "discipline", o); });
  std::vector<TrendFit> fits;
  for (const auto& [label, s] : series) {
    try {
      fits.push_back(trend_fit(s, label));
    } catch (const AnalysisError& e) {
      cx.warnings.push_back(e.what());
    }
  }
  std::set<std::string> selected;
  if (!fits.empty()) {
    for (const auto& f : rank_trends(fits, cx.cfg.trend_quantile)) selected.insert(f.discipline);
  }
  cx.out.write_with("trends.csv", [&](std::ostream& o) { write_trend_report(fits, selected, o); });
}

MetricsOptions metrics_options(const PipelineConfig& cfg) {
  MetricsOptions m;
  m.clustering = cfg.clustering == "transitivity" ? ClusteringVariant::transitivity : ClusteringVariant::local_average;
  m.mean_degree_includes_isolates = cfg.mean_degree_isolates;
  return m;
}

void run_network(Context& cx) {
  const auto opts = metrics_options(cx.cfg);
  const auto graph = build_network(cx.analysis, cx.range);
  cx.out.write("network.net", export_pajek(graph));
  const auto metrics = network_metrics(graph, opts);
  if (metrics.empty_graph) cx.warnings.push_back("network: no countries in range");
  cx.out.write("network_metrics.json", to_json(metrics));
  cx.out.write("windowed_metrics.json",
               to_json(windowed_metrics(cx.analysis, cx.cfg.window_len, cx.cfg.window_step, opts)));
  for (const auto& w : cx.cfg.windows) {
    const auto g = build_network(cx.analysis, w);
    const auto suffix = std::to_string(w.first) + "-" + std::to_string(w.last);
    cx.out.write("network_" + suffix + ".net", export_pajek(g));
    const auto m = network_metrics(g, opts);
    if (m.empty_graph) cx.warnings.push_back("network " + suffix + ": window has no countries");
    cx.out.write("network_metrics_" + suffix + ".json", to_json(m));
  }
}

void run_terms(Context& cx) {
  using namespace termmine;
  const auto source = parse_text_source(cx.cfg.term_source);

  std::vector<DocumentUnits> docs, cooc_docs;
  if (cx.cfg.tagger == "pretagged") {
    auto in = open_input(cx.cfg.pretagged, "pre-tagged input");
    const auto tagged = read_pretagged(in);
    docs = extract_pretagged(cx.analysis, tagged, source, cx.warnings);
    cooc_docs = docs;
  } else {
    RuleTagger tagger;
    if (!cx.cfg.lexicon.empty()) {
      auto in = open_input(cx.cfg.lexicon, "lexicon");
      tagger.load_lexicon(in);
    }
    docs = extract_documents(cx.analysis, tagger, source, cx.cfg.jobs, cx.warnings);
    if (source == TextSource::both) {
      cooc_docs = docs;
    } else {
      std::vector<std::string> ignored;  // failures were already reported above
      cooc_docs = extract_documents(cx.analysis, tagger, TextSource::both, cx.cfg.jobs, ignored);
    }
  }

  const auto table = count_occurrences(docs);
  json summary = {{"documents", table.n_documents()}, {"units", table.units().size()},
                  {"disciplines", table.disciplines()}, {"k_c", cx.cfg.k_c}};

  const auto ranked = frequency_rank(table);
  cx.out.write_with("frequency_rank.csv", [&](std::ostream& o) {
    csv::write_row(o, {"rank", "term", "k"});
    for (const auto& r : ranked) csv::write_row(o, {std::to_string(r.rank), r.key, std::to_string(r.k)});
  });
  try {
    const auto fit = fit_zipf(ranked, cx.cfg.zipf_min_freq);
    summary["zipf"] = {{"exponent", fit.exponent}, {"r_squared", fit.r_squared}, {"n_points", fit.n_points},
                       {"min_freq", cx.cfg.zipf_min_freq}};
  } catch (const AnalysisError& e) {
    summary["zipf"] = nullptr;
    cx.warnings.push_back(std::string("zipf: ") + e.what());
  }
  cx.out.write_with("survivor_curve.csv", [&](std::ostream& o) {
    csv::write_row(o, {"k_c", "units_remaining"});
    if (!table.empty()) {
      for (auto [kc, n] : survivor_curve(table)) csv::write_row(o, {std::to_string(kc), std::to_string(n)});
    }
  });

  std::vector<TermScore> terms;
  try {
    const auto priors = discipline_priors(table);
    cx.out.write_with("priors.csv", [&](std::ostream& o) {
      csv::write_row(o, {"discipline", "mass", "probability"});
      for (std::size_t i = 0; i < priors.disciplines.size(); ++i) {
        csv::write_row(o, {priors.disciplines[i], std::to_string(priors.mass[i]),
                           text::format_double(priors.probability[i])});
      }
    });
    const auto survivors = table.threshold(cx.cfg.k_c);
    auto sel = select_terms(survivors, priors, cx.cfg.percentile, cx.cfg.top_n);
    annotate_terms(sel.terms, survivors, priors);
    summary["units_above_k_c"] = survivors.units().size();
    summary["termhood_threshold"] = sel.threshold;
    summary["scored_units"] = sel.scored_units;
    summary["units_above_threshold"] = sel.survivors;
    summary["undefined_termhood"] = sel.undefined.size();
    if (sel.degenerate) cx.warnings.push_back("terms: " + *sel.degenerate);
    terms = std::move(sel.terms);
  } catch (const AnalysisError& e) {
    cx.warnings.push_back(std::string("terms: ") + e.what());
  }
  if (terms.size() < cx.cfg.top_n) {
    cx.warnings.push_back("terms: report has " + std::to_string(terms.size()) + " rows, fewer than top_n = " +
                          std::to_string(cx.cfg.top_n));
  }
  summary["selected"] = terms.size();
  cx.out.write_with("term_report.csv", [&](std::ostream& o) { write_term_report(terms, o); });

  std::vector<std::string> keys;
  for (const auto& t : terms) keys.push_back(t.term);
  const auto matrix = cooccurrence_matrix(cooc_docs, keys);
  cx.out.write_with("cooccurrence.csv", [&](std::ostream& o) { write_cooccurrence_csv(matrix, o); });
  cx.out.write("terms_summary.json", summary.dump(2) + "\n");
}

void write_error(const fs::path& dir, const RunResult& r) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  json j = {{"status", "error"}, {"exit_code", r.exit_code}, {"error", r.error}};
  if (!r.error_key.empty()) j["key"] = r.error_key;
  std::ofstream out(dir / "error.json", std::ios::binary | std::ios::trunc);
  if (out) out << j.dump(2) << '\n';
}

}  // namespace

RunResult run(Subcommand cmd, const PipelineConfig& config) {
  RunResult result;
  const fs::path dir = config.output_dir;
  try {
    config.validate();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    fs::remove(dir / "error.json", ec);

    Context cx{config, Outputs(dir), result.warnings, {}, {}, {}, {}};
    {
      auto in = open_input(config.input, "input");
      cx.parsed = parse_records(in, parse_format(config.format), FieldMap::parse(config.field_map), config.source);
    }
    if (!cx.parsed.rejects.empty()) {
      result.warnings.push_back(std::to_string(cx.parsed.rejects.size()) + " input rows rejected");
    }
    const int last_year = config.year_end.value_or(
        std::max(config.year_start, cx.parsed.corpus.year_span().value_or(std::pair{0, 0}).second));
    cx.range = YearRange{config.year_start, last_year};
    cx.in_range = filter_years(cx.parsed.corpus, cx.range.first, cx.range.last);
    cx.analysis = filter_topic(cx.in_range, TopicQuery::parse(config.topic));

    cx.out.write("effective_config.conf", config.to_text());
    const bool all = cmd == Subcommand::all;
    if (all || cmd == Subcommand::ingest) run_ingest(cx);
    if (all || cmd == Subcommand::series) run_series(cx);
    if (all || cmd == Subcommand::trends) run_trends(cx);
    if (all || cmd == Subcommand::network) run_network(cx);
    if (all || cmd == Subcommand::terms) run_terms(cx);

    json report = {{"status", "ok"},
                   {"subcommand", std::string(to_string(cmd))},
                   {"records_parsed", cx.parsed.corpus.size()},
                   {"records_rejected", cx.parsed.rejects.size()},
                   {"records_analysed", cx.analysis.size()},
                   {"year_range", cx.range.to_string()},
                   {"warnings_count", result.warnings.size()},
                   {"warnings", result.warnings}};
    cx.out.write("report.json", report.dump(2) + "\n");
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfig;
    result.error = e.what();
    result.error_key = e.key();
  } catch (const InputError& e) {
    result.exit_code = kExitInput;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitFailure;
    result.error = e.what();
  }
  if (result.exit_code != kExitOk) write_error(dir, result);
  return result;
}

}  // namespace evotopic::cli
