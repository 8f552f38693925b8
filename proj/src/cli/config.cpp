#include "evotopic/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evotopic/corpus.hpp"
#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic::cli {

namespace {

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const auto t = std::string(text::trim(v));
    const long long x = std::stoll(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const auto t = std::string(text::trim(v));
    const double x = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  const auto f = text::fold_case(text::trim(v));
  if (f == "true" || f == "yes" || f == "1" || f == "on") return true;
  if (f == "false" || f == "no" || f == "0" || f == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

YearRange to_range(const std::string& key, const std::string& v) {
  try {
    return YearRange::parse(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& raw) {
  const std::string value(text::trim(raw));
  if (key == "input") input = value;
  else if (key == "format") format = value;
  else if (key == "field_map") field_map = value;
  else if (key == "source") source = value;
  else if (key == "topic") topic = value;
  else if (key == "joint_topic") joint_topic = value;
  else if (key == "year_start") year_start = static_cast<int>(to_int(key, value));
  else if (key == "year_end") {
    if (value.empty() || value == "auto") year_end.reset();
    else year_end = static_cast<int>(to_int(key, value));
  }
  else if (key == "event_year") event_year = static_cast<int>(to_int(key, value));
  else if (key == "cycle") cycle = static_cast<int>(to_int(key, value));
  else if (key == "min_prominence") min_prominence = to_double(key, value);
  else if (key == "region_map") region_map = value;
  else if (key == "trend_quantile") trend_quantile = to_double(key, value);
  else if (key == "window_len") window_len = static_cast<int>(to_int(key, value));
  else if (key == "window_step") window_step = static_cast<int>(to_int(key, value));
  else if (key == "windows") {
    windows.clear();
    for (const auto& part : text::split(value, ',')) {
      if (!text::trim(part).empty()) windows.push_back(to_range(key, part));
    }
  }
  else if (key == "clustering") clustering = value;
  else if (key == "mean_degree_isolates") mean_degree_isolates = to_bool(key, value);
  else if (key == "tagger") tagger = value;
  else if (key == "lexicon") lexicon = value;
  else if (key == "pretagged") pretagged = value;
  else if (key == "term_source") term_source = value;
  else if (key == "k_c") k_c = to_int(key, value);
  else if (key == "percentile") percentile = to_double(key, value);
  else if (key == "top_n") {
    const auto n = to_int(key, value);
    if (n < 1) throw ConfigError(key, "must be >= 1");
    top_n = static_cast<std::size_t>(n);
  }
  else if (key == "zipf_min_freq") zipf_min_freq = to_int(key, value);
  else if (key == "output_dir") output_dir = value;
  else if (key == "jobs") jobs = static_cast<int>(to_int(key, value));
  else throw ConfigError(key, "unknown configuration key");
}

void PipelineConfig::validate() const {
  try {
    parse_format(format);
  } catch (const ConfigError& e) {
    throw ConfigError("format", e.what());
  }
  try {
    FieldMap::parse(field_map);
  } catch (const ConfigError& e) {
    throw ConfigError("field_map", e.what());
  }
  try {
    TopicQuery::parse(topic);
  } catch (const ConfigError&) {
    throw ConfigError("topic", "query needs at least one non-empty spelling per clause");
  }
  if (!joint_topic.empty()) {
    try {
      TopicQuery::parse(joint_topic);
    } catch (const ConfigError&) {
      throw ConfigError("joint_topic", "query needs at least one non-empty spelling per clause");
    }
  }
  auto year_ok = [](int y) { return y >= kMinYear && y <= kMaxYear; };
  if (!year_ok(year_start)) throw ConfigError("year_start", "must be within 1900..2100");
  if (year_end && !year_ok(*year_end)) throw ConfigError("year_end", "must be within 1900..2100");
  if (year_end && *year_end < year_start) throw ConfigError("year_end", "must not precede year_start");
  if (cycle < 1) throw ConfigError("cycle", "must be >= 1");
  if (!(min_prominence >= 1.0)) throw ConfigError("min_prominence", "must be >= 1");
  if (!(trend_quantile > 0.0 && trend_quantile <= 1.0)) throw ConfigError("trend_quantile", "must be in (0, 1]");
  if (window_len < 1) throw ConfigError("window_len", "must be >= 1");
  if (window_step < 1) throw ConfigError("window_step", "must be >= 1");
  if (clustering != "local" && clustering != "transitivity") {
    throw ConfigError("clustering", "expected local or transitivity");
  }
  if (tagger != "rule" && tagger != "pretagged") throw ConfigError("tagger", "expected rule or pretagged");
  if (tagger == "pretagged" && pretagged.empty()) throw ConfigError("pretagged", "required when tagger = pretagged");
  if (term_source != "abstract" && term_source != "title" && term_source != "both") {
    throw ConfigError("term_source", "expected abstract, title or both");
  }
  if (k_c < 0) throw ConfigError("k_c", "must be >= 0");
  if (!(percentile > 0.0 && percentile <= 100.0)) throw ConfigError("percentile", "must be in (0, 100]");
  if (top_n < 1) throw ConfigError("top_n", "must be >= 1");
  if (zipf_min_freq < 1) throw ConfigError("zipf_min_freq", "must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
}

std::string PipelineConfig::to_text() const {
  std::ostringstream o;
  auto d = [](double v) { return text::format_double(v); };
  std::vector<std::string> ws;
  for (const auto& w : windows) ws.push_back(w.to_string());
  o << "# effective configuration\n"
    << "input = " << input << '\n'
    << "format = " << format << '\n'
    << "field_map = " << field_map << '\n'
    << "source = " << source << '\n'
    << "topic = " << topic << '\n'
    << "joint_topic = " << joint_topic << '\n'
    << "year_start = " << year_start << '\n'
    << "year_end = " << (year_end ? std::to_string(*year_end) : "auto") << '\n'
    << "event_year = " << event_year << '\n'
    << "cycle = " << cycle << '\n'
    << "min_prominence = " << d(min_prominence) << '\n'
    << "region_map = " << region_map << '\n'
    << "trend_quantile = " << d(trend_quantile) << '\n'
    << "window_len = " << window_len << '\n'
    << "window_step = " << window_step << '\n'
    << "windows = " << text::join(ws, ",") << '\n'
    << "clustering = " << clustering << '\n'
    << "mean_degree_isolates = " << (mean_degree_isolates ? "true" : "false") << '\n'
    << "tagger = " << tagger << '\n'
    << "lexicon = " << lexicon << '\n'
    << "pretagged = " << pretagged << '\n'
    << "term_source = " << term_source << '\n'
    << "k_c = " << k_c << '\n'
    << "percentile = " << d(percentile) << '\n'
    << "top_n = " << top_n << '\n'
    << "zipf_min_freq = " << zipf_min_freq << '\n'
    << "output_dir = " << output_dir << '\n';
  // jobs is deliberately absent: it never changes the outputs.
  return o.str();
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    out.emplace_back(std::string(text::trim(t.substr(0, eq))), std::string(text::trim(t.substr(eq + 1))));
  }
  return out;
}

PipelineConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::pair<std::string, std::string>>& overrides) {
  PipelineConfig cfg;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "cannot read config file '" + *path + "'");
    for (const auto& [k, v] : parse_config_text(in)) cfg.set(k, v);
  }
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

}  // namespace evotopic::cli
