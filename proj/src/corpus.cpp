#include "evotopic/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "evotopic/csv.hpp"
#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic {

using nlohmann::json;

std::vector<std::string> canonical_labels(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& label : raw) {
    auto c = text::canonical_label(label);
    if (c.empty()) continue;
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

Corpus::Corpus(std::vector<PubRecord> records, Provenance provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
  std::unordered_set<std::string> ids;
  for (auto& r : records_) {
    if (r.id.empty()) throw InputError("record with empty id");
    if (!ids.insert(r.id).second) throw InputError("duplicate id '" + r.id + "'");
    if (r.year < kMinYear || r.year > kMaxYear) {
      throw InputError("record '" + r.id + "': year out of range");
    }
    r.disciplines = canonical_labels(r.disciplines);
    r.countries = canonical_labels(r.countries);
  }
}

std::optional<std::pair<int, int>> Corpus::year_span() const {
  if (records_.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(records_.begin(), records_.end(),
                                      [](const auto& a, const auto& b) { return a.year < b.year; });
  return std::pair{lo->year, hi->year};
}

// ---------------------------------------------------------------------------

InputFormat parse_format(std::string_view name) {
  const auto f = text::fold_case(text::trim(name));
  if (f == "jsonl") return InputFormat::jsonl;
  if (f == "csv") return InputFormat::csv;
  throw ConfigError("format", "expected jsonl or csv, got '" + std::string(name) + "'");
}

const std::vector<std::string>& FieldMap::schema_fields() {
  static const std::vector<std::string> fields = {
      "id", "title", "abstract", "year", "keywords", "disciplines", "countries", "source"};
  return fields;
}

FieldMap::FieldMap(std::map<std::string, std::string> mapping) : mapping_(std::move(mapping)) {
  const auto& known = schema_fields();
  for (const auto& [schema, _] : mapping_) {
    if (std::find(known.begin(), known.end(), schema) == known.end()) {
      throw ConfigError("field_map", "unknown schema field '" + schema + "'");
    }
  }
}

FieldMap FieldMap::parse(std::string_view spec) {
  std::map<std::string, std::string> m;
  if (text::trim(spec).empty()) return FieldMap{};
  for (const auto& item : text::split(spec, ';')) {
    const auto t = text::trim(item);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("field_map", "expected schema:input, got '" + std::string(t) + "'");
    }
    m[std::string(text::trim(t.substr(0, colon)))] = std::string(text::trim(t.substr(colon + 1)));
  }
  return FieldMap(std::move(m));
}

const std::string& FieldMap::lookup(const std::string& schema_field) const {
  auto it = mapping_.find(schema_field);
  return it == mapping_.end() ? schema_field : it->second;
}

std::string FieldMap::to_string() const {
  std::vector<std::string> parts;
  for (const auto& [k, v] : mapping_) parts.push_back(k + ":" + v);
  return text::join(parts, ";");
}

namespace {

/// Thrown for a single bad row; becomes a Reject.
struct RowError {
  std::string reason;
};

int parse_year(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) throw RowError{"missing year"};
  int sign = 1;
  if (s.front() == '-' || s.front() == '+') {
    if (s.front() == '-') sign = -1;
    s.remove_prefix(1);
  }
  if (s.empty() || s.size() > 9) throw RowError{s.size() > 9 ? "year out of range" : "invalid year"};
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw RowError{"invalid year"};
    v = v * 10 + (c - '0');
  }
  v *= sign;
  if (v < kMinYear || v > kMaxYear) throw RowError{"year out of range"};
  return static_cast<int>(v);
}

std::vector<std::string> split_list(std::string_view cell) {
  std::vector<std::string> out;
  if (text::trim(cell).empty()) return out;
  for (auto& part : text::split(cell, ';')) {
    auto t = text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<std::string> json_list(const json& v, const std::string& field) {
  if (v.is_null()) return {};
  if (v.is_string()) return split_list(v.get<std::string>());
  if (!v.is_array()) throw RowError{"field '" + field + "' is not a list"};
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw RowError{"field '" + field + "' has a non-string element"};
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string json_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw RowError{"field '" + field + "' is not text"};
}

PubRecord record_from_json(const json& obj, const FieldMap& fields, const std::string& source) {
  if (!obj.is_object()) throw RowError{"line is not a JSON object"};
  auto get = [&](const std::string& schema) -> const json* {
    auto it = obj.find(fields.lookup(schema));
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
  };
  PubRecord r;
  const json* id = get("id");
  if (!id) throw RowError{"missing id"};
  r.id = std::string(text::trim(json_text(*id, "id")));
  if (r.id.empty()) throw RowError{"missing id"};
  const json* title = get("title");
  if (!title) throw RowError{"missing title"};
  r.title = json_text(*title, "title");
  const json* year = get("year");
  if (!year) throw RowError{"missing year"};
  if (year->is_number_integer()) {
    const auto y = year->get<long long>();
    if (y < kMinYear || y > kMaxYear) throw RowError{"year out of range"};
    r.year = static_cast<int>(y);
  } else if (year->is_string()) {
    r.year = parse_year(year->get<std::string>());
  } else {
    throw RowError{"invalid year"};
  }
  if (const json* a = get("abstract")) {
    auto s = json_text(*a, "abstract");
    if (!text::trim(s).empty()) r.abstract = std::move(s);
  }
  if (const json* k = get("keywords")) r.keywords = json_list(*k, "keywords");
  if (const json* d = get("disciplines")) r.disciplines = json_list(*d, "disciplines");
  if (const json* c = get("countries")) r.countries = json_list(*c, "countries");
  if (const json* s = get("source")) {
    r.source = json_text(*s, "source");
  } else {
    r.source = source;
  }
  return r;
}

class Ingest {
 public:
  explicit Ingest(std::string source) : source_(std::move(source)) {}

  void accept(std::size_t line, PubRecord r) {
    r.disciplines = canonical_labels(r.disciplines);
    r.countries = canonical_labels(r.countries);
    if (!ids_.insert(r.id).second) {
      rejects_.push_back({line, "duplicate id"});
      return;
    }
    records_.push_back(std::move(r));
  }
  void reject(std::size_t line, std::string reason) { rejects_.push_back({line, std::move(reason)}); }

  ParseResult finish() {
    const std::size_t total = records_.size() + rejects_.size();
    if (total > 0 && rejects_.size() * 2 > total) {
      throw InputError("rejected " + std::to_string(rejects_.size()) + " of " +
                       std::to_string(total) + " rows (more than half)");
    }
    Provenance prov{source_, now_iso8601()};
    return ParseResult{Corpus(std::move(records_), std::move(prov)), std::move(rejects_)};
  }

 private:
  static std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string source_;
  std::vector<PubRecord> records_;
  std::vector<Reject> rejects_;
  std::unordered_set<std::string> ids_;
};

ParseResult parse_jsonl(std::istream& in, const FieldMap& fields, const std::string& source) {
  Ingest ingest(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      ingest.reject(lineno, "malformed json");
      continue;
    }
    try {
      ingest.accept(lineno, record_from_json(obj, fields, source));
    } catch (const RowError& e) {
      ingest.reject(lineno, e.reason);
    }
  }
  return ingest.finish();
}

ParseResult parse_csv(std::istream& in, const FieldMap& fields, const std::string& source) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw InputError("csv input has no header row");

  std::map<std::string, std::size_t> column;  // schema field -> index
  for (const auto& schema : FieldMap::schema_fields()) {
    const auto& name = fields.lookup(schema);
    for (std::size_t i = 0; i < header->fields.size(); ++i) {
      if (text::trim(header->fields[i]) == name) {
        column[schema] = i;
        break;
      }
    }
  }
  for (const char* required : {"id", "title", "year"}) {
    if (!column.count(required)) {
      throw InputError(std::string("csv header lacks required column '") +
                       fields.lookup(required) + "' for field '" + required + "'");
    }
  }

  Ingest ingest(source);
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && text::trim(row->fields[0]).empty()) continue;
    if (row->fields.size() != header->fields.size()) {
      ingest.reject(row->line, "expected " + std::to_string(header->fields.size()) +
                                   " columns, found " + std::to_string(row->fields.size()));
      continue;
    }
    auto cell = [&](const char* schema) -> std::optional<std::string_view> {
      auto it = column.find(schema);
      if (it == column.end()) return std::nullopt;
      return std::string_view(row->fields[it->second]);
    };
    try {
      PubRecord r;
      r.id = std::string(text::trim(*cell("id")));
      if (r.id.empty()) throw RowError{"missing id"};
      r.title = std::string(*cell("title"));
      r.year = parse_year(*cell("year"));
      if (auto a = cell("abstract"); a && !text::trim(*a).empty()) r.abstract = std::string(*a);
      if (auto k = cell("keywords")) r.keywords = split_list(*k);
      if (auto d = cell("disciplines")) r.disciplines = split_list(*d);
      if (auto c = cell("countries")) r.countries = split_list(*c);
      auto s = cell("source");
      r.source = (s && !text::trim(*s).empty()) ? std::string(text::trim(*s)) : source;
      ingest.accept(row->line, std::move(r));
    } catch (const RowError& e) {
      ingest.reject(row->line, e.reason);
    }
  }
  return ingest.finish();
}

}  // namespace

ParseResult parse_records(std::istream& in, InputFormat format, const FieldMap& fields,
                          std::string source_label) {
  if (!in) throw InputError("input stream is not readable");
  return format == InputFormat::jsonl ? parse_jsonl(in, fields, source_label)
                                      : parse_csv(in, fields, source_label);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& r : corpus) {
    json obj = json::object();
    obj["id"] = r.id;
    obj["title"] = r.title;
    if (r.abstract) obj["abstract"] = *r.abstract;
    obj["year"] = r.year;
    obj["keywords"] = r.keywords;
    obj["disciplines"] = r.disciplines;
    obj["countries"] = r.countries;
    obj["source"] = r.source;
    out << obj.dump() << '\n';
  }
}

void write_rejects(const std::vector<Reject>& rejects, std::ostream& out) {
  for (const auto& r : rejects) {
    out << json{{"line", r.line}, {"reason", r.reason}}.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------

TopicQuery::TopicQuery(std::vector<std::vector<std::string>> clauses) {
  if (clauses.empty()) throw ConfigError("topic", "query has no clauses");
  for (auto& clause : clauses) {
    if (clause.empty()) throw ConfigError("topic", "query has an empty clause");
    std::vector<std::string> folded;
    for (const auto& s : clause) {
      if (s.empty()) throw ConfigError("topic", "query has an empty spelling");
      folded.push_back(text::fold_case(s));
    }
    clauses_.push_back(std::move(folded));
  }
}

TopicQuery TopicQuery::parse(std::string_view expr) {
  std::vector<std::vector<std::string>> clauses;
  for (const auto& clause : text::split(expr, " AND ")) {
    std::vector<std::string> spellings;
    for (const auto& s : text::split(clause, " OR ")) spellings.emplace_back(text::trim(s));
    clauses.push_back(std::move(spellings));
  }
  return TopicQuery(std::move(clauses));
}

TopicQuery TopicQuery::chornobyl() {
  return TopicQuery({{"chornobyl", "chornobyl'", "chernobyl", "chernobyl'"}});
}

bool TopicQuery::matches(const PubRecord& record) const {
  for (const auto& clause : clauses_) {
    bool any = false;
    for (const auto& spelling : clause) {
      if (text::contains_folded(record.title, spelling) ||
          (record.abstract && text::contains_folded(*record.abstract, spelling)) ||
          std::any_of(record.keywords.begin(), record.keywords.end(),
                      [&](const auto& k) { return text::contains_folded(k, spelling); })) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

std::string TopicQuery::to_string() const {
  std::vector<std::string> parts;
  for (const auto& clause : clauses_) parts.push_back(text::join(clause, " OR "));
  return text::join(parts, " AND ");
}

Corpus filter_topic(const Corpus& corpus, const TopicQuery& query) {
  std::vector<PubRecord> kept;
  for (const auto& r : corpus) {
    if (query.matches(r)) kept.push_back(r);
  }
  return Corpus(std::move(kept), corpus.provenance());
}

Corpus filter_years(const Corpus& corpus, int first, int last) {
  std::vector<PubRecord> kept;
  for (const auto& r : corpus) {
    if (r.year >= first && r.year <= last) kept.push_back(r);
  }
  return Corpus(std::move(kept), corpus.provenance());
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Corpus& corpus) {
  ValidationReport rep;
  rep.records = corpus.size();
  std::set<std::string> seen, dups;
  for (const auto& r : corpus) {
    if (!r.abstract) ++rep.missing_abstract;
    if (r.countries.empty()) ++rep.missing_countries;
    if (r.disciplines.empty()) ++rep.missing_disciplines;
    if (!seen.insert(r.id).second) dups.insert(r.id);
  }
  rep.duplicate_ids.assign(dups.begin(), dups.end());
  return rep;
}

std::string to_json(const ValidationReport& report) {
  json j = {{"records", report.records},
            {"missing_abstract", report.missing_abstract},
            {"missing_countries", report.missing_countries},
            {"missing_disciplines", report.missing_disciplines},
            {"duplicate_ids", report.duplicate_ids}};
  return j.dump(2) + "\n";
}

}  // namespace evotopic
