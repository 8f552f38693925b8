#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace evotopic {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// One bibliographic record. Discipline and country labels are stored in
/// canonical form (trimmed, whitespace-collapsed, ASCII case-folded).
struct PubRecord {
  std::string id;
  std::string title;
  std::optional<std::string> abstract;
  int year = 0;
  std::vector<std::string> keywords;
  std::vector<std::string> disciplines;
  std::vector<std::string> countries;
  std::string source;

  friend bool operator==(const PubRecord&, const PubRecord&) = default;
};

struct Provenance {
  std::string source;
  std::string ingested_at;  ///< ISO-8601 UTC, informational only
};

/// Immutable, ordered collection of records with unique ids.
class Corpus {
 public:
  Corpus() = default;

  /// Validates every record invariant; throws InputError on violation.
  /// Label lists are canonicalized and deduplicated.
  Corpus(std::vector<PubRecord> records, Provenance provenance);

  const std::vector<PubRecord>& records() const noexcept { return records_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  auto begin() const noexcept { return records_.begin(); }
  auto end() const noexcept { return records_.end(); }

  /// Smallest and largest record year; nullopt for an empty corpus.
  std::optional<std::pair<int, int>> year_span() const;

 private:
  std::vector<PubRecord> records_;
  Provenance provenance_;
};

/// Canonicalize and deduplicate a label list, keeping first-seen order.
std::vector<std::string> canonical_labels(const std::vector<std::string>& raw);

// ---------------------------------------------------------------------------
// Parsing

enum class InputFormat { jsonl, csv };

InputFormat parse_format(std::string_view name);

/// Schema field name -> name used in the input (JSON key or CSV header).
/// Fields not present in the map are looked up under their schema name.
class FieldMap {
 public:
  FieldMap() = default;
  explicit FieldMap(std::map<std::string, std::string> mapping);

  /// Parses "schema:input;schema:input". Throws ConfigError on bad syntax or
  /// unknown schema fields.
  static FieldMap parse(std::string_view spec);

  const std::string& lookup(const std::string& schema_field) const;
  std::string to_string() const;

  static const std::vector<std::string>& schema_fields();

 private:
  std::map<std::string, std::string> mapping_;
};

struct Reject {
  std::size_t line = 0;
  std::string reason;
};

struct ParseResult {
  Corpus corpus;
  std::vector<Reject> rejects;
};

/// Parse JSONL or CSV records. Malformed rows become rejects; more than half
/// of all rows rejected, or a CSV header missing a required mapped column,
/// raises InputError.
ParseResult parse_records(std::istream& in, InputFormat format, const FieldMap& fields = {},
                          std::string source_label = "input");

/// JSONL using schema key names; parse_records(jsonl) reads it back unchanged.
void write_jsonl(const Corpus& corpus, std::ostream& out);

void write_rejects(const std::vector<Reject>& rejects, std::ostream& out);

// ---------------------------------------------------------------------------
// Topic queries

/// AND-of-ORs over case-insensitive substrings of title, abstract, keywords.
class TopicQuery {
 public:
  /// Throws ConfigError("topic", ...) on an empty clause list, empty
  /// clause or empty spelling.
  explicit TopicQuery(std::vector<std::vector<std::string>> clauses);

  /// Parses "a OR b AND c OR d" (AND binds weaker than OR).
  static TopicQuery parse(std::string_view expr);

  /// chornobyl OR chornobyl' OR chernobyl OR chernobyl'
  static TopicQuery chornobyl();

  bool matches(const PubRecord& record) const;
  const std::vector<std::vector<std::string>>& clauses() const noexcept { return clauses_; }
  std::string to_string() const;

 private:
  std::vector<std::vector<std::string>> clauses_;  // folded spellings
};

Corpus filter_topic(const Corpus& corpus, const TopicQuery& query);

/// Records with year in [first, last], order preserved.
Corpus filter_years(const Corpus& corpus, int first, int last);

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::size_t records = 0;
  std::size_t missing_abstract = 0;
  std::size_t missing_countries = 0;
  std::size_t missing_disciplines = 0;
  std::vector<std::string> duplicate_ids;
};

ValidationReport validate(const Corpus& corpus);

std::string to_json(const ValidationReport& report);

}  // namespace evotopic
