#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace evotopic::termmine {

/// A document reduced to its distinct unit keys.
struct DocumentUnits {
  std::string doc_id;
  int year = 0;
  std::vector<std::string> disciplines;  ///< canonical labels
  std::vector<std::string> units;        ///< distinct unit keys
};

struct UnitStats {
  std::int64_t k = 0;                    ///< documents containing the unit
  std::vector<std::int64_t> k_by_discipline;  ///< aligned with OccurrenceTable::disciplines()
  int first_year = 0;
  std::vector<std::uint32_t> docs;       ///< ascending document indices
};

/// Binary per-document occurrence counts for every unit, overall and per
/// discipline. Disciplines are the sorted union of document labels.
class OccurrenceTable {
 public:
  const std::vector<std::string>& disciplines() const noexcept { return disciplines_; }
  const std::map<std::string, UnitStats>& units() const noexcept { return units_; }
  const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
  std::size_t n_documents() const noexcept { return doc_ids_.size(); }
  /// Documents carrying each discipline label.
  const std::vector<std::int64_t>& documents_per_discipline() const noexcept { return docs_per_discipline_; }

  const UnitStats* find(const std::string& key) const;
  bool empty() const noexcept { return units_.empty(); }

  /// Units with k > k_c.
  OccurrenceTable threshold(std::int64_t k_c) const;

 private:
  friend OccurrenceTable count_occurrences(std::span<const DocumentUnits> documents);

  std::vector<std::string> disciplines_;
  std::map<std::string, UnitStats> units_;
  std::vector<std::string> doc_ids_;
  std::vector<std::int64_t> docs_per_discipline_;
};

/// A unit repeated inside one document counts once; a document in m
/// disciplines adds 1 to each of the m per-discipline counts.
OccurrenceTable count_occurrences(std::span<const DocumentUnits> documents);

/// (k_c, number of units with k > k_c) for k_c = 1..max k.
std::vector<std::pair<std::int64_t, std::size_t>> survivor_curve(const OccurrenceTable& table);

}  // namespace evotopic::termmine
