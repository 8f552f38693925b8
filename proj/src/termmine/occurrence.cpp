#include "evotopic/termmine/occurrence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace evotopic::termmine {

const UnitStats* OccurrenceTable::find(const std::string& key) const {
  auto it = units_.find(key);
  return it == units_.end() ? nullptr : &it->second;
}

OccurrenceTable OccurrenceTable::threshold(std::int64_t k_c) const {
  OccurrenceTable out;
  out.disciplines_ = disciplines_;
  out.doc_ids_ = doc_ids_;
  out.docs_per_discipline_ = docs_per_discipline_;
  for (const auto& [key, stats] : units_) {
    if (stats.k > k_c) out.units_.emplace(key, stats);
  }
  return out;
}

OccurrenceTable count_occurrences(std::span<const DocumentUnits> documents) {
  OccurrenceTable t;
  std::set<std::string> labels;
  for (const auto& d : documents) labels.insert(d.disciplines.begin(), d.disciplines.end());
  t.disciplines_.assign(labels.begin(), labels.end());
  t.docs_per_discipline_.assign(t.disciplines_.size(), 0);
  const std::size_t n_disc = t.disciplines_.size();

  auto discipline_index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(t.disciplines_.begin(), t.disciplines_.end(), label) - t.disciplines_.begin());
  };

  std::vector<std::size_t> idx;
  std::set<std::string> doc_units;
  for (std::uint32_t d = 0; d < documents.size(); ++d) {
    const auto& doc = documents[d];
    t.doc_ids_.push_back(doc.doc_id);
    idx.clear();
    for (const auto& label : doc.disciplines) idx.push_back(discipline_index(label));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (auto i : idx) ++t.docs_per_discipline_[i];

    doc_units.clear();
    doc_units.insert(doc.units.begin(), doc.units.end());
    for (const auto& key : doc_units) {
      auto [it, inserted] = t.units_.try_emplace(key);
      auto& s = it->second;
      if (inserted) {
        s.k_by_discipline.assign(n_disc, 0);
        s.first_year = doc.year;
      }
      ++s.k;
      for (auto i : idx) ++s.k_by_discipline[i];
      s.first_year = std::min(s.first_year, doc.year);
      s.docs.push_back(d);
    }
  }
  return t;
}

std::vector<std::pair<std::int64_t, std::size_t>> survivor_curve(const OccurrenceTable& table) {
  if (table.empty()) throw std::invalid_argument("survivor curve of an empty table");
  std::int64_t max_k = 0;
  std::map<std::int64_t, std::size_t> histogram;
  for (const auto& [_, s] : table.units()) {
    ++histogram[s.k];
    max_k = std::max(max_k, s.k);
  }
  std::vector<std::pair<std::int64_t, std::size_t>> curve;
  std::size_t remaining = table.units().size();
  auto it = histogram.begin();
  for (std::int64_t kc = 1; kc <= max_k; ++kc) {
    while (it != histogram.end() && it->first <= kc) {
      remaining -= it->second;
      ++it;
    }
    curve.emplace_back(kc, remaining);
  }
  return curve;
}

}  // namespace evotopic::termmine
