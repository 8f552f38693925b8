#include "evotopic/termmine/cooccurrence.hpp"

#include <algorithm>

#include "evotopic/csv.hpp"

namespace evotopic::termmine {

CooccurrenceMatrix::CooccurrenceMatrix(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

std::int64_t CooccurrenceMatrix::at(const std::string& a, const std::string& b) const {
  auto ia = std::lower_bound(terms_.begin(), terms_.end(), a);
  auto ib = std::lower_bound(terms_.begin(), terms_.end(), b);
  if (ia == terms_.end() || *ia != a || ib == terms_.end() || *ib != b) return 0;
  auto i = static_cast<std::size_t>(ia - terms_.begin());
  auto j = static_cast<std::size_t>(ib - terms_.begin());
  if (i > j) std::swap(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

void CooccurrenceMatrix::add_document(const std::vector<std::string>& doc_units) {
  std::vector<std::size_t> present;
  for (const auto& u : doc_units) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), u);
    if (it != terms_.end() && *it == u) present.push_back(static_cast<std::size_t>(it - terms_.begin()));
  }
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  for (std::size_t a = 0; a < present.size(); ++a) {
    for (std::size_t b = a; b < present.size(); ++b) ++entries_[{present[a], present[b]}];
  }
}

CooccurrenceMatrix cooccurrence_matrix(std::span<const DocumentUnits> documents,
                                       const std::vector<std::string>& terms) {
  CooccurrenceMatrix m(terms);
  for (const auto& d : documents) m.add_document(d.units);
  return m;
}

void write_cooccurrence_csv(const CooccurrenceMatrix& matrix, std::ostream& out) {
  csv::write_row(out, {"term_a", "term_b", "count"});
  const auto& terms = matrix.terms();
  for (const auto& [ij, count] : matrix.entries()) {
    if (ij.first == ij.second) continue;
    csv::write_row(out, {terms[ij.first], terms[ij.second], std::to_string(count)});
  }
}

}  // namespace evotopic::termmine
