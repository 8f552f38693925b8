#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evotopic/termmine/occurrence.hpp"

namespace evotopic::termmine {

/// Symmetric term-by-term document co-occurrence counts. Only nonzero
/// entries are stored; the diagonal holds each term's document count.
class CooccurrenceMatrix {
 public:
  explicit CooccurrenceMatrix(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  /// 0 for unknown terms or pairs that never co-occur.
  std::int64_t at(const std::string& a, const std::string& b) const;
  /// Stored (i <= j) index pairs into terms().
  const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& entries() const noexcept { return entries_; }

  void add_document(const std::vector<std::string>& doc_units);

 private:
  std::vector<std::string> terms_;  // sorted, unique
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> entries_;
};

/// M[u,v] = number of documents containing both u and v.
CooccurrenceMatrix cooccurrence_matrix(std::span<const DocumentUnits> documents,
                                       const std::vector<std::string>& terms);

/// term_a,term_b,count for off-diagonal nonzero entries with term_a < term_b.
void write_cooccurrence_csv(const CooccurrenceMatrix& matrix, std::ostream& out);

}  // namespace evotopic::termmine
