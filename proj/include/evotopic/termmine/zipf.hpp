#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evotopic/termmine/occurrence.hpp"

namespace evotopic::termmine {

struct RankedUnit {
  std::size_t rank = 0;  ///< 1-based
  std::string key;
  std::int64_t k = 0;
};

/// Ranks by descending k, ties by key.
std::vector<RankedUnit> frequency_rank(const OccurrenceTable& table);

struct ZipfFit {
  double exponent = 0.0;  ///< minus the slope of log k against log rank
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// Least squares on (ln rank, ln k) over entries with k >= min_freq.
/// Throws AnalysisError with fewer than 3 such entries or when all k are equal.
ZipfFit fit_zipf(const std::vector<RankedUnit>& ranked, std::int64_t min_freq = 2);

}  // namespace evotopic::termmine
