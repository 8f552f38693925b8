#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "evotopic/chronology.hpp"
#include "evotopic/corpus.hpp"

namespace evotopic {

/// Least-squares line through a discipline's normalized annual shares.
struct TrendFit {
  std::string discipline;
  double slope = 0.0;      ///< change of normalized share per year
  double intercept = 0.0;  ///< share at the first nonzero year
  int n_points = 0;        ///< nonzero years used
  std::int64_t total_docs = 0;
};

/// Multi-label: a record adds 1 to every one of its disciplines.
std::map<std::string, AnnualSeries> discipline_series(const Corpus& corpus, YearRange range);

/// Fits y = count/total against x = year - first_nonzero_year over the
/// nonzero years only. Throws AnalysisError with fewer than 2 nonzero years.
TrendFit trend_fit(const AnnualSeries& series, std::string discipline = {});

/// Top ceil(quantile * N) fits by |slope|, ties by discipline label.
/// Throws std::invalid_argument unless 0 < quantile <= 1.
std::vector<TrendFit> rank_trends(std::vector<TrendFit> fits, double quantile);

/// discipline,slope,intercept,n_points,total_docs,selected_flag
void write_trend_report(const std::vector<TrendFit>& fits, const std::set<std::string>& selected,
                        std::ostream& out);

}  // namespace evotopic
