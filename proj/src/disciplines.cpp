#include "evotopic/disciplines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evotopic/csv.hpp"
#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic {

std::map<std::string, AnnualSeries> discipline_series(const Corpus& corpus, YearRange range) {
  std::map<std::string, AnnualSeries> out;
  for (const auto& r : corpus) {
    if (!range.contains(r.year)) continue;
    for (const auto& d : r.disciplines) out.try_emplace(d, range).first->second.add(r.year);
  }
  return out;
}

TrendFit trend_fit(const AnnualSeries& series, std::string discipline) {
  std::vector<std::pair<int, std::int64_t>> nonzero;
  for (int y = series.start_year(); y <= series.end_year(); ++y) {
    if (series.at(y) > 0) nonzero.emplace_back(y, series.at(y));
  }
  if (nonzero.size() < 2) {
    throw AnalysisError("undefined trend for '" + discipline + "': fewer than 2 nonzero years");
  }
  const double total = static_cast<double>(series.total());
  const int origin = nonzero.front().first;
  const double n = static_cast<double>(nonzero.size());

  double mean_x = 0.0, mean_y = 0.0;
  for (auto [year, count] : nonzero) {
    mean_x += year - origin;
    mean_y += static_cast<double>(count) / total;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto [year, count] : nonzero) {
    const double dx = (year - origin) - mean_x;
    sxx += dx * dx;
    sxy += dx * (static_cast<double>(count) / total - mean_y);
  }
  TrendFit fit;
  fit.discipline = std::move(discipline);
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.n_points = static_cast<int>(nonzero.size());
  fit.total_docs = series.total();
  return fit;
}

std::vector<TrendFit> rank_trends(std::vector<TrendFit> fits, double quantile) {
  if (!(quantile > 0.0 && quantile <= 1.0)) {
    throw std::invalid_argument("quantile must be in (0, 1]");
  }
  std::sort(fits.begin(), fits.end(), [](const TrendFit& a, const TrendFit& b) {
    const double sa = std::abs(a.slope), sb = std::abs(b.slope);
    if (sa != sb) return sa > sb;
    return a.discipline < b.discipline;
  });
  // The epsilon keeps e.g. 0.3 * 10 from rounding up to 4.
  const auto keep = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(fits.size()) - 1e-9));
  fits.resize(std::min(keep, fits.size()));
  return fits;
}

void write_trend_report(const std::vector<TrendFit>& fits, const std::set<std::string>& selected,
                        std::ostream& out) {
  csv::write_row(out, {"discipline", "slope", "intercept", "n_points", "total_docs", "selected_flag"});
  for (const auto& f : fits) {
    csv::write_row(out, {f.discipline, text::format_double(f.slope), text::format_double(f.intercept),
                         std::to_string(f.n_points), std::to_string(f.total_docs),
                         selected.count(f.discipline) ? "1" : "0"});
  }
}

}  // namespace evotopic
