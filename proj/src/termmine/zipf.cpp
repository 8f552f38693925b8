#include "evotopic/termmine/zipf.hpp"

#include <algorithm>
#include <cmath>

#include "evotopic/error.hpp"

namespace evotopic::termmine {

std::vector<RankedUnit> frequency_rank(const OccurrenceTable& table) {
  std::vector<RankedUnit> ranked;
  ranked.reserve(table.units().size());
  for (const auto& [key, s] : table.units()) ranked.push_back({0, key, s.k});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedUnit& a, const RankedUnit& b) { return a.k > b.k; });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

ZipfFit fit_zipf(const std::vector<RankedUnit>& ranked, std::int64_t min_freq) {
  std::vector<double> xs, ys;
  for (const auto& r : ranked) {
    if (r.k < min_freq || r.k <= 0) continue;
    xs.push_back(std::log(static_cast<double>(r.rank)));
    ys.push_back(std::log(static_cast<double>(r.k)));
  }
  if (xs.size() < 3) throw AnalysisError("zipf fit needs at least 3 ranks with k >= min_freq");
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
    throw AnalysisError("zipf fit is degenerate: all frequencies are equal");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  ZipfFit fit;
  fit.exponent = -slope;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.n_points = xs.size();
  if (!(fit.exponent > 0.0) || !std::isfinite(fit.exponent)) {
    throw AnalysisError("zipf fit produced a non-positive exponent");
  }
  return fit;
}

}  // namespace evotopic::termmine
