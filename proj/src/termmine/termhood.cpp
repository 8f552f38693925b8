#include "evotopic/termmine/termhood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evotopic/csv.hpp"
#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic::termmine {

DisciplinePriors discipline_priors(const OccurrenceTable& table) {
  DisciplinePriors p;
  p.disciplines = table.disciplines();
  p.mass.assign(p.disciplines.size(), 0);
  for (const auto& [_, s] : table.units()) {
    for (std::size_t i = 0; i < s.k_by_discipline.size(); ++i) p.mass[i] += s.k_by_discipline[i];
  }
  for (auto m : p.mass) p.total_mass += m;
  if (p.total_mass <= 0) throw AnalysisError("no discipline-labelled unit occurrences");
  p.probability.reserve(p.mass.size());
  for (auto m : p.mass) p.probability.push_back(static_cast<double>(m) / static_cast<double>(p.total_mass));
  return p;
}

std::vector<double> specificity_profile(const std::vector<std::int64_t>& k_by_discipline,
                                        const std::vector<double>& priors) {
  if (k_by_discipline.size() != priors.size()) {
    throw std::invalid_argument("discipline count mismatch between unit and priors");
  }
  std::int64_t k_total = 0;
  for (auto k : k_by_discipline) k_total += k;
  if (k_total <= 0) throw AnalysisError("termhood undefined: unit has no discipline-labelled occurrence");

  // ratio_i is proportional to w_i = k_i / prior_i. Writing p_i as
  // 1 / sum_j (w_j / w_i) makes equal ratios give exactly 1/n.
  std::vector<double> w(priors.size(), 0.0);
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (k_by_discipline[i] == 0) continue;
    if (!(priors[i] > 0.0)) throw AnalysisError("termhood undefined: zero prior for an occupied discipline");
    w[i] = static_cast<double>(k_by_discipline[i]) / priors[i];
  }
  std::vector<double> p(priors.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    double denom = 0.0;
    for (double wj : w) denom += wj / w[i];
    p[i] = 1.0 / denom;
  }
  return p;
}

double termhood(const std::vector<std::int64_t>& k_by_discipline, const std::vector<double>& priors) {
  auto p = specificity_profile(k_by_discipline, priors);
  std::erase(p, 0.0);
  std::sort(p.begin(), p.end());
  // Equal probabilities are summed as multiplicity * ln p.
  double t = 0.0;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    t += static_cast<double>(j - i) * std::log(p[i]);
    i = j;
  }
  return t;
}

double termhood(const UnitStats& unit, const DisciplinePriors& priors) {
  return termhood(unit.k_by_discipline, priors.probability);
}

double nearest_rank_percentile(std::vector<double> values, double percentile) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(percentile > 0.0 && percentile <= 100.0)) throw std::invalid_argument("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

TermSelection select_terms(const OccurrenceTable& table, const DisciplinePriors& priors,
                           double percentile, std::size_t top_n) {
  if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
  TermSelection sel;
  std::vector<TermScore> scored;
  std::vector<double> all_t;
  for (const auto& [key, s] : table.units()) {
    double t = 0.0;
    try {
      t = termhood(s, priors);
    } catch (const AnalysisError&) {
      sel.undefined.push_back(key);
      continue;
    }
    TermScore ts;
    ts.term = key;
    ts.termhood = t;
    ts.k = s.k;
    ts.first_year = s.first_year;
    scored.push_back(std::move(ts));
    all_t.push_back(t);
  }
  sel.scored_units = scored.size();
  if (scored.empty()) {
    sel.degenerate = "no units with a defined termhood";
    return sel;
  }
  sel.threshold = nearest_rank_percentile(all_t, percentile);
  std::erase_if(scored, [&](const TermScore& ts) { return !(ts.termhood > sel.threshold); });
  sel.survivors = scored.size();
  if (scored.size() < 2) {
    sel.degenerate = "fewer than 2 units above the termhood threshold";
    return sel;
  }

  auto [tmin_it, tmax_it] = std::minmax_element(
      scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.termhood < b.termhood; });
  auto [kmin_it, kmax_it] =
      std::minmax_element(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  const double tmin = tmin_it->termhood, tmax = tmax_it->termhood;
  const double kmin = static_cast<double>(kmin_it->k), kmax = static_cast<double>(kmax_it->k);
  // A zero range maps every survivor to 1.
  for (auto& ts : scored) {
    ts.t_norm = tmax > tmin ? (ts.termhood - tmin) / (tmax - tmin) : 1.0;
    ts.k_norm = kmax > kmin ? (static_cast<double>(ts.k) - kmin) / (kmax - kmin) : 1.0;
    ts.score = ts.t_norm * ts.k_norm;
  }
  std::sort(scored.begin(), scored.end(), [](const TermScore& a, const TermScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.termhood != b.termhood) return a.termhood > b.termhood;
    return a.term < b.term;
  });
  if (scored.size() > top_n) scored.resize(top_n);
  sel.terms = std::move(scored);
  return sel;
}

void annotate_terms(std::vector<TermScore>& scores, const OccurrenceTable& table,
                    const DisciplinePriors& priors) {
  const auto& labels = table.disciplines();
  for (auto& ts : scores) {
    const UnitStats* s = table.find(ts.term);
    if (!s) continue;
    ts.first_year = s->first_year;
    // p_i is proportional to k_i / mass_i, so compare k_a * mass_b with
    // k_b * mass_a exactly in integers.
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (s->k_by_discipline[i] == 0 || priors.mass[i] == 0) continue;
      if (!best) {
        best = i;
        continue;
      }
      const auto lhs = static_cast<std::int64_t>(s->k_by_discipline[i]) * priors.mass[*best];
      const auto rhs = static_cast<std::int64_t>(s->k_by_discipline[*best]) * priors.mass[i];
      if (lhs > rhs || (lhs == rhs && s->k_by_discipline[i] > s->k_by_discipline[*best])) best = i;
    }
    ts.specific_discipline = best ? labels[*best] : std::string{};
  }
}

void write_term_report(const std::vector<TermScore>& terms, std::ostream& out) {
  csv::write_row(out, {"term", "k", "termhood", "t_norm", "k_norm", "score", "specific_discipline",
                       "first_year"});
  for (const auto& t : terms) {
    csv::write_row(out, {t.term, std::to_string(t.k), text::format_double(t.termhood),
                         text::format_double(t.t_norm), text::format_double(t.k_norm),
                         text::format_double(t.score), t.specific_discipline,
                         std::to_string(t.first_year)});
  }
}

}  // namespace evotopic::termmine
