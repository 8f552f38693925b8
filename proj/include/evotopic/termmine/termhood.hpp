#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evotopic/termmine/occurrence.hpp"

namespace evotopic::termmine {

/// Background distribution of unit occurrences over disciplines.
struct DisciplinePriors {
  std::vector<std::string> disciplines;
  std::vector<std::int64_t> mass;  ///< sum over units of k_i
  std::int64_t total_mass = 0;
  std::vector<double> probability;  ///< mass / total_mass; sums to 1
};

/// Throws AnalysisError when the table has no discipline-labelled occurrences.
DisciplinePriors discipline_priors(const OccurrenceTable& table);

/// Normalized specificity profile p_i of a unit: the ratio of its
/// discipline distribution to the priors, rescaled to sum to 1.
/// Throws AnalysisError when every k_i is zero.
std::vector<double> specificity_profile(const std::vector<std::int64_t>& k_by_discipline,
                                        const std::vector<double>& priors);

/// Sum of ln p_i over disciplines with p_i > 0. Always <= 0; exactly 0 when
/// the unit occurs in a single discipline.
double termhood(const std::vector<std::int64_t>& k_by_discipline, const std::vector<double>& priors);
double termhood(const UnitStats& unit, const DisciplinePriors& priors);

struct TermScore {
  std::string term;
  double termhood = 0.0;
  std::int64_t k = 0;
  double t_norm = 0.0;
  double k_norm = 0.0;
  double score = 0.0;  ///< t_norm * k_norm
  std::string specific_discipline;
  int first_year = 0;
};

struct TermSelection {
  std::vector<TermScore> terms;
  double threshold = 0.0;       ///< percentile termhood t_c
  std::size_t scored_units = 0;  ///< units with a defined termhood
  std::size_t survivors = 0;     ///< units with t > t_c
  std::vector<std::string> undefined;  ///< units skipped: no discipline-labelled occurrence
  /// Set when fewer than 2 units exceed t_c; terms is then empty.
  std::optional<std::string> degenerate;
};

/// Nearest-rank percentile of a sample (0 < percentile <= 100).
double nearest_rank_percentile(std::vector<double> values, double percentile);

/// Keeps units with t > t_c (t_c the percentile of all termhoods), min-max
/// normalizes t and k over the survivors, orders by t'k' descending (then
/// higher t, then term) and returns the first top_n.
TermSelection select_terms(const OccurrenceTable& table, const DisciplinePriors& priors,
                           double percentile = 50.0, std::size_t top_n = 50);

/// Fills specific_discipline (argmax p_i; ties by larger k_i, then label)
/// and first_year from the table.
void annotate_terms(std::vector<TermScore>& scores, const OccurrenceTable& table,
                    const DisciplinePriors& priors);

/// term,k,termhood,t_norm,k_norm,score,specific_discipline,first_year
void write_term_report(const std::vector<TermScore>& terms, std::ostream& out);

}  // namespace evotopic::termmine
