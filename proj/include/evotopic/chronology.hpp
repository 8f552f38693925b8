#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "evotopic/corpus.hpp"

namespace evotopic {

/// Inclusive calendar-year interval.
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int y) const noexcept { return y >= first && y <= last; }
  int length() const noexcept { return last - first + 1; }
  /// Parses "1986:2015".
  static YearRange parse(std::string_view s);
  std::string to_string() const;

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Year -> count over a contiguous range.
class AnnualSeries {
 public:
  AnnualSeries() = default;
  /// Zero-filled. Throws std::invalid_argument when range.last < range.first.
  explicit AnnualSeries(YearRange range);
  AnnualSeries(YearRange range, std::vector<std::int64_t> counts);

  YearRange range() const noexcept { return range_; }
  int start_year() const noexcept { return range_.first; }
  int end_year() const noexcept { return range_.last; }
  std::size_t size() const noexcept { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  std::int64_t at(int year) const;
  void add(int year, std::int64_t n = 1);  // ignored outside the range
  std::int64_t total() const;

  friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

 private:
  YearRange range_{};
  std::vector<std::int64_t> counts_;
};

struct PeakEvent {
  int year = 0;
  std::int64_t value = 0;
  /// value / max(neighbour counts); +inf when both neighbours are zero.
  double prominence = 0.0;
};

struct AnniversaryPeak {
  PeakEvent peak;
  int k = 0;  ///< (year - event_year) / cycle
};

inline constexpr double kDefaultMinProminence = 1.2;

AnnualSeries annual_counts(const Corpus& corpus, YearRange range);

/// Strict interior local maxima with prominence >= min_prominence,
/// ascending by year. Series shorter than 3 years yield no peaks.
/// Throws std::invalid_argument when min_prominence < 1.
std::vector<PeakEvent> detect_peaks(const AnnualSeries& series,
                                    double min_prominence = kDefaultMinProminence);

/// Peaks whose offset from event_year is a positive multiple of cycle.
std::vector<AnniversaryPeak> anniversary_alignment(const std::vector<PeakEvent>& peaks,
                                                   int event_year, int cycle);

/// Canonical country label -> region name. Unmapped countries fall into "other".
class RegionMap {
 public:
  static constexpr const char* kOther = "other";

  RegionMap() = default;
  explicit RegionMap(std::map<std::string, std::string> country_to_region);

  /// Two-column CSV (country, region); an optional header row "country,region".
  static RegionMap read_csv(std::istream& in);

  const std::string& region_of(const std::string& canonical_country) const;
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::map<std::string, std::string> map_;
};

/// Per region, number of distinct countries seen in records with year <= y.
/// Records before range.first still seed the accumulation.
std::map<std::string, AnnualSeries> cumulative_countries(const Corpus& corpus,
                                                         const RegionMap& regions,
                                                         YearRange range);

struct JointTopicSeries {
  AnnualSeries a;
  AnnualSeries b;
  AnnualSeries both;
};

JointTopicSeries joint_topic_series(const Corpus& corpus, const TopicQuery& qa,
                                    const TopicQuery& qb, YearRange range);

// Report writers -----------------------------------------------------------

/// "year,count" rows with header.
void write_series_csv(const AnnualSeries& series, std::ostream& out);
std::string series_to_json(const AnnualSeries& series);
/// "<key>,year,count" long-format table; keys in map order.
void write_series_table_csv(const std::map<std::string, AnnualSeries>& series,
                            const std::string& key_name, std::ostream& out);

}  // namespace evotopic
