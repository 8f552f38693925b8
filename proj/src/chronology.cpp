#include "evotopic/chronology.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "evotopic/csv.hpp"
#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic {

YearRange YearRange::parse(std::string_view s) {
  const auto parts = text::split(text::trim(s), ':');
  if (parts.size() != 2) throw std::invalid_argument("year range must be FIRST:LAST");
  YearRange r;
  try {
    std::size_t pos = 0;
    r.first = std::stoi(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("trailing");
    r.last = std::stoi(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("year range must be FIRST:LAST, got '" + std::string(s) + "'");
  }
  if (r.last < r.first) throw std::invalid_argument("year range is empty");
  return r;
}

std::string YearRange::to_string() const {
  return std::to_string(first) + ":" + std::to_string(last);
}

AnnualSeries::AnnualSeries(YearRange range) : range_(range) {
  if (range.last < range.first) throw std::invalid_argument("empty year range");
  counts_.assign(static_cast<std::size_t>(range.length()), 0);
}

AnnualSeries::AnnualSeries(YearRange range, std::vector<std::int64_t> counts)
    : range_(range), counts_(std::move(counts)) {
  if (range.last < range.first) throw std::invalid_argument("empty year range");
  if (counts_.size() != static_cast<std::size_t>(range.length())) {
    throw std::invalid_argument("series length does not match its year range");
  }
  for (auto c : counts_) {
    if (c < 0) throw std::invalid_argument("negative count in series");
  }
}

std::int64_t AnnualSeries::at(int year) const {
  if (!range_.contains(year)) return 0;
  return counts_[static_cast<std::size_t>(year - range_.first)];
}

void AnnualSeries::add(int year, std::int64_t n) {
  if (range_.contains(year)) counts_[static_cast<std::size_t>(year - range_.first)] += n;
}

std::int64_t AnnualSeries::total() const {
  std::int64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

AnnualSeries annual_counts(const Corpus& corpus, YearRange range) {
  AnnualSeries s(range);
  for (const auto& r : corpus) s.add(r.year);
  return s;
}

std::vector<PeakEvent> detect_peaks(const AnnualSeries& series, double min_prominence) {
  if (!(min_prominence >= 1.0)) throw std::invalid_argument("min_prominence must be >= 1");
  std::vector<PeakEvent> peaks;
  const auto& c = series.counts();
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (c[i] <= c[i - 1] || c[i] <= c[i + 1]) continue;
    const auto neighbour = std::max(c[i - 1], c[i + 1]);
    const double prominence = neighbour == 0 ? std::numeric_limits<double>::infinity()
                                             : static_cast<double>(c[i]) / static_cast<double>(neighbour);
    if (prominence >= min_prominence) {
      peaks.push_back({series.start_year() + static_cast<int>(i), c[i], prominence});
    }
  }
  return peaks;
}

std::vector<AnniversaryPeak> anniversary_alignment(const std::vector<PeakEvent>& peaks,
                                                   int event_year, int cycle) {
  if (cycle < 1) throw std::invalid_argument("cycle must be >= 1");
  std::vector<AnniversaryPeak> out;
  for (const auto& p : peaks) {
    const int offset = p.year - event_year;
    if (offset > 0 && offset % cycle == 0) out.push_back({p, offset / cycle});
  }
  return out;
}

RegionMap::RegionMap(std::map<std::string, std::string> country_to_region) {
  for (auto& [country, region] : country_to_region) {
    map_[text::canonical_label(country)] = std::string(text::trim(region));
  }
}

RegionMap RegionMap::read_csv(std::istream& in) {
  csv::Reader reader(in);
  std::map<std::string, std::string> m;
  bool first = true;
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && text::trim(row->fields[0]).empty()) continue;
    if (row->fields.size() != 2) {
      throw InputError("region map line " + std::to_string(row->line) + ": expected 2 columns");
    }
    if (first && text::canonical_label(row->fields[0]) == "country" &&
        text::canonical_label(row->fields[1]) == "region") {
      first = false;
      continue;
    }
    first = false;
    m[row->fields[0]] = row->fields[1];
  }
  return RegionMap(std::move(m));
}

const std::string& RegionMap::region_of(const std::string& canonical_country) const {
  static const std::string other = kOther;
  auto it = map_.find(canonical_country);
  return it == map_.end() ? other : it->second;
}

std::map<std::string, AnnualSeries> cumulative_countries(const Corpus& corpus,
                                                         const RegionMap& regions,
                                                         YearRange range) {
  // Earliest year each country appears.
  std::map<std::string, int> first_seen;
  for (const auto& r : corpus) {
    for (const auto& c : r.countries) {
      auto [it, inserted] = first_seen.emplace(c, r.year);
      if (!inserted) it->second = std::min(it->second, r.year);
    }
  }
  std::map<std::string, AnnualSeries> out;
  for (const auto& [country, year] : first_seen) {
    auto& series = out.try_emplace(regions.region_of(country), range).first->second;
    const int from = std::max(year, range.first);
    for (int y = from; y <= range.last; ++y) series.add(y);
  }
  return out;
}

JointTopicSeries joint_topic_series(const Corpus& corpus, const TopicQuery& qa,
                                    const TopicQuery& qb, YearRange range) {
  JointTopicSeries s{AnnualSeries(range), AnnualSeries(range), AnnualSeries(range)};
  for (const auto& r : corpus) {
    const bool a = qa.matches(r);
    const bool b = qb.matches(r);
    if (a) s.a.add(r.year);
    if (b) s.b.add(r.year);
    if (a && b) s.both.add(r.year);
  }
  return s;
}

void write_series_csv(const AnnualSeries& series, std::ostream& out) {
  out << "year,count\n";
  for (int y = series.start_year(); y <= series.end_year(); ++y) {
    out << y << ',' << series.at(y) << '\n';
  }
}

std::string series_to_json(const AnnualSeries& series) {
  nlohmann::json j = {{"start_year", series.start_year()},
                      {"end_year", series.end_year()},
                      {"counts", series.counts()}};
  return j.dump(2) + "\n";
}

void write_series_table_csv(const std::map<std::string, AnnualSeries>& series,
                            const std::string& key_name, std::ostream& out) {
  csv::write_row(out, {key_name, "year", "count"});
  for (const auto& [key, s] : series) {
    for (int y = s.start_year(); y <= s.end_year(); ++y) {
      csv::write_row(out, {key, std::to_string(y), std::to_string(s.at(y))});
    }
  }
}

}  // namespace evotopic
