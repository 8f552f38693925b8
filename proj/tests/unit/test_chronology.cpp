#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <doctest.h>

#include "evotopic/chronology.hpp"
#include "evotopic/synth.hpp"

using namespace evotopic;

namespace {
PubRecord rec(std::string id, int year, std::vector<std::string> countries = {}, std::string title = "t") {
  PubRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.year = year;
  r.countries = std::move(countries);
  return r;
}
}  // namespace

TEST_CASE("annual counts tally in-range years") {
  const Corpus c({rec("a", 1986), rec("b", 1986), rec("c", 1987), rec("d", 1990)}, {});
  const auto s = annual_counts(c, {1986, 1987});
  CHECK(s.counts() == std::vector<std::int64_t>{2, 1});
  CHECK(annual_counts(Corpus{}, {1986, 1990}).counts() == std::vector<std::int64_t>(5, 0));
}

TEST_CASE("annual counts match an independent tally on 100 records") {
  std::vector<PubRecord> rs;
  std::map<int, std::int64_t> oracle;
  for (int i = 0; i < 100; ++i) {
    const int y = 1986 + (i * 7 + i / 10) % 10;
    rs.push_back(rec("r" + std::to_string(i), y));
    ++oracle[y];
  }
  const auto s = annual_counts(Corpus(rs, {}), {1986, 1995});
  for (int y = 1986; y <= 1995; ++y) CHECK(s.at(y) == oracle[y]);
  CHECK(s.total() == 100);
}

TEST_CASE("peak detection basics") {
  const AnnualSeries s({1995, 1997}, {50, 120, 60});
  const auto p = detect_peaks(s, 1.2);
  REQUIRE(p.size() == 1);
  CHECK(p[0].year == 1996);
  CHECK(p[0].value == 120);
  CHECK(p[0].prominence == doctest::Approx(2.0));

  CHECK(detect_peaks(AnnualSeries({2000, 2005}, {1, 2, 3, 4, 5, 6})).empty());
  CHECK(detect_peaks(AnnualSeries({2000, 2005}, {6, 5, 4, 3, 2, 1})).empty());
  // endpoints never count
  CHECK(detect_peaks(AnnualSeries({2000, 2002}, {9, 1, 9})).empty());
  CHECK_THROWS(detect_peaks(s, 0.9));
}

TEST_CASE("bumps over a noisy decaying baseline are found exactly") {
  std::vector<std::int64_t> counts;
  for (int y = 1986; y <= 2015; ++y) {
    const double base = 400.0 * std::exp(-(y - 1986) / 8.0) + 150.0;
    const double noise = 1.0 + 0.03 * std::sin(y * 12.9898);
    double v = base * noise;
    if (y == 1996 || y == 2006 || y == 2011) v *= 2.0;
    counts.push_back(static_cast<std::int64_t>(std::lround(v)));
  }
  const AnnualSeries s({1986, 2015}, counts);
  // Inspection oracle: interior points exceeding both neighbours by >= 20 %.
  std::vector<int> expected;
  for (std::size_t i = 1; i + 1 < counts.size(); ++i) {
    if (counts[i] >= 1.2 * counts[i - 1] && counts[i] >= 1.2 * counts[i + 1]) expected.push_back(1986 + int(i));
  }
  REQUIRE(expected == std::vector<int>{1996, 2006, 2011});
  std::vector<int> got;
  for (const auto& p : detect_peaks(s)) got.push_back(p.year);
  CHECK(got == expected);
}

TEST_CASE("peak locations are stable under a constant shift at prominence 1") {
  const std::vector<std::int64_t> base = {3, 9, 2, 7, 7, 1, 5, 4};
  for (std::int64_t shift : {0, 1, 10, 1000}) {
    std::vector<std::int64_t> c;
    for (auto v : base) c.push_back(v + shift);
    std::vector<int> years;
    for (const auto& p : detect_peaks(AnnualSeries({2000, 2007}, c), 1.0)) years.push_back(p.year);
    CHECK(years == std::vector<int>{2001, 2006});
  }
}

TEST_CASE("anniversary alignment") {
  auto peak = [](int y) { return PeakEvent{y, 10, 2.0}; };
  auto a = anniversary_alignment({peak(1996)}, 1986, 5);
  REQUIRE(a.size() == 1);
  CHECK(a[0].k == 2);
  CHECK(anniversary_alignment({peak(2009)}, 1986, 5).empty());
  a = anniversary_alignment({peak(2006), peak(2011)}, 1986, 5);
  REQUIRE(a.size() == 2);
  CHECK(a[0].k == 4);
  CHECK(a[1].k == 5);
  CHECK(anniversary_alignment({peak(1986)}, 1986, 5).empty());  // offset 0 is not positive
}

TEST_CASE("cumulative countries per region") {
  const RegionMap regions({{"UA", "Europe"}, {"DE", "Europe"}});
  const Corpus c({rec("a", 1986, {"UA"}), rec("b", 1987, {"UA", "DE"}), rec("c", 1987, {"XX"})}, {});
  const auto cum = cumulative_countries(c, regions, {1986, 1987});
  CHECK(cum.at("Europe").counts() == std::vector<std::int64_t>{1, 2});
  CHECK(cum.at("other").counts() == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("cumulative countries match set-union accumulation") {
  const RegionMap regions({{"a1", "A"}, {"a2", "A"}, {"a3", "A"}, {"b1", "B"}, {"b2", "B"}, {"c1", "C"}});
  const std::vector<std::string> pool = {"a1", "a2", "a3", "b1", "b2", "c1", "z9"};
  synth::Rng rng(42);
  std::vector<PubRecord> rs;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> cs;
    for (int k = 0, n = 1 + int(rng.below(3)); k < n; ++k) cs.push_back(pool[rng.below(pool.size())]);
    rs.push_back(rec("r" + std::to_string(i), 1984 + int(rng.below(10)), cs));
  }
  const Corpus c(rs, {});
  const YearRange range{1986, 1993};
  const auto cum = cumulative_countries(c, regions, range);
  for (int y = range.first; y <= range.last; ++y) {
    std::map<std::string, std::set<std::string>> seen;
    for (const auto& r : c) {
      if (r.year > y) continue;
      for (const auto& country : r.countries) seen[regions.region_of(country)].insert(country);
    }
    for (const auto& [region, series] : cum) CHECK(series.at(y) == std::int64_t(seen[region].size()));
  }
  for (const auto& [_, s] : cum) {
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.counts()[i] >= s.counts()[i - 1]);
  }
}

TEST_CASE("region map CSV with header") {
  std::istringstream in("country,region\nUkraine,Europe\n\"Korea, Republic of\",Asia\n");
  const auto m = RegionMap::read_csv(in);
  CHECK(m.size() == 2);
  CHECK(m.region_of("ukraine") == "Europe");
  CHECK(m.region_of("korea, republic of") == "Asia");
  CHECK(m.region_of("atlantis") == "other");
}

TEST_CASE("joint topic series agree with per-record predicates") {
  const auto qa = TopicQuery::parse("chernobyl");
  const auto qb = TopicQuery::parse("fukushima");
  const Corpus both({rec("x", 2012, {}, "Chernobyl and Fukushima")}, {});
  const auto j1 = joint_topic_series(both, qa, qb, {2012, 2012});
  CHECK(j1.a.at(2012) == 1);
  CHECK(j1.b.at(2012) == 1);
  CHECK(j1.both.at(2012) == 1);

  std::vector<PubRecord> rs;
  synth::Rng rng(5);
  const char* titles[] = {"Chernobyl study", "Fukushima study", "Chernobyl vs Fukushima", "Radiation"};
  for (int i = 0; i < 50; ++i) rs.push_back(rec("r" + std::to_string(i), 2008 + int(rng.below(8)), {}, titles[rng.below(4)]));
  const Corpus c(rs, {});
  const YearRange range{2008, 2015};
  const auto j = joint_topic_series(c, qa, qb, range);
  for (int y = range.first; y <= range.last; ++y) {
    std::int64_t a = 0, b = 0, ab = 0;
    for (const auto& r : c) {
      if (r.year != y) continue;
      const bool ha = r.title.find("Chernobyl") != std::string::npos;
      const bool hb = r.title.find("Fukushima") != std::string::npos;
      a += ha;
      b += hb;
      ab += ha && hb;
    }
    CHECK(j.a.at(y) == a);
    CHECK(j.b.at(y) == b);
    CHECK(j.both.at(y) == ab);
    CHECK(j.both.at(y) <= std::min(j.a.at(y), j.b.at(y)));
  }

  const Corpus disjoint({rec("p", 2012, {}, "Chernobyl"), rec("q", 2012, {}, "Fukushima")}, {});
  CHECK(joint_topic_series(disjoint, qa, qb, {2012, 2012}).both.total() == 0);
}

TEST_CASE("series writers") {
  std::ostringstream o;
  write_series_csv(AnnualSeries({1986, 1987}, {2, 1}), o);
  CHECK(o.str() == "year,count\n1986,2\n1987,1\n");
  CHECK(YearRange::parse("1986:1991") == YearRange{1986, 1991});
  CHECK_THROWS(YearRange::parse("1991:1986"));
}
