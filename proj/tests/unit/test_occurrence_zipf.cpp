#include <cmath>
#include <set>

#include <doctest.h>

#include "evotopic/error.hpp"
#include "evotopic/synth.hpp"
#include "evotopic/termmine/occurrence.hpp"
#include "evotopic/termmine/tagger.hpp"
#include "evotopic/termmine/units.hpp"
#include "evotopic/termmine/zipf.hpp"

using namespace evotopic;
using namespace evotopic::termmine;

namespace {
DocumentUnits doc(std::string id, int year, std::vector<std::string> disc, std::vector<std::string> units) {
  return {std::move(id), year, std::move(disc), std::move(units)};
}
}  // namespace

TEST_CASE("binary per-document counting") {
  const std::vector<DocumentUnits> docs = {doc("a", 1990, {"med"}, {"x", "x", "y"}), doc("b", 1991, {"med"}, {"x"})};
  const auto t = count_occurrences(docs);
  CHECK(t.find("x")->k == 2);
  CHECK(t.find("y")->k == 1);
  CHECK(t.find("x")->docs == std::vector<std::uint32_t>{0, 1});
  CHECK(t.find("z") == nullptr);
}

TEST_CASE("multi-label documents count once per discipline") {
  const std::vector<DocumentUnits> docs = {doc("a", 1995, {"med", "env"}, {"x"}), doc("b", 1990, {"med"}, {"x"}),
                                           doc("c", 1992, {}, {"x"})};
  const auto t = count_occurrences(docs);
  CHECK(t.disciplines() == std::vector<std::string>{"env", "med"});
  const auto* x = t.find("x");
  CHECK(x->k == 3);
  CHECK(x->k_by_discipline == std::vector<std::int64_t>{1, 2});
  CHECK(x->first_year == 1990);
  CHECK(t.documents_per_discipline() == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("counts equal brute-force scan on random documents") {
  synth::Rng rng(31);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  const std::vector<std::string> discs = {"d1", "d2", "d3"};
  std::vector<DocumentUnits> docs;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> u, d;
    for (int k = 0, n = int(rng.below(6)); k < n; ++k) u.push_back(vocab[rng.below(vocab.size())]);
    for (const auto& x : discs)
      if (rng.uniform() < 0.4) d.push_back(x);
    docs.push_back(doc("d" + std::to_string(i), 1990 + int(rng.below(20)), d, u));
  }
  const auto t = count_occurrences(docs);
  for (const auto& w : vocab) {
    std::int64_t k = 0;
    std::vector<std::int64_t> kd(t.disciplines().size(), 0);
    for (const auto& d : docs) {
      const bool has = std::find(d.units.begin(), d.units.end(), w) != d.units.end();
      if (!has) continue;
      ++k;
      for (std::size_t i = 0; i < kd.size(); ++i)
        kd[i] += std::find(d.disciplines.begin(), d.disciplines.end(), t.disciplines()[i]) != d.disciplines.end();
    }
    const auto* s = t.find(w);
    if (k == 0) {
      CHECK(s == nullptr);
      continue;
    }
    REQUIRE(s != nullptr);
    CHECK(s->k == k);
    CHECK(s->k_by_discipline == kd);
  }
}

TEST_CASE("threshold keeps k strictly above k_c") {
  std::vector<DocumentUnits> docs;
  for (int i = 0; i < 5; ++i) docs.push_back(doc("d" + std::to_string(i), 2000, {"m"}, i < 2 ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"a"}));
  const auto t = count_occurrences(docs);
  const auto th = t.threshold(2);
  CHECK(th.units().size() == 1);
  CHECK(th.find("a") != nullptr);
  CHECK(th.disciplines() == t.disciplines());
  CHECK(t.threshold(5).empty());
}

TEST_CASE("survivor curve") {
  // units with k = 1, 1, 2, 5, 9
  std::vector<DocumentUnits> docs;
  const std::vector<std::pair<std::string, int>> spec = {{"p", 1}, {"q", 1}, {"r", 2}, {"s", 5}, {"t", 9}};
  for (int i = 0; i < 9; ++i) docs.push_back(doc("d" + std::to_string(i), 2000, {"m"}, {}));
  for (const auto& [name, k] : spec)
    for (int i = 0; i < k; ++i) docs[std::size_t(i)].units.push_back(name);
  const auto t = count_occurrences(docs);
  REQUIRE(t.find("q")->k == 1);
  const auto curve = survivor_curve(t);
  REQUIRE(curve.size() == 9);
  CHECK(curve[0] == std::pair<std::int64_t, std::size_t>{1, 3});
  CHECK(curve[3] == std::pair<std::int64_t, std::size_t>{4, 2});
  CHECK(curve[4] == std::pair<std::int64_t, std::size_t>{5, 1});
  CHECK(curve[8] == std::pair<std::int64_t, std::size_t>{9, 0});
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second <= curve[i - 1].second);
  CHECK_THROWS(survivor_curve(OccurrenceTable{}));
}

TEST_CASE("a nested unit occurs at least as often as its container") {
  const RuleTagger tagger;
  const std::vector<std::string> texts = {"nuclear power plant accident", "power plant workers", "plant accident",
                                          "the chernobyl nuclear power plant", "accident consequences"};
  std::vector<DocumentUnits> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    std::vector<std::string> u;
    for (const auto& s : extract_semantic_units(texts[i], tagger)) u.push_back(s.key());
    docs.push_back(doc("d" + std::to_string(i), 2000, {"m"}, u));
  }
  const auto t = count_occurrences(docs);
  for (const auto& [key, stats] : t.units()) {
    const auto space = key.find(' ');
    if (space == std::string::npos) continue;
    const auto* tail = t.find(key.substr(space + 1));
    REQUIRE(tail != nullptr);
    CHECK(tail->k >= stats.k);
  }
}

TEST_CASE("frequency rank ties fall back to key order") {
  const std::vector<DocumentUnits> docs = {doc("a", 1, {}, {"b", "a", "c"}), doc("b", 1, {}, {"c"})};
  const auto r = frequency_rank(count_occurrences(docs));
  REQUIRE(r.size() == 3);
  CHECK(r[0].key == "c");
  CHECK(r[1].key == "a");
  CHECK(r[2].key == "b");
  CHECK(r[2].rank == 3);
}

namespace {
std::vector<RankedUnit> ranked(const std::vector<std::int64_t>& ks) {
  std::vector<RankedUnit> out;
  for (std::size_t i = 0; i < ks.size(); ++i) out.push_back({i + 1, "u" + std::to_string(i), ks[i]});
  return out;
}
}  // namespace

TEST_CASE("exact power law recovers exponent 1") {
  std::vector<std::int64_t> ks;
  for (int r = 1; r <= 16; ++r) ks.push_back(720720 / r);
  const auto fit = fit_zipf(ranked(ks));
  CHECK(std::abs(fit.exponent - 1.0) < 1e-9);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points == 16);
}

TEST_CASE("min_freq filters the tail") {
  const auto fit = fit_zipf(ranked({1200, 600, 400, 300, 1, 1}), 2);
  CHECK(fit.n_points == 4);
  CHECK(std::abs(fit.exponent - 1.0) < 1e-9);
}

TEST_CASE("degenerate zipf inputs") {
  CHECK_THROWS_AS(fit_zipf(ranked({5, 4})), AnalysisError);
  CHECK_THROWS_AS(fit_zipf(ranked({3, 3, 3, 3})), AnalysisError);
  CHECK_THROWS_AS(fit_zipf(ranked({9, 1, 1, 1})), AnalysisError);
}
