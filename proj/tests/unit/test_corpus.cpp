#include <set>
#include <sstream>

#include <doctest.h>

#include "evotopic/corpus.hpp"
#include "evotopic/error.hpp"
#include "evotopic/synth.hpp"

using namespace evotopic;

namespace {
Corpus parse_jsonl(const std::string& s) {
  std::istringstream in(s);
  return parse_records(in, InputFormat::jsonl).corpus;
}

PubRecord rec(std::string id, std::string title, int year = 1990) {
  PubRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.year = year;
  return r;
}
}  // namespace

TEST_CASE("one JSONL line ingests as a corpus of one") {
  const auto c = parse_jsonl(R"({"id":"a","title":"T","year":1986,"abstract":"A"})" "\n");
  REQUIRE(c.size() == 1);
  CHECK(c.records()[0].id == "a");
  CHECK(c.records()[0].abstract == std::optional<std::string>("A"));
  CHECK(c.records()[0].year == 1986);
}

TEST_CASE("year out of range is rejected with a reason") {
  std::istringstream in(R"({"id":"a","title":"T","year":1990})" "\n"
                        R"({"id":"b","title":"T","year":"18986"})" "\n");
  const auto res = parse_records(in, InputFormat::jsonl);
  CHECK(res.corpus.size() == 1);
  REQUIRE(res.rejects.size() == 1);
  CHECK(res.rejects[0].line == 2);
  CHECK(res.rejects[0].reason == "year out of range");
}

TEST_CASE("CSV with a duplicate id keeps two records and one reject") {
  // Enumerated by hand: rows 2 and 3 are fine, row 4 repeats id "p1".
  std::istringstream in("ID,Title,Year,Countries\n"
                        "p1,First,1990,Ukraine; Germany\n"
                        "p2,Second,1991,\n"
                        "p1,Again,1992,France\n");
  const auto fm = FieldMap::parse("id:ID;title:Title;year:Year;countries:Countries");
  const auto res = parse_records(in, InputFormat::csv, fm);
  CHECK(res.corpus.size() == 2);
  REQUIRE(res.rejects.size() == 1);
  CHECK(res.rejects[0].line == 4);
  CHECK(res.rejects[0].reason == "duplicate id");
  CHECK(res.corpus.records()[0].countries == std::vector<std::string>{"ukraine", "germany"});
}

TEST_CASE("missing required CSV column is a hard failure") {
  std::istringstream in("id,title\nx,T\n");
  CHECK_THROWS_AS(parse_records(in, InputFormat::csv), InputError);
}

TEST_CASE("more than half rejected is a hard failure") {
  std::istringstream in(R"({"id":"a","title":"T","year":1990})" "\n"
                        "not json\n"
                        R"({"id":"c","year":1990})" "\n");
  CHECK_THROWS_AS(parse_records(in, InputFormat::jsonl), InputError);
}

TEST_CASE("exactly half rejected is tolerated") {
  std::istringstream in(R"({"id":"a","title":"T","year":1990})" "\n" "{bad\n");
  const auto res = parse_records(in, InputFormat::jsonl);
  CHECK(res.corpus.size() == 1);
  CHECK(res.rejects.at(0).reason == "malformed json");
}

TEST_CASE("labels are canonicalized and deduplicated; historical names survive") {
  const auto c = parse_jsonl(
      R"({"id":"a","title":"T","year":1990,"countries":["Czechoslovakia"," czechoslovakia ","USSR"],"disciplines":["Medicine","MEDICINE"]})"
      "\n");
  CHECK(c.records()[0].countries == std::vector<std::string>{"czechoslovakia", "ussr"});
  CHECK(c.records()[0].disciplines == std::vector<std::string>{"medicine"});
}

TEST_CASE("topic filter: default spellings, case folding, no match") {
  const auto q = TopicQuery::chornobyl();
  CHECK(q.matches(rec("1", "Thyroid cancer after Chernobyl")));
  CHECK(q.matches(rec("2", "CHORNOBYL' revisited")));
  CHECK_FALSE(q.matches(rec("3", "Effects of radiation")));
  auto kw = rec("4", "Untitled");
  kw.keywords = {"chornobyl zone"};
  CHECK(q.matches(kw));
  auto ab = rec("5", "Untitled");
  ab.abstract = "After the chernobyl' accident";
  CHECK(q.matches(ab));
}

TEST_CASE("AND-of-ORs query parsing") {
  const auto q = TopicQuery::parse("chornobyl OR chernobyl AND fukushima");
  REQUIRE(q.clauses().size() == 2);
  CHECK(q.matches(rec("1", "Chernobyl and Fukushima compared")));
  CHECK_FALSE(q.matches(rec("2", "Chernobyl only")));
  CHECK_THROWS_AS(TopicQuery::parse("a OR  OR b"), ConfigError);
  CHECK_THROWS_AS(TopicQuery({}), ConfigError);
}

TEST_CASE("filter_topic properties on generated corpora") {
  synth::Options opt;
  opt.records = 400;
  opt.off_topic = 0.3;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    opt.seed = seed;
    const Corpus c(synth::generate(opt), {"synthetic", ""});
    const auto q = TopicQuery::chornobyl();
    const auto once = filter_topic(c, q);
    const auto twice = filter_topic(once, q);
    CHECK(once.records() == twice.records());
    CHECK(once.size() <= c.size());
    // Order preserved and predicate exact.
    std::size_t j = 0;
    for (const auto& r : c) {
      if (q.matches(r)) {
        REQUIRE(j < once.size());
        CHECK(once.records()[j++].id == r.id);
      }
    }
    CHECK(j == once.size());
  }
}

TEST_CASE("validation counts") {
  std::vector<PubRecord> rs = {rec("a", "T"), rec("b", "T")};
  rs[0].countries = {"Ukraine"};
  rs[0].abstract = "x";
  const Corpus c(rs, {});
  const auto v = validate(c);
  CHECK(v.records == 2);
  CHECK(v.missing_countries == 1);
  CHECK(v.missing_abstract == 1);
  CHECK(v.missing_disciplines == 2);
  CHECK(v.duplicate_ids.empty());

  const auto e = validate(Corpus{});
  CHECK(e.records == 0);
  CHECK(e.missing_abstract == 0);
  CHECK(e.missing_countries == 0);
  CHECK(e.missing_disciplines == 0);
}

TEST_CASE("duplicate ids never survive parsing") {
  std::istringstream in(R"({"id":"a","title":"T","year":1990})" "\n"
                        R"({"id":"a","title":"U","year":1991})" "\n"
                        R"({"id":"b","title":"V","year":1992})" "\n");
  const auto res = parse_records(in, InputFormat::jsonl);
  CHECK(validate(res.corpus).duplicate_ids.empty());
  CHECK(res.rejects.size() == 1);
  CHECK_THROWS_AS(Corpus({rec("a", "T"), rec("a", "U")}, {}), InputError);
}

TEST_CASE("serialize then parse reproduces the corpus field by field") {
  synth::Options opt;
  opt.records = 250;
  const Corpus c(synth::generate(opt), {"synthetic", ""});
  std::ostringstream out;
  write_jsonl(c, out);
  std::istringstream in(out.str());
  const auto back = parse_records(in, InputFormat::jsonl).corpus;
  CHECK(back.records() == c.records());
}
