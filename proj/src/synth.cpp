#include "evotopic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "evotopic/csv.hpp"

namespace evotopic::synth {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::weighted(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

namespace {

struct Country {
  const char* name;
  const char* region;
  double weight;
};

// clang-format off
constexpr Country kCountries[] = {
  {"Ukraine", "Europe", 9.0}, {"Russian Federation", "Europe", 7.0}, {"Belarus", "Europe", 5.0},
  {"United States", "North America", 8.0}, {"Germany", "Europe", 5.0}, {"United Kingdom", "Europe", 4.5},
  {"France", "Europe", 4.0}, {"Japan", "Asia", 4.0}, {"Sweden", "Europe", 3.0}, {"Italy", "Europe", 2.5},
  {"Finland", "Europe", 2.0}, {"Poland", "Europe", 2.0}, {"Canada", "North America", 2.0},
  {"Norway", "Europe", 1.8}, {"Switzerland", "Europe", 1.5}, {"Austria", "Europe", 1.5},
  {"Netherlands", "Europe", 1.5}, {"Belgium", "Europe", 1.2}, {"Spain", "Europe", 1.2},
  {"Czechoslovakia", "Europe", 0.6}, {"Czech Republic", "Europe", 1.0}, {"Hungary", "Europe", 1.0},
  {"Denmark", "Europe", 1.0}, {"Greece", "Europe", 0.8}, {"Israel", "Asia", 1.0},
  {"China", "Asia", 1.5}, {"South Korea", "Asia", 1.0}, {"India", "Asia", 0.8}, {"Turkey", "Asia", 0.6},
  {"Australia", "Oceania", 1.0}, {"New Zealand", "Oceania", 0.4}, {"Brazil", "South America", 0.6},
  {"Argentina", "South America", 0.4}, {"Cuba", "North America", 0.4}, {"Mexico", "North America", 0.3},
  {"South Africa", "Africa", 0.3}, {"Egypt", "Africa", 0.2}, {"Kazakhstan", "Asia", 0.5},
  {"Lithuania", "Europe", 0.6}, {"Estonia", "Europe", 0.4},
};

struct Discipline {
  const char* name;
  double weight_early;
  double weight_late;
  std::vector<const char*> phrases;  // most frequent first
};

const std::vector<Discipline>& disciplines() {
  static const std::vector<Discipline> d = {
    {"Medicine", 30, 26, {"thyroid cancer", "radiation exposure", "childhood leukemia", "cancer incidence",
       "dose reconstruction", "congenital malformation", "cardiovascular disease", "thyroid nodule",
       "health effect", "clinical examination", "cancer risk", "radiation dose", "medical surveillance",
       "breast cancer", "acute radiation syndrome", "cataract", "infant mortality", "thyroid dose",
       "mental health", "birth defect"}},
    {"Environmental Science", 27, 22, {"soil contamination", "radioactive fallout", "cesium deposition",
       "forest ecosystem", "exclusion zone", "aquatic organism", "radionuclide transfer", "wildlife population",
       "contaminated area", "vertical migration", "agricultural product", "ground water", "food chain",
       "forest fire", "fish contamination", "sediment", "vegetation cover", "bird population",
       "radioecological monitoring", "plant uptake"}},
    {"Energy", 16, 9, {"nuclear power plant", "reactor safety", "nuclear energy", "fuel containment",
       "sarcophagus", "reactor design", "nuclear safety culture", "power reactor", "shelter structure",
       "decommissioning", "nuclear fuel", "safety assessment", "energy policy", "radioactive waste",
       "reactor core"}},
    {"Physics and Astronomy", 14, 10, {"gamma spectrometry", "radionuclide", "neutron flux", "dosimetric measurement",
       "hot particle", "activity concentration", "detector calibration", "fuel particle", "isotope ratio",
       "beta radiation", "atmospheric transport", "plutonium isotope", "aerosol", "deposition model"}},
    {"Biochemistry, Genetics and Molecular Biology", 8, 14, {"genetic effect", "chromosome aberration",
       "dna damage", "oxidative stress", "gene expression", "mutation rate", "germline mutation",
       "dna repair", "apoptosis", "microsatellite mutation", "genomic instability", "biological marker",
       "cytogenetic analysis", "protein"}},
    {"Social Sciences", 4, 11, {"public perception", "risk communication", "social consequence",
       "resettlement policy", "psychological stress", "local community", "public trust", "nuclear policy",
       "economic consequence", "risk perception", "social memory"}},
    {"Arts and Humanities", 1, 8, {"cold war", "collective memory", "soviet history", "literary representation",
       "cultural trauma", "documentary film", "historical narrative", "soviet union", "heritage",
       "visual art"}},
  };
  return d;
}

const std::vector<const char*>& general_phrases() {
  static const std::vector<const char*> g = {"chernobyl accident", "radiation", "consequence", "population",
      "study", "result", "analysis", "data", "level", "effect", "region", "year", "risk", "area", "method"};
  return g;
}
// clang-format on

constexpr const char* kConnectors[] = {"was studied in", "is associated with", "were observed for",
                                       "and", "was compared with", "of", "in", "was estimated for",
                                       "remains relevant to", "for"};

constexpr const char* kSpellings[] = {"Chernobyl", "Chernobyl", "Chernobyl", "Chornobyl", "chernobyl'",
                                      "Chornobyl'"};

/// Zipf-like pick over a list ordered by frequency.
const char* pick(Rng& rng, const std::vector<const char*>& list) {
  std::vector<double> w(list.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / static_cast<double>(i + 1);
  return list[rng.weighted(w)];
}

double year_weight(int year) {
  const int age = year - 1986;
  double w = 60.0 * std::exp(-age / 10.0) + 18.0;
  switch (year) {
    case 1996: w *= 2.2; break;
    case 2006: w *= 2.1; break;
    case 2011: w *= 2.4; break;
    case 2009: w *= 1.5; break;
    default: break;
  }
  return w;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

std::vector<PubRecord> generate(const Options& options) {
  Rng rng(options.seed);
  std::vector<double> year_w;
  for (int y = options.first_year; y <= options.last_year; ++y) year_w.push_back(year_weight(y));
  std::vector<double> country_w;
  for (const auto& c : kCountries) country_w.push_back(c.weight);
  const auto& discs = disciplines();
  const double span = std::max(1, options.last_year - options.first_year);

  std::vector<PubRecord> out;
  out.reserve(options.records);
  for (std::size_t n = 0; n < options.records; ++n) {
    PubRecord r;
    r.id = "syn-" + std::to_string(n + 1);
    r.year = options.first_year + static_cast<int>(rng.weighted(year_w));
    r.source = "synthetic";
    const double progress = (r.year - options.first_year) / span;

    // Disciplines drift from the physical sciences towards biology and the humanities.
    std::vector<double> dw;
    for (const auto& d : discs) dw.push_back(d.weight_early + (d.weight_late - d.weight_early) * progress);
    std::vector<std::size_t> mine{rng.weighted(dw)};
    if (rng.uniform() < 0.3) {
      auto second = rng.weighted(dw);
      if (second != mine[0]) mine.push_back(second);
    }
    for (auto i : mine) r.disciplines.emplace_back(discs[i].name);

    // Countries: early collaboration is rare and mostly bilateral with one of
    // the affected countries; later papers bring larger, denser teams.
    if (rng.uniform() > 0.06) {
      const double p_collab = 0.01 + 0.5 * progress * progress;
      std::size_t k = 1;
      if (rng.uniform() < p_collab) k = 2 + rng.below(progress > 0.5 ? 5 : progress > 0.25 ? 2 : 1);
      std::vector<std::size_t> chosen;
      if (k > 1 && rng.uniform() > progress) chosen.push_back(rng.below(3));
      while (chosen.size() < k) {
        auto c = rng.weighted(country_w);
        // Czechoslovakia only exists before 1993.
        if (std::string_view(kCountries[c].name) == "Czechoslovakia" && r.year >= 1993) continue;
        if (std::string_view(kCountries[c].name) == "Czech Republic" && r.year < 1993) continue;
        if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
      }
      for (auto c : chosen) r.countries.emplace_back(kCountries[c].name);
    }

    auto phrase = [&]() -> std::string {
      if (rng.uniform() < 0.7) return pick(rng, discs[mine[rng.below(mine.size())]].phrases);
      return pick(rng, general_phrases());
    };

    const bool on_topic = rng.uniform() >= options.off_topic;
    const char* spelling = kSpellings[rng.below(std::size(kSpellings))];
    const bool fukushima = r.year >= 2011 && rng.uniform() < 0.25;

    r.title = capitalize(phrase()) + " " + kConnectors[rng.below(std::size(kConnectors))] + " " + phrase();
    if (on_topic) r.title += std::string(" after the ") + spelling + " accident";
    if (fukushima) r.title += " and Fukushima";

    if (rng.uniform() > 0.08) {
      std::string abstract;
      const auto sentences = 3 + rng.below(5);
      for (std::size_t s = 0; s < sentences; ++s) {
        std::string sentence = "The " + phrase() + " " + kConnectors[rng.below(std::size(kConnectors))] +
                               " the " + phrase();
        if (rng.uniform() < 0.4) sentence += std::string(" ") + kConnectors[rng.below(std::size(kConnectors))] +
                                             " " + phrase();
        if (s == 0 && on_topic) sentence += std::string(" after the ") + spelling + " nuclear power plant accident";
        if (s == 1 && fukushima) sentence += " as after the Fukushima accident";
        abstract += sentence + ". ";
      }
      abstract.pop_back();
      r.abstract = std::move(abstract);
    }
    r.keywords = {phrase(), phrase()};
    if (r.keywords[0] == r.keywords[1]) r.keywords.pop_back();
    out.push_back(std::move(r));
  }
  return out;
}

void write_region_map(std::ostream& out) {
  csv::write_row(out, {"country", "region"});
  for (const auto& c : kCountries) csv::write_row(out, {c.name, c.region});
}

}  // namespace evotopic::synth
