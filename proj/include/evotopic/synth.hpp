#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "evotopic/corpus.hpp"

namespace evotopic::synth {

/// SplitMix64: small, fast and bit-identical on every platform, unlike the
/// standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();
  /// Index drawn proportionally to weights.
  std::size_t weighted(const std::vector<double>& weights);

 private:
  std::uint64_t state_;
};

struct Options {
  std::size_t records = 10000;
  std::uint64_t seed = 1986;
  int first_year = 1986;
  int last_year = 2015;
  /// Share of records that mention no topic spelling at all.
  double off_topic = 0.04;
};

/// Records loosely shaped like an event-triggered literature: decaying
/// annual output with anniversary bumps, collaboration that densifies over
/// time, and discipline-biased vocabulary in titles and abstracts.
std::vector<PubRecord> generate(const Options& options);

/// country,region rows for every country the generator can emit.
void write_region_map(std::ostream& out);

}  // namespace evotopic::synth
