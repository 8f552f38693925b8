#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evotopic/termmine/tagger.hpp"

namespace evotopic::termmine {

/// A candidate term: zero or more adjectives followed by one or more
/// nouns, stored as lowercased lemmas.
struct SemanticUnit {
  std::vector<std::string> words;

  std::size_t arity() const noexcept { return words.size(); }
  /// Words joined by single spaces; the unit's identity in tables.
  std::string key() const;

  friend bool operator==(const SemanticUnit&, const SemanticUnit&) = default;
};

/// Finds maximal adjective* noun+ runs and emits every suffix of each run
/// (all of which match the grammar), deduplicated in first-seen order.
std::vector<SemanticUnit> extract_semantic_units(std::span<const TaggedToken> tokens);

/// tokenize + tag + extract. TaggerError propagates to the caller.
std::vector<SemanticUnit> extract_semantic_units(std::string_view text, const Tagger& tagger);

/// The maximal runs themselves, without suffix expansion.
std::vector<SemanticUnit> maximal_phrases(std::span<const TaggedToken> tokens);

/// True when the part-of-speech sequence is adjective* noun+.
bool matches_unit_grammar(std::span<const Pos> pos);

}  // namespace evotopic::termmine
