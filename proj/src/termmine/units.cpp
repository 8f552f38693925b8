#include "evotopic/termmine/units.hpp"

#include <unordered_set>

#include "evotopic/text.hpp"

namespace evotopic::termmine {

std::string SemanticUnit::key() const { return text::join(words, " "); }

bool matches_unit_grammar(std::span<const Pos> pos) {
  std::size_t i = 0;
  while (i < pos.size() && pos[i] == Pos::adjective) ++i;
  if (i == pos.size()) return false;
  for (; i < pos.size(); ++i) {
    if (pos[i] != Pos::noun) return false;
  }
  return true;
}

std::vector<SemanticUnit> maximal_phrases(std::span<const TaggedToken> tokens) {
  std::vector<SemanticUnit> phrases;
  std::vector<std::string> adjectives, nouns;
  auto close = [&] {
    if (!nouns.empty()) {
      SemanticUnit u;
      u.words = std::move(adjectives);
      u.words.insert(u.words.end(), std::make_move_iterator(nouns.begin()),
                     std::make_move_iterator(nouns.end()));
      phrases.push_back(std::move(u));
    }
    adjectives.clear();
    nouns.clear();
  };
  for (const auto& t : tokens) {
    switch (t.pos) {
      case Pos::adjective:
        if (!nouns.empty()) close();
        adjectives.push_back(text::fold_case(t.lemma));
        break;
      case Pos::noun:
        nouns.push_back(text::fold_case(t.lemma));
        break;
      case Pos::other:
        close();
        break;
    }
  }
  close();
  return phrases;
}

std::vector<SemanticUnit> extract_semantic_units(std::span<const TaggedToken> tokens) {
  std::vector<SemanticUnit> out;
  std::unordered_set<std::string> seen;
  for (const auto& phrase : maximal_phrases(tokens)) {
    for (std::size_t start = 0; start < phrase.words.size(); ++start) {
      SemanticUnit suffix{{phrase.words.begin() + static_cast<std::ptrdiff_t>(start), phrase.words.end()}};
      if (seen.insert(suffix.key()).second) out.push_back(std::move(suffix));
    }
  }
  return out;
}

std::vector<SemanticUnit> extract_semantic_units(std::string_view text, const Tagger& tagger) {
  const auto tokens = tokenize(text);
  const auto tagged = tagger.tag(tokens);
  if (tagged.size() != tokens.size()) throw TaggerError("tagger returned a different token count");
  return extract_semantic_units(tagged);
}

}  // namespace evotopic::termmine
