#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evotopic/error.hpp"

namespace evotopic::termmine {

enum class Pos { noun, adjective, other };

std::string_view to_string(Pos pos);

/// Maps "noun"/"adjective"/"other" and Penn/TreeTagger tags (NN*, NP*, JJ*)
/// to a part of speech. Anything unrecognised is Pos::other.
Pos pos_from_tag(std::string_view tag);

struct TaggedToken {
  std::string surface;
  std::string lemma;  ///< non-empty
  Pos pos = Pos::other;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Raised by a tagger that cannot process a document.
class TaggerError : public Error {
 public:
  using Error::Error;
};

/// Splits text into word and punctuation tokens. Inner hyphens and
/// apostrophes stay inside words ("low-dose"); a possessive "'s" becomes
/// its own token and a trailing apostrophe is dropped ("chornobyl'").
std::vector<std::string> tokenize(std::string_view text);

/// Tokens -> tagged tokens, one per input token.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<TaggedToken> tag(std::span<const std::string> tokens) const = 0;
};

/// Baseline tagger: lexicon lookup, then suffix heuristics, defaulting to
/// noun. Noun lemmas are singularised.
class RuleTagger final : public Tagger {
 public:
  /// Uses the built-in English word list.
  RuleTagger();

  /// Adds or overrides entries from "word TAB pos [TAB lemma]" lines.
  /// Lines starting with '#' are comments.
  void load_lexicon(std::istream& in);

  std::vector<TaggedToken> tag(std::span<const std::string> tokens) const override;

  TaggedToken tag_word(std::string_view token) const;
  std::size_t lexicon_size() const noexcept { return lexicon_.size(); }

 private:
  struct Entry {
    Pos pos;
    std::string lemma;  // empty: derive
  };
  std::string noun_lemma(const std::string& folded) const;

  std::map<std::string, Entry, std::less<>> lexicon_;
};

/// The built-in word list in lexicon file format.
std::string_view default_lexicon();

/// One document of externally tagged tokens.
struct PretaggedDocument {
  std::optional<std::string> id;  ///< from an optional "#doc <id>" line
  std::vector<TaggedToken> tokens;
  std::optional<std::string> error;  ///< set when a line could not be read
  std::size_t first_line = 0;
};

/// Reads "surface TAB pos TAB lemma" lines, blank line between documents.
/// A lemma of "<unknown>" or "-" falls back to the lowercased surface.
std::vector<PretaggedDocument> read_pretagged(std::istream& in);

}  // namespace evotopic::termmine
