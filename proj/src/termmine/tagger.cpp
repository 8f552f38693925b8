#include "evotopic/termmine/tagger.hpp"

#include <array>
#include <sstream>

#include "evotopic/text.hpp"

namespace evotopic::termmine {

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::adjective: return "adjective";
    case Pos::other: return "other";
  }
  return "other";
}

Pos pos_from_tag(std::string_view tag) {
  const auto t = text::fold_case(text::trim(tag));
  if (t == "noun" || t == "n") return Pos::noun;
  if (t == "adjective" || t == "adj" || t == "a") return Pos::adjective;
  // Penn / TreeTagger: NN NNS NNP NNPS NP NPS, JJ JJR JJS
  if (t.rfind("nn", 0) == 0 || t == "np" || t == "nps") return Pos::noun;
  if (t.rfind("jj", 0) == 0) return Pos::adjective;
  return Pos::other;
}

namespace {

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || u >= 0x80;
}

bool is_digit_string(std::string_view s) {
  if (s.empty()) return false;
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != '%') {
      return false;
    }
  }
  return digit;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (is_word_byte(c)) {
      std::string word;
      while (i < n) {
        if (is_word_byte(text[i])) {
          word.push_back(text[i++]);
        } else if ((text[i] == '-' || text[i] == '\'') && i + 1 < n && is_word_byte(text[i + 1])) {
          // possessive 's splits off
          if (text[i] == '\'' && (text[i + 1] == 's' || text[i + 1] == 'S') &&
              (i + 2 == n || !is_word_byte(text[i + 2]))) {
            break;
          }
          word.push_back(text[i++]);
        } else {
          break;
        }
      }
      tokens.push_back(std::move(word));
      if (i < n && text[i] == '\'') {
        if (i + 1 < n && (text[i + 1] == 's' || text[i + 1] == 'S') &&
            (i + 2 == n || !is_word_byte(text[i + 2]))) {
          tokens.emplace_back(text.substr(i, 2));
          i += 2;
        } else {
          ++i;  // trailing apostrophe
        }
      }
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
    } else {
      tokens.emplace_back(1, c);
      ++i;
    }
  }
  return tokens;
}

// ---------------------------------------------------------------------------

RuleTagger::RuleTagger() {
  std::istringstream in{std::string(default_lexicon())};
  load_lexicon(in);
}

void RuleTagger::load_lexicon(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cols = text::split(t, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw InputError("lexicon line " + std::to_string(lineno) + ": expected word TAB pos [TAB lemma]");
    }
    Entry e{pos_from_tag(cols[1]), cols.size() == 3 ? text::fold_case(text::trim(cols[2])) : ""};
    lexicon_[text::fold_case(text::trim(cols[0]))] = std::move(e);
  }
}

std::string RuleTagger::noun_lemma(const std::string& w) const {
  if (w.size() <= 3 || w.back() != 's') return w;
  for (std::string_view keep : {"ss", "us", "is", "ics", "sis", "ous"}) {
    if (ends_with(w, keep)) return w;
  }
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view es : {"sses", "ches", "shes", "xes", "zes"}) {
    if (ends_with(w, es)) return w.substr(0, w.size() - 2);
  }
  std::string stem = w.substr(0, w.size() - 1);
  // "doses" -> "dose" unless the stem is a known word with another reading.
  auto it = lexicon_.find(stem);
  if (it != lexicon_.end() && !it->second.lemma.empty()) return it->second.lemma;
  return stem;
}

TaggedToken RuleTagger::tag_word(std::string_view token) const {
  TaggedToken out;
  out.surface = std::string(token);
  const std::string w = text::fold_case(token);

  if (w.empty() || !is_word_byte(w.front())) {
    out.lemma = w.empty() ? std::string("_") : w;
    out.pos = Pos::other;
    return out;
  }
  if (auto it = lexicon_.find(w); it != lexicon_.end()) {
    out.pos = it->second.pos;
    out.lemma = !it->second.lemma.empty() ? it->second.lemma
                : out.pos == Pos::noun    ? noun_lemma(w)
                                          : w;
    return out;
  }
  out.lemma = w;
  if (is_digit_string(w)) {
    out.pos = Pos::other;
    return out;
  }
  if (const auto dash = w.rfind('-'); dash != std::string::npos) {
    // "cs-137" names a nuclide; other compounds act as prenominal modifiers.
    out.pos = is_digit_string(std::string_view(w).substr(dash + 1)) ? Pos::noun : Pos::adjective;
    return out;
  }
  // Plural of a known word.
  if (w.size() > 3 && w.back() == 's') {
    const auto lemma = noun_lemma(w);
    if (lemma != w) {
      if (auto it = lexicon_.find(lemma); it != lexicon_.end() && it->second.pos == Pos::noun) {
        out.pos = Pos::noun;
        out.lemma = it->second.lemma.empty() ? lemma : it->second.lemma;
        return out;
      }
    }
  }
  static constexpr std::array<std::string_view, 12> adjective_suffixes = {
      "ical", "ic", "al", "ive", "ous", "ful", "less", "able", "ible", "ular", "ary", "ian"};
  for (auto suffix : adjective_suffixes) {
    if (w.size() > suffix.size() + 2 && ends_with(w, suffix)) {
      out.pos = Pos::adjective;
      return out;
    }
  }
  if (w.size() > 4 && (ends_with(w, "ly") || ends_with(w, "ing") || ends_with(w, "ed"))) {
    out.pos = Pos::other;
    return out;
  }
  out.pos = Pos::noun;
  out.lemma = noun_lemma(w);
  return out;
}

std::vector<TaggedToken> RuleTagger::tag(std::span<const std::string> tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(tag_word(t));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PretaggedDocument> read_pretagged(std::istream& in) {
  std::vector<PretaggedDocument> docs;
  PretaggedDocument current;
  bool open = false;
  auto flush = [&] {
    if (open) docs.push_back(std::move(current));
    current = PretaggedDocument{};
    open = false;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (!open) {
      open = true;
      current.first_line = lineno;
    }
    if (line.rfind("#doc", 0) == 0) {
      current.id = std::string(text::trim(std::string_view(line).substr(4)));
      continue;
    }
    if (current.error) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3 || cols[0].empty()) {
      current.error = "line " + std::to_string(lineno) + ": expected surface TAB pos TAB lemma";
      continue;
    }
    TaggedToken tok;
    tok.surface = cols[0];
    tok.pos = pos_from_tag(cols[1]);
    const auto lemma = text::trim(cols[2]);
    tok.lemma = (lemma.empty() || lemma == "<unknown>" || lemma == "-") ? text::fold_case(cols[0])
                                                                        : text::fold_case(lemma);
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return docs;
}

}  // namespace evotopic::termmine
