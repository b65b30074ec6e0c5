#include "text.hpp"

#include <algorithm>
#include <cctype>

#include "util.hpp"

namespace fuzzlint {

namespace {

bool ends_with(const std::string& s, const char* suf) {
  size_t n = std::char_traits<char>::length(suf);
  return s.size() >= n && s.compare(s.size() - n, n, suf) == 0;
}

// After stripping -ing/-ed these stem endings get their silent 'e' back:
// clos+e, reduc+e, mov+e, arriv+e, minimiz+e, measur+e, chang+e, evalu+ate...
const char* const kRestoreE[] = {"os", "eas", "uc",  "ov",  "iv", "iz",
                                 "ur", "ang", "uat", "rat", "ac"};

std::string restore_e(std::string stem) {
  for (const char* suf : kRestoreE) {
    if (ends_with(stem, suf)) {
      stem.push_back('e');
      return stem;
    }
  }
  return stem;
}

bool sibilant_before_es(const std::string& s) {
  // s ends with "es"; accept only x/ch/sh/ss/zz stems so "boxes" strips
  // here while "minimizes" falls through to the plain -s rule.
  return ends_with(s, "xes") || ends_with(s, "ches") || ends_with(s, "shes") ||
         ends_with(s, "sses") || ends_with(s, "zzes");
}

std::string strip_once(const std::string& s) {
  size_t n = s.size();
  if (n > 4 && ends_with(s, "ies")) return s.substr(0, n - 3) + "y";
  if (n > 4 && ends_with(s, "es") && sibilant_before_es(s)) return s.substr(0, n - 2);
  if (n > 3 && ends_with(s, "s") && !ends_with(s, "ss") && !ends_with(s, "us") &&
      !ends_with(s, "is")) {
    return s.substr(0, n - 1);
  }
  if (n > 5 && ends_with(s, "ing")) return restore_e(s.substr(0, n - 3));
  if (n > 5 && ends_with(s, "ed")) return restore_e(s.substr(0, n - 2));
  return s;
}

}  // namespace

std::string lemmatize(const std::string& surface) {
  std::string s = to_lower(surface);
  for (;;) {
    std::string t = strip_once(s);
    if (t == s) return s;
    s = std::move(t);
  }
}

bool is_punct_token(const std::string& surface) {
  for (unsigned char c : surface) {
    if (is_word_byte(c)) return false;
  }
  return !surface.empty();
}

std::vector<Sentence> tokenize(const std::string& text, const std::string& doc_id) {
  std::vector<Sentence> sentences;
  std::vector<Token> cur;
  int line = 1;

  auto flush = [&] {
    if (cur.empty()) return;
    Sentence s;
    s.tokens = std::move(cur);
    s.doc_id = doc_id;
    s.index = static_cast<int>(sentences.size());
    sentences.push_back(std::move(s));
    cur.clear();
  };

  size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      flush();
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (is_word_byte(c)) {
      size_t j = i;
      while (j < n) {
        unsigned char b = static_cast<unsigned char>(text[j]);
        if (is_word_byte(b)) {
          ++j;
          continue;
        }
        unsigned char prev = static_cast<unsigned char>(text[j - 1]);
        unsigned char next = j + 1 < n ? static_cast<unsigned char>(text[j + 1]) : 0;
        if (b == '-' && is_word_byte(prev) && is_word_byte(next)) {
          ++j;
          continue;
        }
        if ((b == '.' || b == ',') && std::isdigit(prev) && std::isdigit(next)) {
          ++j;
          continue;
        }
        if (b == '%' && std::isdigit(prev)) {
          ++j;  // "65%" stays one token; the sign always ends it
          break;
        }
        break;
      }
      std::string surface = text.substr(i, j - i);
      cur.push_back(Token{surface, lemmatize(surface), i, line});
      i = j;
      continue;
    }
    std::string surface(1, static_cast<char>(c));
    cur.push_back(Token{surface, surface, i, line});
    ++i;
    if (c == '.' || c == '!' || c == '?') flush();
  }
  flush();
  return sentences;
}

bool ContextUnit::has_pos(Pos p) const {
  for (const auto& e : entries) {
    if (e.pos == p) return true;
  }
  return false;
}

bool ContextUnit::is_verb_with(const std::string& feature) const {
  for (const auto& e : entries) {
    if (e.pos == Pos::verb && e.has_feature(feature)) return true;
  }
  return false;
}

bool ContextUnit::eligible_context_word() const {
  return has_pos(Pos::noun) || has_pos(Pos::adjective) || is_verb_with("action");
}

Pos ContextUnit::display_pos() const {
  if (has_pos(Pos::noun)) return Pos::noun;
  if (has_pos(Pos::adjective)) return Pos::adjective;
  if (has_pos(Pos::verb)) return Pos::verb;
  return entries.empty() ? Pos::other : entries.front().pos;
}

std::vector<ContextUnit> group_compounds(const Sentence& s, const Lexicon& lex,
                                         TokenSpan exclude) {
  std::vector<ContextUnit> units;
  size_t n = s.tokens.size();
  size_t i = 0;
  while (i < n) {
    if (exclude.contains(i)) {
      ++i;
      continue;
    }
    const Token& t = s.tokens[i];
    // Bare numerals are quantity material, not content words.
    if (is_punct_token(t.surface) || lex.is_stopword(t.surface) || is_numeral(t.lemma)) {
      ++i;
      continue;
    }
    auto entries = lex.categorize(t.surface);
    bool noun_here = false;
    for (const auto& e : entries) noun_here |= e.pos == Pos::noun;
    if (noun_here) {
      size_t j = i + 1;
      std::vector<std::string> lemmas{lex.lemma_of(t.surface)};
      while (j < n && !exclude.contains(j)) {
        const Token& u = s.tokens[j];
        if (is_punct_token(u.surface) || lex.is_stopword(u.surface) || is_numeral(u.lemma)) break;
        auto ue = lex.categorize(u.surface);
        bool noun_next = false;
        for (const auto& e : ue) noun_next |= e.pos == Pos::noun;
        if (!noun_next) break;
        lemmas.push_back(lex.lemma_of(u.surface));
        ++j;
      }
      if (j - i >= 2) {
        ContextUnit unit;
        unit.lemma = join(lemmas, " ");
        unit.begin = i;
        unit.end = j;
        unit.compound = true;
        unit.entries = {WordEntry{unit.lemma, Pos::noun, {}}};
        units.push_back(std::move(unit));
        i = j;
        continue;
      }
    }
    ContextUnit unit;
    unit.lemma = lex.lemma_of(t.surface);
    unit.begin = i;
    unit.end = i + 1;
    unit.entries = std::move(entries);
    units.push_back(std::move(unit));
    ++i;
  }
  return units;
}

std::vector<std::string> TaggedFragment::tokens() const {
  std::vector<std::string> out;
  for (const auto& e : elems) {
    if (e.type == Elem::Type::token) out.push_back(e.text);
  }
  return out;
}

std::optional<std::pair<size_t, size_t>> TaggedFragment::region(TagKind kind) const {
  size_t count = 0;
  std::optional<size_t> begin;
  for (const auto& e : elems) {
    if (e.type == Elem::Type::token) {
      ++count;
    } else if (e.tag == kind) {
      if (e.type == Elem::Type::open) {
        begin = count;
      } else if (begin) {
        return std::make_pair(*begin, count);
      }
    }
  }
  return std::nullopt;
}

namespace {

const char* open_tag(TagKind k) { return k == TagKind::fuzzy ? "<fuzzy>" : "<revised>"; }
const char* close_tag(TagKind k) { return k == TagKind::fuzzy ? "</fuzzy>" : "</revised>"; }

}  // namespace

std::string render_tagged(const TaggedFragment& f) {
  std::string out;
  bool glue_next = true;  // suppress the separator once after an open tag
  for (const auto& e : f.elems) {
    bool glue = glue_next || e.type == TaggedFragment::Elem::Type::close;
    if (!out.empty() && !glue) out.push_back(' ');
    glue_next = e.type == TaggedFragment::Elem::Type::open;
    switch (e.type) {
      case TaggedFragment::Elem::Type::token:
        out += e.text;
        break;
      case TaggedFragment::Elem::Type::open:
        out += open_tag(e.tag);
        break;
      case TaggedFragment::Elem::Type::close:
        out += close_tag(e.tag);
        break;
    }
  }
  return out;
}

TaggedFragment parse_tagged(const std::string& text) {
  TaggedFragment f;
  auto chunks = split_ws(text);
  for (const auto& chunk_in : chunks) {
    std::string chunk = chunk_in;
    std::vector<TaggedFragment::Elem> closes;
    for (;;) {
      if (chunk.rfind("<fuzzy>", 0) == 0) {
        f.elems.push_back({TaggedFragment::Elem::Type::open, "", TagKind::fuzzy});
        chunk.erase(0, 7);
      } else if (chunk.rfind("<revised>", 0) == 0) {
        f.elems.push_back({TaggedFragment::Elem::Type::open, "", TagKind::revised});
        chunk.erase(0, 9);
      } else {
        break;
      }
    }
    for (;;) {
      if (chunk.size() >= 8 && chunk.compare(chunk.size() - 8, 8, "</fuzzy>") == 0) {
        closes.push_back({TaggedFragment::Elem::Type::close, "", TagKind::fuzzy});
        chunk.erase(chunk.size() - 8);
      } else if (chunk.size() >= 10 && chunk.compare(chunk.size() - 10, 10, "</revised>") == 0) {
        closes.push_back({TaggedFragment::Elem::Type::close, "", TagKind::revised});
        chunk.erase(chunk.size() - 10);
      } else {
        break;
      }
    }
    if (chunk.find('<') != std::string::npos || chunk.find('>') != std::string::npos) {
      throw ParseError("unknown or malformed tag near \"" + chunk_in + "\"");
    }
    if (!chunk.empty()) {
      f.elems.push_back({TaggedFragment::Elem::Type::token, chunk, TagKind::fuzzy});
    }
    // Closes were peeled right to left; emit them left to right.
    for (auto it = closes.rbegin(); it != closes.rend(); ++it) f.elems.push_back(*it);
  }

  bool open[2] = {false, false};
  bool seen[2] = {false, false};
  for (const auto& e : f.elems) {
    if (e.type == TaggedFragment::Elem::Type::token) continue;
    int k = e.tag == TagKind::fuzzy ? 0 : 1;
    const char* name = e.tag == TagKind::fuzzy ? "fuzzy" : "revised";
    if (e.type == TaggedFragment::Elem::Type::open) {
      if (open[0] || open[1]) throw ParseError(std::string("nested tag <") + name + ">");
      if (seen[k]) throw ParseError(std::string("repeated tag <") + name + ">");
      open[k] = true;
      seen[k] = true;
    } else {
      if (!open[k]) throw ParseError(std::string("unbalanced closing tag </") + name + ">");
      open[k] = false;
    }
  }
  if (open[0]) throw ParseError("unclosed tag <fuzzy>");
  if (open[1]) throw ParseError("unclosed tag <revised>");
  return f;
}

TaggedFragment make_tagged(const std::vector<std::string>& tokens, size_t begin, size_t end,
                           TagKind kind) {
  TaggedFragment f;
  for (size_t i = 0; i <= tokens.size(); ++i) {
    if (i == begin) f.elems.push_back({TaggedFragment::Elem::Type::open, "", kind});
    if (i == end) f.elems.push_back({TaggedFragment::Elem::Type::close, "", kind});
    if (i < tokens.size()) {
      // Token elems ignore the tag field; keep it at the default so fragments
      // compare equal regardless of how they were built.
      f.elems.push_back({TaggedFragment::Elem::Type::token, tokens[i], TagKind::fuzzy});
    }
  }
  return f;
}

}  // namespace fuzzlint
