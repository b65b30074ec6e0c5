#ifndef FUZZLINT_CORE_TEXT_HPP
#define FUZZLINT_CORE_TEXT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexicon.hpp"

namespace fuzzlint {

struct Token {
  std::string surface;
  std::string lemma;
  size_t offset = 0;  // byte offset into the source document
  int line = 1;       // 1-based source line

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string doc_id;
  int index = 0;
};

struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
  bool overlaps(const TokenSpan& o) const { return begin < o.end && o.begin < end; }
  bool contains(size_t i) const { return i >= begin && i < end; }
};

/// A span that excludes nothing.
inline TokenSpan no_span() { return TokenSpan{SIZE_MAX, SIZE_MAX}; }

/// Lowercases and strips inflectional suffixes.  The rules iterate until
/// nothing changes, so the result is a fixed point: lemmatize(lemmatize(x))
/// == lemmatize(x) for every input.
std::string lemmatize(const std::string& surface);

/// Splits a document into sentences of tokens.  Sentences end at '.', '!',
/// '?' or a newline.  Words keep internal hyphens ("plug-in"), digit
/// separators ("2.5") and a trailing percent sign ("65%"); everything else
/// that is not whitespace becomes a single-character punctuation token.
std::vector<Sentence> tokenize(const std::string& text, const std::string& doc_id = "");

bool is_punct_token(const std::string& surface);

/// One context-bearing word group in a sentence.  Adjacent noun-category
/// tokens collapse into a compound unit; everything else is a singleton
/// carrying all of its category rows.
struct ContextUnit {
  std::string lemma;  // space-joined for compounds
  size_t begin = 0;   // token span [begin, end)
  size_t end = 0;
  bool compound = false;
  std::vector<WordEntry> entries;

  bool has_pos(Pos p) const;
  bool is_verb_with(const std::string& feature) const;
  /// Nouns, adjectives and action verbs can appear as context words.
  bool eligible_context_word() const;
  Pos display_pos() const;
};

std::vector<ContextUnit> group_compounds(const Sentence& s, const Lexicon& lex,
                                         TokenSpan exclude = no_span());

enum class TagKind { fuzzy, revised };

/// A token sequence with at most one tagged region per tag kind, e.g.
/// "heat the probe <revised>over a 2 to 4 mns period</revised> ."
/// Tags glue to the adjacent token in the canonical rendering.
struct TaggedFragment {
  struct Elem {
    enum class Type { token, open, close };
    Type type = Type::token;
    std::string text;  // token surface; empty for tags
    TagKind tag = TagKind::fuzzy;

    bool operator==(const Elem&) const = default;
  };

  std::vector<Elem> elems;

  bool operator==(const TaggedFragment&) const = default;

  std::vector<std::string> tokens() const;
  /// Token index span [begin, end) of the region tagged `kind`, if present.
  std::optional<std::pair<size_t, size_t>> region(TagKind kind) const;
};

TaggedFragment parse_tagged(const std::string& text);
std::string render_tagged(const TaggedFragment& f);
TaggedFragment make_tagged(const std::vector<std::string>& tokens, size_t begin, size_t end,
                           TagKind kind);

}  // namespace fuzzlint

#endif
