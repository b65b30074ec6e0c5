#ifndef FUZZLINT_CORE_DETECT_HPP
#define FUZZLINT_CORE_DETECT_HPP

#include <string>
#include <vector>

#include "text.hpp"

namespace fuzzlint {

struct ContextWord {
  std::string lemma;
  Pos pos = Pos::noun;

  bool operator==(const ContextWord&) const = default;
};

/// Word context of one fuzzy occurrence: the head it attaches to plus up to
/// context_size nearby content words.  head is empty when no candidate head
/// exists in the sentence (a degenerate context).
struct Context {
  std::string item_lemma;
  std::string head;
  bool degenerate = false;
  std::vector<ContextWord> additional;

  bool operator==(const Context&) const = default;
};

struct Alert {
  std::string id;
  std::string doc_id;
  int sentence_index = 0;
  TokenSpan span;
  size_t char_begin = 0;
  size_t char_end = 0;
  std::string item_lemma;
  FuzzyCategory category = FuzzyCategory::adjective;
  int severity = 1;
  Context context;
};

struct Deactivation {
  std::string id;
  bool global = false;
  std::string item_lemma;
  Context repr;  // representative context; unused for global entries
  int k = 2;
  int count = 0;
  int classes = 0;  // distinct context classes backing a global entry
  bool validated = false;
};

struct DeactivationSet {
  std::vector<Deactivation> entries;

  const Deactivation* find(const std::string& id) const;
};

Context extract_context(const Sentence& s, TokenSpan span, const FuzzyItem& item,
                        const Lexicon& lex, int context_size);

/// True when the item lemmas agree, the heads agree (identity or synonym)
/// and at least min(k, |a|, |b|) additional words overlap as a multiset
/// under synonym canonicalization.  Symmetric.
bool context_match(const Context& a, const Context& b, int k, const SynonymTable& syn);

struct DetectParams {
  int context_match_k = 2;
  int context_size = 4;
};

std::vector<Alert> detect_sentences(const std::vector<Sentence>& sentences, const Lexicon& lex,
                                    const DeactivationSet& deact, const SynonymTable& syn,
                                    const DetectParams& p);

std::vector<Alert> detect(const std::string& doc_id, const std::string& text, const Lexicon& lex,
                          const DeactivationSet& deact, const SynonymTable& syn,
                          const DetectParams& p);

/// Original text with every alerted span wrapped in
/// <fuzzy id=N sev=S>...</fuzzy>.  Whitespace is preserved byte for byte.
std::string annotate(const std::string& text, const std::vector<Alert>& alerts);

}  // namespace fuzzlint

#endif
