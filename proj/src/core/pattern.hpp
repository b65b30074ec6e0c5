#ifndef FUZZLINT_CORE_PATTERN_HPP
#define FUZZLINT_CORE_PATTERN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detect.hpp"
#include "text.hpp"

namespace fuzzlint {

enum class SlotType { value, interval, time, time_interval, distance, warning, paraphrase };

const char* to_string(SlotType t);
std::optional<SlotType> slot_type_from(const std::string& s);

/// One left-hand-side element of a correction pattern.
struct PatternElem {
  enum class Kind {
    literal,   // fixed word, matched on lemma or lowered surface
    item,      // the fuzzy occurrence the pattern rewrites
    cat_var,   // named single word or noun run with class constraints
    gap,       // named run of min..max arbitrary tokens
    purpose,   // named purpose connective ("in order to", "so as to", ...)
    boundary,  // sentence end; only trailing punctuation may remain
  };
  Kind kind = Kind::literal;
  std::string text;  // literal word
  std::string name;  // variable name for cat_var/gap/purpose
  Pos pos = Pos::other;
  bool any_pos = false;
  std::vector<std::string> features;
  int gap_min = 0;
  int gap_max = 0;
};

struct RhsElem {
  enum class Kind { literal, copy, slot };
  Kind kind = Kind::literal;
  std::string text;  // literal word
  std::string var;   // copy source ("item" for the occurrence itself)
  SlotType slot = SlotType::value;
};

struct CorrectionPattern {
  std::string id;
  // Applicability: explicit lemmas, a whole category, or sentence level
  // when the left side has no item anchor at all.
  std::vector<std::string> item_lemmas;
  std::optional<FuzzyCategory> item_category;
  bool sentence_level = false;
  std::vector<PatternElem> lhs;
  std::vector<RhsElem> rhs;

  bool applies_to(const std::string& lemma, FuzzyCategory cat) const;
  bool has_slot() const;
  SlotType first_slot() const;
  /// Higher wins when several patterns match the same occurrence.
  int specificity() const;
  std::string source_line() const;
};

struct MatchBinding {
  bool matched = false;
  size_t begin = 0;  // sentence token span the pattern consumes
  size_t end = 0;
  std::map<std::string, TokenSpan> vars;
  TokenSpan item;
};

class Catalog {
 public:
  static Catalog builtins();

  /// Parses pattern lines; `origin` names the source in errors.  Later
  /// definitions override earlier ones by id and leave a warning.
  void merge_text(const std::string& text, const std::string& origin);
  void merge_file(const std::string& path);

  const std::vector<CorrectionPattern>& patterns() const { return patterns_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Patterns for one occurrence, most specific first.
  std::vector<const CorrectionPattern*> applicable(const std::string& lemma,
                                                   FuzzyCategory cat) const;
  std::vector<const CorrectionPattern*> sentence_patterns() const;

  /// Flags pattern pairs that both match some occurrence in `docs` with
  /// equal specificity.  Returns human-readable warnings.
  std::vector<std::string> overlap_warnings(const std::vector<Sentence>& docs,
                                            const Lexicon& lex) const;

 private:
  std::vector<CorrectionPattern> patterns_;
  std::vector<std::string> warnings_;
};

CorrectionPattern parse_pattern_line(const std::string& line, const std::string& origin,
                                     int line_no);

/// Matches `p` against the sentence around the fuzzy occurrence at `item`.
MatchBinding match_pattern(const CorrectionPattern& p, const Sentence& s, TokenSpan item,
                           const Lexicon& lex);

/// Matches a sentence-level pattern anywhere in the sentence.
MatchBinding match_sentence_pattern(const CorrectionPattern& p, const Sentence& s,
                                    const Lexicon& lex);

struct AppliedPattern {
  std::vector<std::string> tokens;
  TokenSpan revised;  // span of the rewritten region within tokens
};

/// Rewrites the matched region.  Slots take their filler text when present
/// in `fillers`, otherwise a visible placeholder.
AppliedPattern apply_pattern(const CorrectionPattern& p, const Sentence& s,
                             const MatchBinding& m,
                             const std::map<SlotType, std::string>& fillers);

/// Tokens joined by spaces, except no space before closing punctuation.
std::string render_plain(const std::vector<std::string>& tokens);

/// True when `text` can fill a slot of type `t`: plain numbers for value,
/// a time unit somewhere for time slots, a distance unit for distance.
/// warning and paraphrase slots never take mined quantity text.
bool slot_accepts(SlotType t, const std::string& text, const Lexicon& lex);

}  // namespace fuzzlint

#endif
