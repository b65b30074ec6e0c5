#ifndef FUZZLINT_CORE_LEXICON_HPP
#define FUZZLINT_CORE_LEXICON_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fuzzlint {

enum class FuzzyCategory {
  manner_adverb,
  temporal_location_adverb,
  determiner,
  preposition,
  verb_modal,
  adjective,
  noun,
};

const char* to_string(FuzzyCategory c);
std::optional<FuzzyCategory> fuzzy_category_from(const std::string& s);

enum class Pos { noun, adjective, verb, adverb, determiner, preposition, number, other };

const char* to_string(Pos p);
std::optional<Pos> pos_from(const std::string& s);

/// A vague term the detector alerts on.  Multiword lemmas ("a few") are
/// space separated; severity runs 1..3 with 3 the most severe.
struct FuzzyItem {
  std::string lemma;
  std::vector<std::string> lemma_tokens;
  FuzzyCategory category = FuzzyCategory::adjective;
  int severity = 1;
  std::vector<std::string> variants;
  std::vector<std::string> features;

  bool operator==(const FuzzyItem&) const = default;
};

struct WordEntry {
  std::string lemma;
  Pos pos = Pos::noun;
  std::vector<std::string> features;

  bool has_feature(const std::string& f) const;
  bool operator==(const WordEntry&) const = default;
};

/// Synonym sets; lemmas are equal under `same` when identical or listed in
/// one set.  Sets must be disjoint.
class SynonymTable {
 public:
  static SynonymTable load_file(const std::string& path);

  bool same(const std::string& a, const std::string& b) const;
  const std::string& canon(const std::string& lemma) const;
  size_t set_count() const { return sets_; }

 private:
  std::unordered_map<std::string, std::string> canon_;
  size_t sets_ = 0;
};

/// One detection phrase: lemma or variant word sequence for one item.
struct Phrase {
  std::vector<std::string> words;
  size_t item_index = 0;
};

class Lexicon {
 public:
  /// Any of the three paths may be empty to skip that resource.
  static Lexicon load(const std::string& lexicon_path, const std::string& words_path,
                      const std::string& stopwords_path);
  static Lexicon from_strings(const std::string& lexicon_tsv, const std::string& words_tsv,
                              const std::string& stopwords, const std::string& origin);

  const std::vector<FuzzyItem>& items() const { return items_; }

  /// Case-insensitive; falls back to suffix-strip lemmatization.  The
  /// variant table wins over the suffix rules.
  const FuzzyItem* lookup_fuzzy(const std::string& surface) const;

  /// All category rows for a token.  Stopwords categorize to nothing;
  /// unknown content words default to a bare noun entry.
  std::vector<WordEntry> categorize(const std::string& token_text) const;

  bool is_stopword(const std::string& token_text) const;
  bool is_unit_noun(const std::string& lemma) const;

  /// Variant-table override first, then the suffix rules.
  std::string lemma_of(const std::string& surface) const;

  /// Detection phrases whose first word is `word`, longest first.
  const std::vector<Phrase>* phrases_starting(const std::string& word) const;

  void save(const std::string& path) const;
  std::string serialize_items() const;

  bool operator==(const Lexicon& other) const { return items_ == other.items_; }

 private:
  void index();

  std::vector<FuzzyItem> items_;
  std::unordered_map<std::string, size_t> by_lemma_;
  std::unordered_map<std::string, size_t> by_variant_;
  std::unordered_map<std::string, std::vector<Phrase>> by_first_;
  std::unordered_map<std::string, std::vector<WordEntry>> words_;
  std::unordered_set<std::string> stopwords_;
};

}  // namespace fuzzlint

#endif
