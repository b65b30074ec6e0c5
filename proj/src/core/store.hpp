#ifndef FUZZLINT_CORE_STORE_HPP
#define FUZZLINT_CORE_STORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detect.hpp"
#include "pattern.hpp"
#include "text.hpp"

namespace fuzzlint {

enum class EditOp { keep, substitute, del, insert };

struct AlignStep {
  EditOp op = EditOp::keep;
  // Indices into the original (a) and corrected (b) sequences; SIZE_MAX
  // when the side takes no part in the step.
  size_t a = SIZE_MAX;
  size_t b = SIZE_MAX;

  bool operator==(const AlignStep&) const = default;
};

struct Alignment {
  std::vector<AlignStep> steps;
  int cost = 0;
};

/// Minimum-cost edit script under unit costs.  Reconstruction is canonical:
/// keeps win over substitutions, then deletions, then insertions, walking
/// from the front so equal-cost scripts resolve the same way every time.
Alignment align(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct ClassifyParams {
  double case2_content_ratio = 0.25;
  double case4_edit_ratio = 0.25;
};

/// Outcome classes for one alerted occurrence:
///   1 untouched   2 quantified (vague term replaced by measurable data)
///   3 erased      4 locally reformulated   5 sentence rewritten
struct ClassifyOutcome {
  int case_ = 1;
  Alignment alignment;
  TokenSpan revised;  // corrected-side span; empty span marks a pure deletion point
  bool has_corrected = false;
};

ClassifyOutcome classify(const std::vector<Token>& original, const std::vector<Token>* corrected,
                         TokenSpan item_span, const Lexicon& lex, const ClassifyParams& p);

struct CorrectionRecord {
  std::string id;  // r<N>
  int64_t seq = 0;
  std::string item_lemma;
  FuzzyCategory category = FuzzyCategory::adjective;
  int severity = 1;
  int case_ = 1;
  std::string writer;
  Context context;
  TaggedFragment original;  // fuzzy-tagged occurrence
  bool has_corrected = false;
  TaggedFragment corrected;  // revised-tagged rewrite

  bool operator==(const CorrectionRecord&) const = default;
};

/// A quantity expression mined from text the writer left alone.
struct CorrectRealization {
  std::string id;  // m<N>
  int64_t seq = 0;
  Context context;  // item_lemma stays empty
  std::string text;
  int count = 1;

  bool operator==(const CorrectRealization&) const = default;
};

struct ValidationEvent {
  std::string deactivation_id;
  int64_t seq = 0;

  bool operator==(const ValidationEvent&) const = default;
};

class MemoryStore {
 public:
  std::vector<CorrectionRecord> records;
  std::vector<CorrectRealization> realizations;
  std::vector<ValidationEvent> validations;
  std::string config_hash;

  int64_t next_seq() { return ++seq_; }
  int next_record_id() { return ++record_id_; }
  int next_realization_id() { return ++realization_id_; }

  /// Canonical text form; identical stores serialize identically.  The
  /// header write time is zeroed when `stable` is set.
  std::string serialize(bool stable) const;
  static MemoryStore parse(const std::string& text);

  void refresh_counters();

 private:
  int64_t seq_ = 0;
  int record_id_ = 0;
  int realization_id_ = 0;
};

struct RecommendationEntry {
  std::string pattern_id;
  std::string item_lemma;
  Context repr;  // representative context of the class
  SlotType slot = SlotType::value;
  std::string text;
  int freq = 0;
  int64_t last_seq = 0;
  std::vector<std::string> sources;

  bool operator==(const RecommendationEntry&) const = default;
};

struct RawCorrectionEntry {
  std::string item_lemma;
  Context repr;
  std::string text;  // empty = the writers deleted the occurrence outright
  int freq = 0;
  int64_t last_seq = 0;
  std::vector<std::string> sources;

  bool operator==(const RawCorrectionEntry&) const = default;
};

struct DerivedTables {
  DeactivationSet deactivations;
  std::vector<RecommendationEntry> recommendations;
  std::vector<RawCorrectionEntry> raw;

  std::string serialize(const std::string& config_hash, bool stable) const;
  static DerivedTables parse(const std::string& text);

  /// Number of elements that differ from `old` (adds, removes, flips).
  int diff_count(const DerivedTables& old) const;
};

struct InduceParams {
  int deactivation_threshold = 5;
  int global_threshold = 15;
  int context_match_k = 2;
};

/// Rebuilds every derived table from the stored events.  Validated flags
/// carry over from validation events, so the result only depends on the
/// store contents, never on the previous tables.
DerivedTables induce(const MemoryStore& store, const Lexicon& lex, const SynonymTable& syn,
                     const Catalog& catalog, const InduceParams& p);

struct LearnParams {
  DetectParams detect;
  ClassifyParams classify;
};

struct LearnStats {
  int alerts = 0;
  int corrected = 0;
  int uncorrected = 0;
  std::vector<std::string> record_ids;
};

LearnStats learn(const std::string& doc_id, const std::string& original_text,
                 const std::string& corrected_text, const std::string& writer, MemoryStore& store,
                 const Lexicon& lex, const SynonymTable& syn, const DeactivationSet& deact,
                 const LearnParams& p);

struct MineStats {
  int sentences = 0;
  int skipped = 0;  // sentences with live alerts
  int found = 0;
  int fresh = 0;
};

MineStats mine_correct(const std::string& doc_id, const std::string& text, MemoryStore& store,
                       const Lexicon& lex, const SynonymTable& syn, const DeactivationSet& deact,
                       const DetectParams& p);

struct FillerChoice {
  std::string text;
  int freq = 0;
  int64_t last_seq = 0;
  std::vector<std::string> sources;
};

struct Suggestion {
  std::string alert_id;  // "-" for sentence-level rewrites with no alert
  std::string pattern_id;
  bool has_slot = false;
  SlotType slot = SlotType::value;
  std::string text;
  std::vector<FillerChoice> fillers;
};

/// Frequency-ranked: count desc, then recency desc, then text.
void rank_fillers(std::vector<FillerChoice>& fillers);

std::vector<Suggestion> suggest_for_alert(const Alert& alert, const Sentence& s,
                                          const MemoryStore& store, const DerivedTables& derived,
                                          const Catalog& catalog, const Lexicon& lex,
                                          const SynonymTable& syn, int k);

std::vector<Suggestion> suggest_for_sentence(const Sentence& s, const Catalog& catalog,
                                             const Lexicon& lex);

}  // namespace fuzzlint

#endif
