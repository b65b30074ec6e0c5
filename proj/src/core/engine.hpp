#ifndef FUZZLINT_CORE_ENGINE_HPP
#define FUZZLINT_CORE_ENGINE_HPP

#include <string>
#include <vector>

#include "lexicon.hpp"
#include "pattern.hpp"
#include "store.hpp"

namespace fuzzlint {

struct Config {
  int deactivation_threshold = 5;
  int global_threshold = 15;
  int context_match_k = 2;
  int context_size = 4;
  double case2_content_ratio = 0.25;
  double case4_edit_ratio = 0.25;

  std::string lexicon_path;
  std::string words_path;
  std::string stopwords_path;
  std::string synonyms_path;
  std::string patterns_path;
  std::string store_path;
  bool stable_output = false;

  /// Throws InputError for unknown keys or unusable values.
  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);

  /// Hash over the knobs that change behavior; file locations and output
  /// style stay out so moving resources never invalidates a store.
  std::string behavior_hash() const;

  DetectParams detect_params() const;
  ClassifyParams classify_params() const;
  InduceParams induce_params() const;
};

/// Owns every loaded resource plus the memory store and serves the
/// operations the command line exposes.  Opening read-write takes an
/// advisory lock next to the store file.
class Engine {
 public:
  Engine(const Config& cfg, bool writable);
  ~Engine();

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  struct DetectOutput {
    std::string annotated;
    std::string report;
    int alerts = 0;
    int at_or_above = 0;
    int max_severity = 0;
  };
  DetectOutput run_detect(const std::string& doc_id, const std::string& text, int min_severity);

  std::string run_learn(const std::string& doc_id, const std::string& original,
                        const std::string& corrected, const std::string& writer);
  std::string run_mine(const std::string& doc_id, const std::string& text);
  std::string run_induce();
  std::string run_suggest(const std::string& doc_id, const std::string& text);
  std::string run_validate(const std::string& deactivation_id);
  std::string run_report(const std::vector<std::pair<std::string, std::string>>& docs);

  /// Persists the store and the derived tables, atomically, if dirty.
  void save();

  const Config& config() const { return cfg_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const Lexicon& lexicon() const { return lex_; }
  MemoryStore& store() { return store_; }
  DerivedTables& derived() { return derived_; }
  const Catalog& catalog() const { return catalog_; }

 private:
  std::string derived_path() const;

  Config cfg_;
  Lexicon lex_;
  SynonymTable syn_;
  Catalog catalog_;
  MemoryStore store_;
  DerivedTables derived_;
  std::vector<std::string> warnings_;
  bool writable_ = false;
  bool store_dirty_ = false;
  bool derived_dirty_ = false;
  int lock_fd_ = -1;
};

}  // namespace fuzzlint

#endif
