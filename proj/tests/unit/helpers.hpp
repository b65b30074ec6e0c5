#ifndef FUZZLINT_TESTS_HELPERS_HPP
#define FUZZLINT_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "core/lexicon.hpp"
#include "core/text.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(FUZZLINT_DATA_DIR) + "/" + name;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(FUZZLINT_FIXTURE_DIR) + "/" + name;
}

// The shipped resources, loaded once for the whole test binary.
inline const fuzzlint::Lexicon& lex() {
  static fuzzlint::Lexicon l = fuzzlint::Lexicon::load(
      data_path("fuzzy_lexicon.tsv"), data_path("word_categories.tsv"), data_path("stopwords.txt"));
  return l;
}

inline const fuzzlint::SynonymTable& no_synonyms() {
  static fuzzlint::SynonymTable t;
  return t;
}

inline fuzzlint::Sentence sent(const std::string& text) {
  auto ss = fuzzlint::tokenize(text);
  return ss.empty() ? fuzzlint::Sentence{} : ss.front();
}

inline std::vector<std::string> surfaces(const fuzzlint::Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.surface);
  return out;
}

inline std::vector<std::string> lemmas(const fuzzlint::Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.lemma);
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Fresh directory under the system temp root, unique per call.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    dir_ = std::filesystem::temp_directory_path() /
           ("fuzzlint-test-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace testutil

#endif
