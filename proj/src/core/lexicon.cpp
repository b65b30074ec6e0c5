#include "lexicon.hpp"

#include <algorithm>

#include "text.hpp"
#include "util.hpp"

namespace fuzzlint {

namespace {

const char* const kCategoryNames[] = {
    "manner_adverb", "temporal_location_adverb", "determiner", "preposition",
    "verb_modal",    "adjective",                "noun",
};

const char* const kPosNames[] = {
    "noun", "adjective", "verb", "adverb", "determiner", "preposition", "number", "other",
};

const char* const kWordFeatures[] = {"action", "durative", "location", "unit", "quantity"};

struct LineReader {
  std::string origin;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": " + msg);
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : split(s, ',')) {
    std::string t = trim(part);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

const char* to_string(FuzzyCategory c) { return kCategoryNames[static_cast<int>(c)]; }

std::optional<FuzzyCategory> fuzzy_category_from(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kCategoryNames[i]) return static_cast<FuzzyCategory>(i);
  }
  return std::nullopt;
}

const char* to_string(Pos p) { return kPosNames[static_cast<int>(p)]; }

std::optional<Pos> pos_from(const std::string& s) {
  for (int i = 0; i < 8; ++i) {
    if (s == kPosNames[i]) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

bool WordEntry::has_feature(const std::string& f) const {
  return std::find(features.begin(), features.end(), f) != features.end();
}

SynonymTable SynonymTable::load_file(const std::string& path) {
  SynonymTable t;
  if (path.empty()) return t;
  std::string data = read_file(path);
  LineReader rd{path, 0};
  for (auto& raw : split(data, '\n')) {
    ++rd.line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto members = split_list(line);
    if (members.size() < 2) rd.fail("a synonym set needs at least two members");
    ++t.sets_;
    const std::string canon = to_lower(members.front());
    for (auto& m : members) {
      std::string key = to_lower(m);
      auto [it, fresh] = t.canon_.emplace(key, canon);
      if (!fresh) rd.fail("\"" + key + "\" appears in more than one synonym set");
    }
  }
  return t;
}

bool SynonymTable::same(const std::string& a, const std::string& b) const {
  return a == b || canon(a) == canon(b);
}

const std::string& SynonymTable::canon(const std::string& lemma) const {
  auto it = canon_.find(lemma);
  return it == canon_.end() ? lemma : it->second;
}

Lexicon Lexicon::load(const std::string& lexicon_path, const std::string& words_path,
                      const std::string& stopwords_path) {
  return from_strings(lexicon_path.empty() ? "" : read_file(lexicon_path),
                      words_path.empty() ? "" : read_file(words_path),
                      stopwords_path.empty() ? "" : read_file(stopwords_path),
                      lexicon_path.empty() ? "lexicon" : lexicon_path);
}

Lexicon Lexicon::from_strings(const std::string& lexicon_tsv, const std::string& words_tsv,
                              const std::string& stopwords, const std::string& origin) {
  Lexicon lex;

  LineReader rd{origin, 0};
  for (auto& raw : split(lexicon_tsv, '\n')) {
    ++rd.line_no;
    if (trim(raw).empty() || trim(raw)[0] == '#') continue;
    auto cols = split(raw, '\t');
    if (cols.size() < 3 || cols.size() > 5) {
      rd.fail("expected 3 to 5 tab-separated columns, got " + std::to_string(cols.size()));
    }
    FuzzyItem item;
    item.lemma = to_lower(trim(cols[0]));
    if (item.lemma.empty()) rd.fail("empty lemma");
    item.lemma_tokens = split_ws(item.lemma);
    auto cat = fuzzy_category_from(trim(cols[1]));
    if (!cat) rd.fail("unknown category \"" + trim(cols[1]) + "\"");
    item.category = *cat;
    try {
      item.severity = std::stoi(trim(cols[2]));
    } catch (...) {
      rd.fail("severity must be a number, got \"" + trim(cols[2]) + "\"");
    }
    if (item.severity < 1 || item.severity > 3) {
      rd.fail("severity out of range 1..3: " + std::to_string(item.severity));
    }
    if (cols.size() > 3) {
      for (auto& v : split_list(cols[3])) item.variants.push_back(to_lower(v));
    }
    if (cols.size() > 4) item.features = split_list(cols[4]);
    for (const auto& other : lex.items_) {
      if (other.lemma == item.lemma && other.category == item.category) {
        rd.fail("duplicate entry for \"" + item.lemma + "\" / " + to_string(item.category));
      }
    }
    lex.items_.push_back(std::move(item));
  }

  rd = LineReader{origin + " (words)", 0};
  for (auto& raw : split(words_tsv, '\n')) {
    ++rd.line_no;
    if (trim(raw).empty() || trim(raw)[0] == '#') continue;
    auto cols = split(raw, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      rd.fail("expected 2 or 3 tab-separated columns, got " + std::to_string(cols.size()));
    }
    WordEntry e;
    e.lemma = to_lower(trim(cols[0]));
    if (e.lemma.empty()) rd.fail("empty lemma");
    auto pos = pos_from(trim(cols[1]));
    if (!pos || *pos == Pos::number) rd.fail("unknown word class \"" + trim(cols[1]) + "\"");
    e.pos = *pos;
    if (cols.size() > 2) e.features = split_list(cols[2]);
    for (const auto& f : e.features) {
      bool known = std::find(std::begin(kWordFeatures), std::end(kWordFeatures), f) !=
                   std::end(kWordFeatures);
      if (!known) rd.fail("unknown feature \"" + f + "\"");
      bool verb_f = f == "action" || f == "durative";
      if (verb_f && e.pos != Pos::verb) rd.fail("feature \"" + f + "\" only fits verbs");
      if (!verb_f && e.pos != Pos::noun) rd.fail("feature \"" + f + "\" only fits nouns");
    }
    auto& rows = lex.words_[e.lemma];
    for (const auto& prev : rows) {
      if (prev.pos == e.pos) rd.fail("duplicate row for \"" + e.lemma + "\" / " + to_string(e.pos));
    }
    rows.push_back(std::move(e));
  }

  rd = LineReader{origin + " (stopwords)", 0};
  for (auto& raw : split(stopwords, '\n')) {
    ++rd.line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    lex.stopwords_.insert(to_lower(line));
  }

  lex.index();

  // A stopword can never raise an alert, so the two lists must not overlap.
  for (const auto& item : lex.items_) {
    for (const auto& t : item.lemma_tokens) {
      if (item.lemma_tokens.size() == 1 && lex.stopwords_.count(t)) {
        throw ParseError(origin + ": \"" + t + "\" is both a stopword and a fuzzy lemma");
      }
    }
    for (const auto& v : item.variants) {
      if (v.find(' ') == std::string::npos && lex.stopwords_.count(v)) {
        throw ParseError(origin + ": \"" + v + "\" is both a stopword and a fuzzy variant");
      }
    }
  }
  return lex;
}

void Lexicon::index() {
  by_lemma_.clear();
  by_variant_.clear();
  by_first_.clear();
  for (size_t i = 0; i < items_.size(); ++i) {
    const FuzzyItem& item = items_[i];
    // Same lemma may recur under another category; the first row wins
    // lookups, later ones only extend the catalog.
    by_lemma_.emplace(item.lemma, i);
    by_first_[item.lemma_tokens.front()].push_back(Phrase{item.lemma_tokens, i});
    for (const auto& v : item.variants) {
      auto [it, fresh] = by_variant_.emplace(v, i);
      if (!fresh && it->second != i) {
        throw ParseError("variant \"" + v + "\" is claimed by \"" + items_[it->second].lemma +
                         "\" and \"" + item.lemma + "\"");
      }
      auto words = split_ws(v);
      by_first_[words.front()].push_back(Phrase{std::move(words), i});
    }
  }
  for (auto& [word, phrases] : by_first_) {
    std::stable_sort(phrases.begin(), phrases.end(), [](const Phrase& a, const Phrase& b) {
      if (a.words.size() != b.words.size()) return a.words.size() > b.words.size();
      return a.item_index < b.item_index;
    });
  }
}

const FuzzyItem* Lexicon::lookup_fuzzy(const std::string& surface) const {
  std::string s = to_lower(surface);
  auto probe = [&](const std::string& key) -> const FuzzyItem* {
    if (auto it = by_variant_.find(key); it != by_variant_.end()) return &items_[it->second];
    if (auto it = by_lemma_.find(key); it != by_lemma_.end()) return &items_[it->second];
    return nullptr;
  };
  if (const FuzzyItem* hit = probe(s)) return hit;
  std::string lem;
  if (s.find(' ') == std::string::npos) {
    lem = lemmatize(s);
  } else {
    std::vector<std::string> parts;
    for (auto& w : split_ws(s)) parts.push_back(lemmatize(w));
    lem = join(parts, " ");
  }
  if (lem != s) return probe(lem);
  return nullptr;
}

std::vector<WordEntry> Lexicon::categorize(const std::string& token_text) const {
  std::string s = to_lower(token_text);
  if (stopwords_.count(s)) return {};
  if (auto it = words_.find(s); it != words_.end()) return it->second;
  std::string lem = lemma_of(s);
  if (stopwords_.count(lem)) return {};
  if (auto it = words_.find(lem); it != words_.end()) return it->second;
  return {WordEntry{lem, Pos::noun, {}}};
}

bool Lexicon::is_stopword(const std::string& token_text) const {
  std::string s = to_lower(token_text);
  return stopwords_.count(s) > 0 || stopwords_.count(lemmatize(s)) > 0;
}

bool Lexicon::is_unit_noun(const std::string& lemma) const {
  auto it = words_.find(lemma);
  if (it == words_.end()) return false;
  for (const auto& e : it->second) {
    if (e.pos == Pos::noun && e.has_feature("unit")) return true;
  }
  return false;
}

std::string Lexicon::lemma_of(const std::string& surface) const {
  std::string s = to_lower(surface);
  if (auto it = by_variant_.find(s); it != by_variant_.end()) {
    const FuzzyItem& item = items_[it->second];
    if (item.lemma_tokens.size() == 1) return item.lemma;
  }
  return lemmatize(s);
}

const std::vector<Phrase>* Lexicon::phrases_starting(const std::string& word) const {
  auto it = by_first_.find(word);
  return it == by_first_.end() ? nullptr : &it->second;
}

std::string Lexicon::serialize_items() const {
  std::string out;
  for (const auto& item : items_) {
    out += item.lemma;
    out += '\t';
    out += to_string(item.category);
    out += '\t';
    out += std::to_string(item.severity);
    if (!item.variants.empty() || !item.features.empty()) {
      out += '\t';
      out += join(item.variants, ",");
      if (!item.features.empty()) {
        out += '\t';
        out += join(item.features, ",");
      }
    }
    out += '\n';
  }
  return out;
}

void Lexicon::save(const std::string& path) const { atomic_write_file(path, serialize_items()); }

}  // namespace fuzzlint
