#include "engine.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <map>

#include "kv.hpp"
#include "util.hpp"

namespace fuzzlint {

namespace {

bool file_exists(const std::string& path) {
  struct stat st;
  return !path.empty() && ::stat(path.c_str(), &st) == 0;
}

int parse_int(const std::string& key, const std::string& value, int lo, int hi) {
  int v = 0;
  try {
    size_t used = 0;
    v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (...) {
    throw InputError(key + " must be an integer, got \"" + value + "\"");
  }
  if (v < lo || v > hi) {
    throw InputError(key + " must be between " + std::to_string(lo) + " and " +
                     std::to_string(hi) + ", got " + std::to_string(v));
  }
  return v;
}

double parse_ratio(const std::string& key, const std::string& value) {
  double v = 0;
  try {
    size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (...) {
    throw InputError(key + " must be a number, got \"" + value + "\"");
  }
  if (v < 0.0 || v > 1.0) throw InputError(key + " must be within 0..1");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw InputError(key + " must be a boolean, got \"" + value + "\"");
}

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string fmt_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n';
  if (!text.empty() && text.back() != '\n') ++lines;
  return lines;
}

void encode_context_fields(KvWriter& w, const Context& ctx) {
  w.text_field("head", ctx.head);
  std::vector<std::string> parts;
  for (const auto& cw : ctx.additional) parts.push_back(cw.lemma + ":" + to_string(cw.pos));
  w.text_field("ctx", join(parts, ","));
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "deactivation_threshold") {
    deactivation_threshold = parse_int(key, value, 1, 1000000);
  } else if (key == "global_threshold") {
    global_threshold = parse_int(key, value, 1, 1000000);
  } else if (key == "context_match_k") {
    context_match_k = parse_int(key, value, 0, 100);
  } else if (key == "context_size") {
    context_size = parse_int(key, value, 0, 100);
  } else if (key == "case2_content_ratio") {
    case2_content_ratio = parse_ratio(key, value);
  } else if (key == "case4_edit_ratio") {
    case4_edit_ratio = parse_ratio(key, value);
  } else if (key == "lexicon") {
    lexicon_path = value;
  } else if (key == "words") {
    words_path = value;
  } else if (key == "stopwords") {
    stopwords_path = value;
  } else if (key == "synonyms") {
    synonyms_path = value;
  } else if (key == "patterns") {
    patterns_path = value;
  } else if (key == "store") {
    store_path = value;
  } else if (key == "stable_output") {
    stable_output = parse_bool(key, value);
  } else {
    throw InputError("unknown configuration key \"" + key + "\"");
  }
}

void Config::load_file(const std::string& path) {
  std::string data = read_file(path);
  int line_no = 0;
  for (const auto& raw : split(data, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const InputError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string Config::behavior_hash() const {
  std::string key = "dt=" + std::to_string(deactivation_threshold) +
                    ";gt=" + std::to_string(global_threshold) +
                    ";k=" + std::to_string(context_match_k) +
                    ";cs=" + std::to_string(context_size) +
                    ";c2=" + fmt_ratio(case2_content_ratio) +
                    ";c4=" + fmt_ratio(case4_edit_ratio);
  return hex16(fnv1a64(key));
}

DetectParams Config::detect_params() const {
  DetectParams p;
  p.context_match_k = context_match_k;
  p.context_size = context_size;
  return p;
}

ClassifyParams Config::classify_params() const {
  ClassifyParams p;
  p.case2_content_ratio = case2_content_ratio;
  p.case4_edit_ratio = case4_edit_ratio;
  return p;
}

InduceParams Config::induce_params() const {
  InduceParams p;
  p.deactivation_threshold = deactivation_threshold;
  p.global_threshold = global_threshold;
  p.context_match_k = context_match_k;
  return p;
}

Engine::Engine(const Config& cfg, bool writable) : cfg_(cfg), writable_(writable) {
  lex_ = Lexicon::load(cfg_.lexicon_path, cfg_.words_path, cfg_.stopwords_path);
  syn_ = SynonymTable::load_file(cfg_.synonyms_path);
  catalog_ = Catalog::builtins();
  if (!cfg_.patterns_path.empty()) catalog_.merge_file(cfg_.patterns_path);
  for (const auto& w : catalog_.warnings()) warnings_.push_back(w);

  if (writable_ && !cfg_.store_path.empty()) {
    std::string lock_path = cfg_.store_path + ".lock";
    lock_fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (lock_fd_ < 0) {
      throw IoError("cannot open " + lock_path + ": " + std::strerror(errno));
    }
    if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(lock_fd_);
      lock_fd_ = -1;
      throw LockedError("store " + cfg_.store_path + " is locked by another process");
    }
  }

  if (file_exists(cfg_.store_path)) {
    store_ = MemoryStore::parse(read_file(cfg_.store_path));
    if (!store_.config_hash.empty() && store_.config_hash != cfg_.behavior_hash()) {
      warnings_.push_back("store " + cfg_.store_path + " was written under configuration " +
                          store_.config_hash + "; current is " + cfg_.behavior_hash());
    }
  }
  store_.config_hash = cfg_.behavior_hash();
  if (file_exists(derived_path())) {
    derived_ = DerivedTables::parse(read_file(derived_path()));
  }
}

Engine::~Engine() {
  if (lock_fd_ >= 0) ::close(lock_fd_);
}

std::string Engine::derived_path() const {
  return cfg_.store_path.empty() ? "" : cfg_.store_path + ".derived";
}

Engine::DetectOutput Engine::run_detect(const std::string& doc_id, const std::string& text,
                                        int min_severity) {
  DetectOutput out;
  auto alerts = detect(doc_id, text, lex_, derived_.deactivations, syn_, cfg_.detect_params());
  out.alerts = static_cast<int>(alerts.size());
  for (const auto& a : alerts) {
    out.max_severity = std::max(out.max_severity, a.severity);
    if (a.severity >= min_severity) ++out.at_or_above;
  }
  out.annotated = annotate(text, alerts);

  std::string rep = "detect v1 doc=" + doc_id + " config=" + cfg_.behavior_hash() +
                    " alerts=" + std::to_string(out.alerts) + "\n";
  for (const auto& a : alerts) {
    KvWriter w("alert");
    w.field("id", a.id);
    w.field("doc", a.doc_id);
    w.field("sentence", a.sentence_index);
    w.field("span", std::to_string(a.span.begin) + ":" + std::to_string(a.span.end));
    w.text_field("item", a.item_lemma);
    w.field("category", to_string(a.category));
    w.field("severity", a.severity);
    encode_context_fields(w, a.context);
    rep += w.str() + "\n";
  }
  out.report = rep;
  return out;
}

std::string Engine::run_learn(const std::string& doc_id, const std::string& original,
                              const std::string& corrected, const std::string& writer) {
  if (!writable_) throw StateError("learn needs a writable engine");
  LearnParams p{cfg_.detect_params(), cfg_.classify_params()};
  LearnStats st;
  try {
    st = learn(doc_id, original, corrected, writer, store_, lex_, syn_, derived_.deactivations, p);
  } catch (const InputError& e) {
    // Uneven sentence pairing is the one learn error worth a status of
    // its own; writer name problems stay plain input errors.
    if (std::string(e.what()).find("sentence counts differ") != std::string::npos) {
      throw MismatchError(e.what());
    }
    throw;
  }
  store_dirty_ = true;
  return "learn doc=" + doc_id + " alerts=" + std::to_string(st.alerts) +
         " records=" + std::to_string(st.record_ids.size()) +
         " corrected=" + std::to_string(st.corrected) +
         " uncorrected=" + std::to_string(st.uncorrected);
}

std::string Engine::run_mine(const std::string& doc_id, const std::string& text) {
  if (!writable_) throw StateError("mine-correct needs a writable engine");
  MineStats st =
      mine_correct(doc_id, text, store_, lex_, syn_, derived_.deactivations, cfg_.detect_params());
  store_dirty_ = true;
  return "mine-correct doc=" + doc_id + " sentences=" + std::to_string(st.sentences) +
         " skipped=" + std::to_string(st.skipped) + " realizations=" + std::to_string(st.found) +
         " new=" + std::to_string(st.fresh);
}

std::string Engine::run_induce() {
  if (!writable_) throw StateError("induce needs a writable engine");
  DerivedTables fresh = induce(store_, lex_, syn_, catalog_, cfg_.induce_params());
  int changes = fresh.diff_count(derived_);
  derived_ = std::move(fresh);
  derived_dirty_ = true;
  int validated = 0;
  for (const auto& d : derived_.deactivations.entries) validated += d.validated;
  return "induce deactivations=" + std::to_string(derived_.deactivations.entries.size()) +
         " validated=" + std::to_string(validated) +
         " recommendations=" + std::to_string(derived_.recommendations.size()) +
         " rawcorrections=" + std::to_string(derived_.raw.size()) +
         " changes=" + std::to_string(changes);
}

std::string Engine::run_validate(const std::string& deactivation_id) {
  if (!writable_) throw StateError("validate needs a writable engine");
  Deactivation* found = nullptr;
  for (auto& d : derived_.deactivations.entries) {
    if (d.id == deactivation_id) found = &d;
  }
  if (!found) {
    throw NotFoundError("no deactivation \"" + deactivation_id +
                        "\"; run induce and check the report for current ids");
  }
  if (found->validated) {
    return "validate id=" + deactivation_id + " status=already-validated";
  }
  found->validated = true;
  store_.validations.push_back(ValidationEvent{deactivation_id, store_.next_seq()});
  store_dirty_ = true;
  derived_dirty_ = true;
  return "validate id=" + deactivation_id + " status=validated";
}

std::string Engine::run_suggest(const std::string& doc_id, const std::string& text) {
  auto sentences = tokenize(text, doc_id);
  auto alerts = detect_sentences(sentences, lex_, derived_.deactivations, syn_,
                                 cfg_.detect_params());
  std::vector<Suggestion> all;
  for (const auto& a : alerts) {
    auto sug = suggest_for_alert(a, sentences[a.sentence_index], store_, derived_, catalog_, lex_,
                                 syn_, cfg_.context_match_k);
    all.insert(all.end(), sug.begin(), sug.end());
  }
  std::vector<std::pair<int, Suggestion>> sentence_level;
  for (const auto& s : sentences) {
    for (auto& sug : suggest_for_sentence(s, catalog_, lex_)) {
      sentence_level.emplace_back(s.index, std::move(sug));
    }
  }

  std::string rep = "suggest v1 doc=" + doc_id + " config=" + cfg_.behavior_hash() +
                    " alerts=" + std::to_string(alerts.size()) +
                    " suggestions=" + std::to_string(all.size() + sentence_level.size()) + "\n";
  auto emit = [&](const Suggestion& sug, int sentence_index) {
    KvWriter w("suggestion");
    w.field("alert", sug.alert_id);
    w.field("sentence", sentence_index);
    w.field("pattern", sug.pattern_id);
    w.field("slot", sug.has_slot ? to_string(sug.slot) : "-");
    w.text_field("text", sug.text);
    w.field("fillers", static_cast<long long>(sug.fillers.size()));
    rep += w.str() + "\n";
    int rank = 0;
    for (const auto& f : sug.fillers) {
      KvWriter fw("filler");
      fw.field("alert", sug.alert_id);
      fw.field("pattern", sug.pattern_id);
      fw.field("rank", ++rank);
      fw.text_field("text", f.text);
      fw.field("freq", f.freq);
      fw.field("last", static_cast<long long>(f.last_seq));
      fw.text_field("sources", join(f.sources, ","));
      rep += fw.str() + "\n";
    }
  };
  size_t ai = 0;
  for (const auto& a : alerts) {
    while (ai < all.size() && all[ai].alert_id == a.id) {
      emit(all[ai], a.sentence_index);
      ++ai;
    }
  }
  for (const auto& [idx, sug] : sentence_level) emit(sug, idx);
  return rep;
}

std::string Engine::run_report(const std::vector<std::pair<std::string, std::string>>& docs) {
  std::string rep = "report v1 config=" + cfg_.behavior_hash() +
                    " records=" + std::to_string(store_.records.size()) + "\n";

  int total_alerts = 0;
  int total_lines = 0;
  struct ItemAgg {
    FuzzyCategory category = FuzzyCategory::adjective;
    int severity = 1;
    int alerts = 0;
  };
  std::map<std::string, ItemAgg> items;
  for (const auto& [doc_id, text] : docs) {
    total_lines += count_lines(text);
    auto alerts = detect(doc_id, text, lex_, derived_.deactivations, syn_, cfg_.detect_params());
    total_alerts += static_cast<int>(alerts.size());
    for (const auto& a : alerts) {
      auto& agg = items[a.item_lemma];
      agg.category = a.category;
      agg.severity = a.severity;
      ++agg.alerts;
    }
  }
  std::vector<std::pair<std::string, ItemAgg>> ranked(items.begin(), items.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.alerts != b.second.alerts) return a.second.alerts > b.second.alerts;
    return a.first < b.first;
  });
  for (const auto& [lemma, agg] : ranked) {
    KvWriter w("item");
    w.text_field("item", lemma);
    w.field("category", to_string(agg.category));
    w.field("severity", agg.severity);
    w.field("alerts", agg.alerts);
    rep += w.str() + "\n";
  }
  if (!docs.empty()) {
    double per1000 = total_lines > 0 ? 1000.0 * total_alerts / total_lines : 0.0;
    KvWriter w("frequency");
    w.field("lines", total_lines);
    w.field("alerts", total_alerts);
    w.field("per-1000-lines", fmt1(per1000));
    rep += w.str() + "\n";
  }

  int case_counts[6] = {0, 0, 0, 0, 0, 0};
  for (const auto& r : store_.records) {
    if (r.case_ >= 1 && r.case_ <= 5) ++case_counts[r.case_];
  }
  int total_records = static_cast<int>(store_.records.size());
  for (int c = 1; c <= 5; ++c) {
    KvWriter w("case");
    w.field("case", c);
    w.field("count", case_counts[c]);
    w.field("pct", fmt1(total_records > 0 ? 100.0 * case_counts[c] / total_records : 0.0));
    rep += w.str() + "\n";
  }

  for (const auto& d : derived_.deactivations.entries) {
    KvWriter w("deactivation");
    w.field("id", d.id);
    w.field("kind", d.global ? "global" : "contextual");
    w.text_field("item", d.item_lemma);
    encode_context_fields(w, d.repr);
    w.field("count", d.count);
    w.field("classes", d.classes);
    w.field("validated", d.validated ? 1 : 0);
    rep += w.str() + "\n";
  }

  // Top suggestions per pattern and context class, highest evidence first.
  std::string group;
  int rank = 0;
  for (const auto& e : derived_.recommendations) {
    std::string g = e.pattern_id + "\x1f" + e.item_lemma + "\x1f" + e.repr.head;
    if (g != group) {
      group = g;
      rank = 0;
    }
    if (++rank > 3) continue;
    KvWriter w("recommendation");
    w.field("pattern", e.pattern_id);
    w.text_field("item", e.item_lemma);
    w.text_field("head", e.repr.head);
    w.field("slot", to_string(e.slot));
    w.field("rank", rank);
    w.text_field("text", e.text);
    w.field("freq", e.freq);
    rep += w.str() + "\n";
  }
  group.clear();
  rank = 0;
  for (const auto& e : derived_.raw) {
    std::string g = e.item_lemma + "\x1f" + e.repr.head;
    if (g != group) {
      group = g;
      rank = 0;
    }
    if (++rank > 3) continue;
    KvWriter w("rawcorrection");
    w.text_field("item", e.item_lemma);
    w.text_field("head", e.repr.head);
    w.field("rank", rank);
    w.text_field("text", e.text);
    w.field("freq", e.freq);
    rep += w.str() + "\n";
  }
  return rep;
}

void Engine::save() {
  if (cfg_.store_path.empty()) return;
  if ((store_dirty_ || derived_dirty_) && !writable_) {
    throw StateError("engine is read-only; nothing may be saved");
  }
  if (store_dirty_) {
    atomic_write_file(cfg_.store_path, store_.serialize(cfg_.stable_output));
    store_dirty_ = false;
  }
  if (derived_dirty_) {
    atomic_write_file(derived_path(), derived_.serialize(cfg_.behavior_hash(), cfg_.stable_output));
    derived_dirty_ = false;
  }
}

}  // namespace fuzzlint
