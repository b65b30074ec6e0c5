#include "store.hpp"

#include <algorithm>
#include <ctime>
#include <set>

#include "kv.hpp"
#include "util.hpp"

namespace fuzzlint {

Alignment align(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  size_t m = a.size(), n = b.size();
  std::vector<std::vector<int>> dp(m + 1, std::vector<int>(n + 1, 0));
  for (size_t i = 0; i <= m; ++i) dp[i][n] = static_cast<int>(m - i);
  for (size_t j = 0; j <= n; ++j) dp[m][j] = static_cast<int>(n - j);
  for (size_t i = m; i-- > 0;) {
    for (size_t j = n; j-- > 0;) {
      int best = (a[i] == b[j] ? 0 : 1) + dp[i + 1][j + 1];
      best = std::min(best, 1 + dp[i + 1][j]);
      best = std::min(best, 1 + dp[i][j + 1]);
      dp[i][j] = best;
    }
  }
  Alignment out;
  out.cost = dp[0][0];
  size_t i = 0, j = 0;
  while (i < m || j < n) {
    if (i < m && j < n && a[i] == b[j] && dp[i][j] == dp[i + 1][j + 1]) {
      out.steps.push_back({EditOp::keep, i, j});
      ++i, ++j;
    } else if (i < m && j < n && dp[i][j] == 1 + dp[i + 1][j + 1]) {
      out.steps.push_back({EditOp::substitute, i, j});
      ++i, ++j;
    } else if (i < m && dp[i][j] == 1 + dp[i + 1][j]) {
      out.steps.push_back({EditOp::del, i, j});
      ++i;
    } else {
      out.steps.push_back({EditOp::insert, i, j});
      ++j;
    }
  }
  return out;
}

namespace {

const std::set<std::string>& comparator_lemmas() {
  static const std::set<std::string> words = {"less",  "more",  "than",    "below", "above",
                                              "under", "over",  "every",   "to",    "from",
                                              "between", "within", "per",  "least"};
  return words;
}

bool quantity_lemma(const std::string& lemma, const Lexicon& lex) {
  return is_numeral(lemma) || comparator_lemmas().count(lemma) > 0 || lex.is_unit_noun(lemma);
}

std::vector<std::string> lemmas_of(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lemma);
  return out;
}

std::map<std::string, int> multiset_of(const std::vector<std::string>& v) {
  std::map<std::string, int> out;
  for (const auto& s : v) ++out[s];
  return out;
}

// a - b, count-wise.
std::map<std::string, int> multiset_minus(const std::map<std::string, int>& a,
                                          const std::map<std::string, int>& b) {
  std::map<std::string, int> out;
  for (const auto& [w, c] : a) {
    auto it = b.find(w);
    int left = c - (it == b.end() ? 0 : it->second);
    if (left > 0) out[w] = left;
  }
  return out;
}

int multiset_size(const std::map<std::string, int>& m) {
  int n = 0;
  for (const auto& [w, c] : m) n += c;
  return n;
}

}  // namespace

ClassifyOutcome classify(const std::vector<Token>& original, const std::vector<Token>* corrected,
                         TokenSpan item_span, const Lexicon& lex, const ClassifyParams& p) {
  ClassifyOutcome out;
  if (!corrected) return out;

  bool identical = original.size() == corrected->size();
  for (size_t i = 0; identical && i < original.size(); ++i) {
    identical = to_lower(original[i].surface) == to_lower((*corrected)[i].surface);
  }
  if (identical) return out;

  out.has_corrected = true;
  auto a = lemmas_of(original);
  auto b = lemmas_of(*corrected);
  out.alignment = align(a, b);
  const auto& steps = out.alignment.steps;

  size_t rb = SIZE_MAX, re = 0;
  for (const auto& st : steps) {
    if (st.op == EditOp::substitute || st.op == EditOp::insert) {
      rb = std::min(rb, st.b);
      re = std::max(re, st.b + 1);
    }
  }
  if (rb == SIZE_MAX) {
    // Pure deletions: the revision point is where the first one lands.
    for (const auto& st : steps) {
      if (st.op == EditOp::del) {
        out.revised = TokenSpan{st.b, st.b};
        break;
      }
    }
  } else {
    out.revised = TokenSpan{rb, re};
  }

  auto in_span = [&](const AlignStep& st) {
    return st.op != EditOp::insert && st.a >= item_span.begin && st.a < item_span.end;
  };

  bool span_all_keep = true, span_all_del = true, others_all_keep = true;
  int inserts = 0, non_keep = 0;
  bool insert_only = true;
  for (const auto& st : steps) {
    if (st.op != EditOp::keep) {
      ++non_keep;
      if (st.op == EditOp::insert) {
        ++inserts;
      } else {
        insert_only = false;
      }
    }
    if (in_span(st)) {
      if (st.op != EditOp::keep) span_all_keep = false;
      if (st.op != EditOp::del) span_all_del = false;
    } else if (st.op != EditOp::keep) {
      others_all_keep = false;
    }
  }

  if (span_all_del && others_all_keep && !span_all_keep) {
    out.case_ = 3;
    return out;
  }

  auto ma = multiset_of(a);
  auto mb = multiset_of(b);
  auto gained = multiset_minus(mb, ma);
  auto lost = multiset_minus(ma, mb);
  std::map<std::string, int> span_lemmas;
  for (size_t i = item_span.begin; i < item_span.end && i < a.size(); ++i) ++span_lemmas[a[i]];

  if (!gained.empty()) {
    bool core = false;
    for (const auto& [w, c] : gained) core |= is_numeral(w) || lex.is_unit_noun(w);
    bool rest_ok = true;
    for (const auto& [w, c] : multiset_minus(lost, span_lemmas)) {
      rest_ok &= lex.is_stopword(w) || quantity_lemma(w, lex);
    }
    int foreign = 0;
    for (const auto& [w, c] : gained) {
      if (!quantity_lemma(w, lex) && !lex.is_stopword(w) && !span_lemmas.count(w)) foreign += c;
    }
    double ratio = static_cast<double>(foreign) / multiset_size(gained);
    if (core && rest_ok && ratio <= p.case2_content_ratio) {
      out.case_ = 2;
      return out;
    }
  }

  if (!span_all_keep) {
    // Maximal run of consecutive edits containing the occurrence.
    size_t run_begin = SIZE_MAX, run_end = 0;
    bool one_run = true;
    {
      size_t i = 0;
      while (i < steps.size()) {
        if (steps[i].op == EditOp::keep) {
          ++i;
          continue;
        }
        size_t j = i;
        while (j < steps.size() && steps[j].op != EditOp::keep) ++j;
        bool covers_span = false;
        for (size_t t = i; t < j; ++t) covers_span |= in_span(steps[t]);
        if (covers_span) {
          if (run_begin != SIZE_MAX) one_run = false;
          run_begin = i;
          run_end = j;
        }
        i = j;
      }
    }
    // Every edited span position must sit in that single run.
    for (size_t t = 0; one_run && t < steps.size(); ++t) {
      if (in_span(steps[t]) && steps[t].op != EditOp::keep) {
        one_run &= t >= run_begin && t < run_end;
      }
    }
    if (one_run && run_begin != SIZE_MAX) {
      bool content = false;
      int outside = 0;
      for (size_t t = 0; t < steps.size(); ++t) {
        const auto& st = steps[t];
        if (st.op == EditOp::keep) continue;
        if (t < run_begin || t >= run_end) {
          ++outside;
          continue;
        }
        if (st.op == EditOp::substitute || st.op == EditOp::insert) {
          const std::string& w = b[st.b];
          content |= !quantity_lemma(w, lex) && !lex.is_stopword(w) && !span_lemmas.count(w);
        }
      }
      bool has_corrected_side = false;
      for (size_t t = run_begin; t < run_end; ++t) {
        has_corrected_side |= steps[t].op != EditOp::del;
      }
      double ratio = static_cast<double>(outside) / std::max(a.size(), b.size());
      if (has_corrected_side && content && ratio <= p.case4_edit_ratio) {
        out.case_ = 4;
        return out;
      }
    }
  }

  if (span_all_keep && insert_only && inserts > 0) {
    out.case_ = 2;
    return out;
  }

  out.case_ = 5;
  return out;
}

namespace {

void encode_context(KvWriter& w, const Context& ctx) {
  w.text_field("head", ctx.head);
  std::vector<std::string> parts;
  for (const auto& cw : ctx.additional) {
    parts.push_back(cw.lemma + ":" + to_string(cw.pos));
  }
  w.text_field("ctx", join(parts, ","));
}

Context decode_context(const KvLine& kv, const std::string& item_lemma) {
  Context ctx;
  ctx.item_lemma = item_lemma;
  ctx.head = kv.need("head");
  ctx.degenerate = ctx.head.empty();
  for (const auto& part : split(kv.need("ctx"), ',')) {
    if (part.empty()) continue;
    size_t colon = part.rfind(':');
    if (colon == std::string::npos) {
      throw ParseError("context word without a word class: \"" + part + "\"");
    }
    auto pos = pos_from(part.substr(colon + 1));
    if (!pos) throw ParseError("unknown word class in context: \"" + part + "\"");
    ctx.additional.push_back(ContextWord{part.substr(0, colon), *pos});
  }
  return ctx;
}

int64_t need_seq(const KvLine& kv) {
  try {
    return std::stoll(kv.need("seq"));
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError("bad seq field in " + kv.type + " record");
  }
}

int id_number(const std::string& id) {
  size_t i = 0;
  while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
  try {
    return std::stoi(id.substr(i));
  } catch (...) {
    return 0;
  }
}

}  // namespace

std::string MemoryStore::serialize(bool stable) const {
  std::string out = "fuzzlint-store v1 config=" + config_hash +
                    " written=" + std::to_string(stable ? 0 : static_cast<long long>(time(nullptr))) +
                    "\n";
  for (const auto& r : records) {
    KvWriter w("record");
    w.field("id", r.id);
    w.field("seq", static_cast<long long>(r.seq));
    w.text_field("item", r.item_lemma);
    w.field("category", to_string(r.category));
    w.field("severity", r.severity);
    w.field("case", r.case_);
    w.text_field("writer", r.writer);
    encode_context(w, r.context);
    w.text_field("original", render_tagged(r.original));
    if (r.has_corrected) w.text_field("corrected", render_tagged(r.corrected));
    out += w.str() + "\n";
  }
  for (const auto& m : realizations) {
    KvWriter w("realization");
    w.field("id", m.id);
    w.field("seq", static_cast<long long>(m.seq));
    encode_context(w, m.context);
    w.text_field("text", m.text);
    w.field("count", m.count);
    out += w.str() + "\n";
  }
  for (const auto& v : validations) {
    KvWriter w("validation");
    w.field("id", v.deactivation_id);
    w.field("seq", static_cast<long long>(v.seq));
    out += w.str() + "\n";
  }
  return out;
}

MemoryStore MemoryStore::parse(const std::string& text) {
  MemoryStore store;
  bool saw_header = false;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (!saw_header) {
      auto head = split_ws(line);
      if (head.size() < 2 || head[0] != "fuzzlint-store" || head[1] != "v1") {
        throw ParseError("line 1: not a memory store file (expected \"fuzzlint-store v1\")");
      }
      for (size_t i = 2; i < head.size(); ++i) {
        size_t eq = head[i].find('=');
        if (eq == std::string::npos) continue;
        if (head[i].substr(0, eq) == "config") store.config_hash = head[i].substr(eq + 1);
      }
      saw_header = true;
      continue;
    }
    KvLine kv;
    try {
      kv = parse_kv_line(line);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (kv.type == "record") {
        CorrectionRecord r;
        r.id = kv.need("id");
        r.seq = need_seq(kv);
        r.item_lemma = kv.need("item");
        auto cat = fuzzy_category_from(kv.need("category"));
        if (!cat) throw ParseError("unknown category \"" + kv.need("category") + "\"");
        r.category = *cat;
        r.severity = kv.need_int("severity");
        r.case_ = kv.need_int("case");
        if (r.case_ < 1 || r.case_ > 5) {
          throw ParseError("case out of range: " + std::to_string(r.case_));
        }
        r.writer = kv.need("writer");
        r.context = decode_context(kv, r.item_lemma);
        r.original = parse_tagged(kv.need("original"));
        if (!r.original.region(TagKind::fuzzy)) {
          throw ParseError("record " + r.id + " original lacks a tagged occurrence");
        }
        if (const std::string* c = kv.find("corrected")) {
          r.has_corrected = true;
          r.corrected = parse_tagged(*c);
          if (!r.corrected.region(TagKind::revised)) {
            throw ParseError("record " + r.id + " corrected lacks a revised region");
          }
        }
        store.records.push_back(std::move(r));
      } else if (kv.type == "realization") {
        CorrectRealization m;
        m.id = kv.need("id");
        m.seq = need_seq(kv);
        m.context = decode_context(kv, "");
        m.text = kv.need("text");
        m.count = kv.need_int("count");
        store.realizations.push_back(std::move(m));
      } else if (kv.type == "validation") {
        store.validations.push_back(ValidationEvent{kv.need("id"), need_seq(kv)});
      } else {
        throw ParseError("unknown record type \"" + kv.type + "\"");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!saw_header) throw ParseError("empty store file");
  store.refresh_counters();
  return store;
}

void MemoryStore::refresh_counters() {
  seq_ = 0;
  record_id_ = 0;
  realization_id_ = 0;
  for (const auto& r : records) {
    seq_ = std::max(seq_, r.seq);
    record_id_ = std::max(record_id_, id_number(r.id));
  }
  for (const auto& m : realizations) {
    seq_ = std::max(seq_, m.seq);
    realization_id_ = std::max(realization_id_, id_number(m.id));
  }
  for (const auto& v : validations) seq_ = std::max(seq_, v.seq);
}

std::string DerivedTables::serialize(const std::string& config_hash, bool stable) const {
  (void)stable;
  std::string out = "fuzzlint-derived v1 config=" + config_hash + "\n";
  for (const auto& d : deactivations.entries) {
    KvWriter w("deactivation");
    w.field("id", d.id);
    w.field("global", d.global ? 1 : 0);
    w.text_field("item", d.item_lemma);
    encode_context(w, d.repr);
    w.field("k", d.k);
    w.field("count", d.count);
    w.field("classes", d.classes);
    w.field("validated", d.validated ? 1 : 0);
    out += w.str() + "\n";
  }
  for (const auto& r : recommendations) {
    KvWriter w("recommendation");
    w.field("pattern", r.pattern_id);
    w.text_field("item", r.item_lemma);
    encode_context(w, r.repr);
    w.field("slot", to_string(r.slot));
    w.text_field("text", r.text);
    w.field("freq", r.freq);
    w.field("last", static_cast<long long>(r.last_seq));
    w.text_field("sources", join(r.sources, ","));
    out += w.str() + "\n";
  }
  for (const auto& r : raw) {
    KvWriter w("rawcorrection");
    w.text_field("item", r.item_lemma);
    encode_context(w, r.repr);
    w.text_field("text", r.text);
    w.field("freq", r.freq);
    w.field("last", static_cast<long long>(r.last_seq));
    w.text_field("sources", join(r.sources, ","));
    out += w.str() + "\n";
  }
  return out;
}

DerivedTables DerivedTables::parse(const std::string& text) {
  DerivedTables t;
  bool saw_header = false;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (!saw_header) {
      auto head = split_ws(line);
      if (head.size() < 2 || head[0] != "fuzzlint-derived" || head[1] != "v1") {
        throw ParseError("line 1: not a derived-tables file");
      }
      saw_header = true;
      continue;
    }
    KvLine kv;
    try {
      kv = parse_kv_line(line);
      if (kv.type == "deactivation") {
        Deactivation d;
        d.id = kv.need("id");
        d.global = kv.need_int("global") != 0;
        d.item_lemma = kv.need("item");
        d.repr = decode_context(kv, d.item_lemma);
        d.k = kv.need_int("k");
        d.count = kv.need_int("count");
        d.classes = kv.need_int("classes");
        d.validated = kv.need_int("validated") != 0;
        t.deactivations.entries.push_back(std::move(d));
      } else if (kv.type == "recommendation") {
        RecommendationEntry r;
        r.pattern_id = kv.need("pattern");
        r.item_lemma = kv.need("item");
        r.repr = decode_context(kv, r.item_lemma);
        auto slot = slot_type_from(kv.need("slot"));
        if (!slot) throw ParseError("unknown slot type \"" + kv.need("slot") + "\"");
        r.slot = *slot;
        r.text = kv.need("text");
        r.freq = kv.need_int("freq");
        r.last_seq = std::stoll(kv.need("last"));
        for (auto& s : split(kv.need("sources"), ',')) {
          if (!s.empty()) r.sources.push_back(s);
        }
        t.recommendations.push_back(std::move(r));
      } else if (kv.type == "rawcorrection") {
        RawCorrectionEntry r;
        r.item_lemma = kv.need("item");
        r.repr = decode_context(kv, r.item_lemma);
        r.text = kv.need("text");
        r.freq = kv.need_int("freq");
        r.last_seq = std::stoll(kv.need("last"));
        for (auto& s : split(kv.need("sources"), ',')) {
          if (!s.empty()) r.sources.push_back(s);
        }
        t.raw.push_back(std::move(r));
      } else {
        throw ParseError("unknown record type \"" + kv.type + "\"");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!saw_header) throw ParseError("empty derived-tables file");
  return t;
}

int DerivedTables::diff_count(const DerivedTables& old) const {
  auto lines = [](const DerivedTables& t) {
    std::map<std::string, int> m;
    std::string all = t.serialize("", true);
    bool first = true;
    for (auto& line : split(all, '\n')) {
      if (first) {
        first = false;
        continue;
      }
      if (!line.empty()) ++m[line];
    }
    return m;
  };
  auto mine = lines(*this), theirs = lines(old);
  int diff = 0;
  for (const auto& [line, c] : mine) {
    auto it = theirs.find(line);
    diff += std::abs(c - (it == theirs.end() ? 0 : it->second));
  }
  for (const auto& [line, c] : theirs) {
    if (!mine.count(line)) diff += c;
  }
  return diff;
}

namespace {

std::string slug(const std::string& s) {
  std::string out;
  for (char c : to_lower(s)) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') {
      out.push_back(c);
    } else if (c == ' ' || c == '_') {
      out.push_back('_');
    } else {
      out.push_back('_');
    }
  }
  return out.empty() ? "_" : out;
}

Context itemless(const Context& ctx) {
  Context c = ctx;
  c.item_lemma.clear();
  return c;
}

// Rebuilds a sentence from a stored fragment so patterns can re-match it.
Sentence sentence_of(const TaggedFragment& frag, const std::string& doc_id) {
  Sentence s;
  s.doc_id = doc_id;
  for (const auto& t : frag.tokens()) {
    s.tokens.push_back(Token{t, lemmatize(t), 0, 1});
  }
  return s;
}

}  // namespace

DerivedTables induce(const MemoryStore& store, const Lexicon& lex, const SynonymTable& syn,
                     const Catalog& catalog, const InduceParams& p) {
  DerivedTables out;

  struct ClassInfo {
    Context repr;
    int case1 = 0;
    int corrected = 0;
  };
  // Key: item lemma + head lemma; insertion order preserved for stable ids.
  std::vector<std::pair<std::pair<std::string, std::string>, ClassInfo>> classes;
  auto class_of = [&](const CorrectionRecord& r) -> ClassInfo* {
    auto key = std::make_pair(r.item_lemma, r.context.head);
    for (auto& [k, info] : classes) {
      if (k == key) {
        return context_match(r.context, info.repr, p.context_match_k, syn) ? &info : nullptr;
      }
    }
    classes.emplace_back(key, ClassInfo{r.context, 0, 0});
    return &classes.back().second;
  };

  std::map<std::string, int> item_corrected_anywhere;
  for (const auto& r : store.records) {
    if (r.case_ != 1) ++item_corrected_anywhere[r.item_lemma];
    ClassInfo* info = class_of(r);
    if (!info) continue;
    if (r.case_ == 1) {
      ++info->case1;
    } else {
      ++info->corrected;
    }
  }

  std::set<std::string> validated_ids;
  for (const auto& v : store.validations) validated_ids.insert(v.deactivation_id);

  for (const auto& [key, info] : classes) {
    if (info.case1 >= p.deactivation_threshold && info.corrected == 0) {
      Deactivation d;
      d.id = "d-" + slug(key.first) + "-" + slug(key.second);
      d.global = false;
      d.item_lemma = key.first;
      d.repr = info.repr;
      d.k = p.context_match_k;
      d.count = info.case1;
      d.validated = validated_ids.count(d.id) > 0;
      out.deactivations.entries.push_back(std::move(d));
    }
  }

  std::map<std::string, std::pair<int, int>> per_item;  // item -> {case1 total, classes hit}
  for (const auto& [key, info] : classes) {
    if (info.case1 > 0) {
      auto& agg = per_item[key.first];
      agg.first += info.case1;
      agg.second += 1;
    }
  }
  for (const auto& [item, agg] : per_item) {
    if (agg.first >= p.global_threshold && agg.second >= 3 && !item_corrected_anywhere[item]) {
      Deactivation d;
      d.id = "g-" + slug(item);
      d.global = true;
      d.item_lemma = item;
      d.k = p.context_match_k;
      d.count = agg.first;
      d.classes = agg.second;
      d.validated = validated_ids.count(d.id) > 0;
      out.deactivations.entries.push_back(std::move(d));
    }
  }

  // Correction patterns feed the recommendation table from quantified and
  // reformulated records; erased occurrences land in the raw pool only.
  for (const auto& r : store.records) {
    if (!r.has_corrected) continue;
    auto region = r.corrected.region(TagKind::revised);
    auto span = r.original.region(TagKind::fuzzy);
    if (!region || !span) continue;
    auto corrected_tokens = r.corrected.tokens();
    std::vector<std::string> region_tokens(corrected_tokens.begin() + region->first,
                                           corrected_tokens.begin() + region->second);

    ClassInfo* info = nullptr;
    Context repr = r.context;
    {
      auto key = std::make_pair(r.item_lemma, r.context.head);
      for (auto& [k, ci] : classes) {
        if (k == key) {
          info = &ci;
          repr = ci.repr;
          break;
        }
      }
    }
    if (info && !context_match(r.context, repr, p.context_match_k, syn)) continue;

    if (r.case_ == 2 || r.case_ == 4) {
      Sentence s = sentence_of(r.original, "");
      TokenSpan item_span{span->first, span->second};
      std::set<std::string> item_lemmas;
      for (size_t i = span->first; i < span->second; ++i) item_lemmas.insert(s.tokens[i].lemma);
      for (const CorrectionPattern* pat : catalog.applicable(r.item_lemma, r.category)) {
        if (!pat->has_slot()) continue;
        if (!match_pattern(*pat, s, item_span, lex).matched) continue;
        std::set<std::string> rhs_literals;
        for (const auto& e : pat->rhs) {
          if (e.kind == RhsElem::Kind::literal) rhs_literals.insert(lemmatize(e.text));
        }
        std::vector<std::string> filler;
        for (const auto& t : region_tokens) {
          std::string lem = lemmatize(t);
          if (item_lemmas.count(lem) || rhs_literals.count(lem)) continue;
          filler.push_back(t);
        }
        if (filler.empty()) continue;
        std::string text = join(filler, " ");
        bool merged = false;
        for (auto& e : out.recommendations) {
          if (e.pattern_id == pat->id && e.item_lemma == r.item_lemma && e.repr.head == repr.head &&
              e.text == text) {
            ++e.freq;
            e.last_seq = std::max(e.last_seq, r.seq);
            e.sources.push_back(r.id);
            merged = true;
            break;
          }
        }
        if (!merged) {
          RecommendationEntry e;
          e.pattern_id = pat->id;
          e.item_lemma = r.item_lemma;
          e.repr = repr;
          e.slot = pat->first_slot();
          e.text = text;
          e.freq = 1;
          e.last_seq = r.seq;
          e.sources = {r.id};
          out.recommendations.push_back(std::move(e));
        }
      }
    }

    if (r.case_ >= 2 && r.case_ <= 4) {
      std::string text = join(region_tokens, " ");  // empty when erased
      bool merged = false;
      for (auto& e : out.raw) {
        if (e.item_lemma == r.item_lemma && e.repr.head == repr.head && e.text == text) {
          ++e.freq;
          e.last_seq = std::max(e.last_seq, r.seq);
          e.sources.push_back(r.id);
          merged = true;
          break;
        }
      }
      if (!merged) {
        RawCorrectionEntry e;
        e.item_lemma = r.item_lemma;
        e.repr = repr;
        e.text = text;
        e.freq = 1;
        e.last_seq = r.seq;
        e.sources = {r.id};
        out.raw.push_back(std::move(e));
      }
    }
  }

  std::sort(out.deactivations.entries.begin(), out.deactivations.entries.end(),
            [](const Deactivation& a, const Deactivation& b) { return a.id < b.id; });
  std::sort(out.recommendations.begin(), out.recommendations.end(),
            [](const RecommendationEntry& a, const RecommendationEntry& b) {
              if (a.pattern_id != b.pattern_id) return a.pattern_id < b.pattern_id;
              if (a.item_lemma != b.item_lemma) return a.item_lemma < b.item_lemma;
              if (a.repr.head != b.repr.head) return a.repr.head < b.repr.head;
              if (a.freq != b.freq) return a.freq > b.freq;
              if (a.last_seq != b.last_seq) return a.last_seq > b.last_seq;
              return a.text < b.text;
            });
  std::sort(out.raw.begin(), out.raw.end(),
            [](const RawCorrectionEntry& a, const RawCorrectionEntry& b) {
              if (a.item_lemma != b.item_lemma) return a.item_lemma < b.item_lemma;
              if (a.repr.head != b.repr.head) return a.repr.head < b.repr.head;
              if (a.freq != b.freq) return a.freq > b.freq;
              if (a.last_seq != b.last_seq) return a.last_seq > b.last_seq;
              return a.text < b.text;
            });
  return out;
}

LearnStats learn(const std::string& doc_id, const std::string& original_text,
                 const std::string& corrected_text, const std::string& writer, MemoryStore& store,
                 const Lexicon& lex, const SynonymTable& syn, const DeactivationSet& deact,
                 const LearnParams& p) {
  if (trim(writer).empty()) throw InputError("learn needs a writer name");
  auto so = tokenize(original_text, doc_id);
  auto sc = tokenize(corrected_text, doc_id);
  if (so.size() != sc.size()) {
    throw InputError("sentence counts differ: original has " + std::to_string(so.size()) +
                     ", corrected has " + std::to_string(sc.size()) +
                     "; align the two texts sentence by sentence");
  }

  LearnStats stats;
  auto alerts = detect_sentences(so, lex, deact, syn, p.detect);
  stats.alerts = static_cast<int>(alerts.size());
  for (const auto& a : alerts) {
    const auto& orig = so[a.sentence_index].tokens;
    const auto& corr = sc[a.sentence_index].tokens;
    ClassifyOutcome oc = classify(orig, &corr, a.span, lex, p.classify);

    CorrectionRecord r;
    r.id = "r" + std::to_string(store.next_record_id());
    r.seq = store.next_seq();
    r.item_lemma = a.item_lemma;
    r.category = a.category;
    r.severity = a.severity;
    r.case_ = oc.case_;
    r.writer = trim(writer);
    r.context = a.context;
    std::vector<std::string> orig_surfaces;
    for (const auto& t : orig) orig_surfaces.push_back(t.surface);
    r.original = make_tagged(orig_surfaces, a.span.begin, a.span.end, TagKind::fuzzy);
    if (oc.has_corrected) {
      std::vector<std::string> corr_surfaces;
      for (const auto& t : corr) corr_surfaces.push_back(t.surface);
      r.corrected =
          make_tagged(corr_surfaces, oc.revised.begin, oc.revised.end, TagKind::revised);
      r.has_corrected = true;
      ++stats.corrected;
    } else {
      ++stats.uncorrected;
    }
    stats.record_ids.push_back(r.id);
    store.records.push_back(std::move(r));
  }
  return stats;
}

namespace {

size_t unit_distance(const ContextUnit& u, TokenSpan span) {
  if (u.begin >= span.end) return u.begin - span.end + 1;
  return span.begin - u.end + 1;
}

bool unit_follows(const ContextUnit& u, TokenSpan span) { return u.begin >= span.end; }

Context quantity_context(const Sentence& s, TokenSpan span, const Lexicon& lex,
                         int context_size) {
  Context ctx;
  std::vector<ContextUnit> units = group_compounds(s, lex, span);
  auto nearest = [&](auto&& pred) -> const ContextUnit* {
    const ContextUnit* best = nullptr;
    size_t best_d = 0;
    bool best_f = false;
    for (const auto& u : units) {
      if (!pred(u)) continue;
      size_t d = unit_distance(u, span);
      bool f = unit_follows(u, span);
      if (!best || d < best_d || (d == best_d && f && !best_f)) {
        best = &u;
        best_d = d;
        best_f = f;
      }
    }
    return best;
  };
  const ContextUnit* head = nearest([](const ContextUnit& u) { return u.has_pos(Pos::verb); });
  if (!head) head = nearest([](const ContextUnit& u) { return u.has_pos(Pos::noun); });
  if (head) {
    ctx.head = head->lemma;
  } else {
    ctx.degenerate = true;
  }
  std::vector<const ContextUnit*> rest;
  for (const auto& u : units) {
    if (&u == head || (head && u.lemma == head->lemma)) continue;
    if (!u.eligible_context_word()) continue;
    rest.push_back(&u);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](const ContextUnit* a, const ContextUnit* b) {
    size_t da = unit_distance(*a, span), db = unit_distance(*b, span);
    if (da != db) return da < db;
    bool fa = unit_follows(*a, span), fb = unit_follows(*b, span);
    if (fa != fb) return fa;
    return a->begin < b->begin;
  });
  if (context_size >= 0 && rest.size() > static_cast<size_t>(context_size)) {
    rest.resize(context_size);
  }
  for (const ContextUnit* u : rest) {
    ctx.additional.push_back(ContextWord{u->lemma, u->display_pos()});
  }
  return ctx;
}

const std::set<std::string>& leading_preps() {
  static const std::set<std::string> preps = {"in", "within", "for",  "after", "at",   "by",
                                              "during", "every", "from", "to",    "over", "under"};
  return preps;
}

}  // namespace

MineStats mine_correct(const std::string& doc_id, const std::string& text, MemoryStore& store,
                       const Lexicon& lex, const SynonymTable& syn, const DeactivationSet& deact,
                       const DetectParams& p) {
  MineStats stats;
  auto sentences = tokenize(text, doc_id);
  stats.sentences = static_cast<int>(sentences.size());
  auto alerts = detect_sentences(sentences, lex, deact, syn, p);
  std::set<int> alerted;
  for (const auto& a : alerts) alerted.insert(a.sentence_index);
  stats.skipped = static_cast<int>(alerted.size());

  for (const auto& s : sentences) {
    if (alerted.count(s.index)) continue;
    size_t n = s.tokens.size();
    size_t i = 0;
    while (i < n) {
      const Token& t = s.tokens[i];
      bool q = !is_punct_token(t.surface) &&
               (is_numeral(t.lemma) || comparator_lemmas().count(t.lemma) > 0 ||
                lex.is_unit_noun(t.lemma));
      if (!q) {
        ++i;
        continue;
      }
      size_t j = i;
      bool core = false;
      while (j < n) {
        const Token& u = s.tokens[j];
        if (is_punct_token(u.surface)) break;
        bool uq = is_numeral(u.lemma) || comparator_lemmas().count(u.lemma) > 0 ||
                  lex.is_unit_noun(u.lemma);
        if (!uq) break;
        core |= is_numeral(u.lemma) || lex.is_unit_noun(u.lemma);
        ++j;
      }
      if (!core) {
        i = j;
        continue;
      }
      size_t begin = i;
      if (begin > 0 && leading_preps().count(s.tokens[begin - 1].lemma) &&
          !is_punct_token(s.tokens[begin - 1].surface)) {
        --begin;
      }
      TokenSpan span{begin, j};
      std::vector<std::string> surfaces;
      for (size_t t2 = begin; t2 < j; ++t2) surfaces.push_back(s.tokens[t2].surface);
      std::string rtext = join(surfaces, " ");
      Context ctx = quantity_context(s, span, lex, p.context_size);

      ++stats.found;
      bool merged = false;
      for (auto& m : store.realizations) {
        if (m.text == rtext && context_match(itemless(ctx), itemless(m.context),
                                             p.context_match_k, syn)) {
          ++m.count;
          m.seq = store.next_seq();
          merged = true;
          break;
        }
      }
      if (!merged) {
        CorrectRealization m;
        m.id = "m" + std::to_string(store.next_realization_id());
        m.seq = store.next_seq();
        m.context = ctx;
        m.text = rtext;
        m.count = 1;
        store.realizations.push_back(std::move(m));
        ++stats.fresh;
      }
      i = j;
    }
  }
  return stats;
}

void rank_fillers(std::vector<FillerChoice>& fillers) {
  std::sort(fillers.begin(), fillers.end(), [](const FillerChoice& a, const FillerChoice& b) {
    if (a.freq != b.freq) return a.freq > b.freq;
    if (a.last_seq != b.last_seq) return a.last_seq > b.last_seq;
    return a.text < b.text;
  });
}

namespace {

void merge_filler(std::vector<FillerChoice>& pool, const std::string& text, int freq,
                  int64_t last_seq, const std::vector<std::string>& sources) {
  for (auto& f : pool) {
    if (f.text == text) {
      f.freq += freq;
      f.last_seq = std::max(f.last_seq, last_seq);
      f.sources.insert(f.sources.end(), sources.begin(), sources.end());
      return;
    }
  }
  pool.push_back(FillerChoice{text, freq, last_seq, sources});
}

}  // namespace

std::vector<Suggestion> suggest_for_alert(const Alert& alert, const Sentence& s,
                                          const MemoryStore& store, const DerivedTables& derived,
                                          const Catalog& catalog, const Lexicon& lex,
                                          const SynonymTable& syn, int k) {
  std::vector<Suggestion> out;
  for (const CorrectionPattern* p : catalog.applicable(alert.item_lemma, alert.category)) {
    MatchBinding m = match_pattern(*p, s, alert.span, lex);
    if (!m.matched) continue;

    Suggestion sug;
    sug.alert_id = alert.id;
    sug.pattern_id = p->id;
    sug.has_slot = p->has_slot();
    if (sug.has_slot) {
      sug.slot = p->first_slot();
      for (const auto& e : derived.recommendations) {
        if (e.pattern_id == p->id && e.item_lemma == alert.item_lemma &&
            context_match(alert.context, e.repr, k, syn)) {
          merge_filler(sug.fillers, e.text, e.freq, e.last_seq, e.sources);
        }
      }
      for (const auto& r : store.realizations) {
        if (!slot_accepts(sug.slot, r.text, lex)) continue;
        if (!context_match(itemless(alert.context), itemless(r.context), k, syn)) continue;
        merge_filler(sug.fillers, r.text, r.count, r.seq, {r.id});
      }
      rank_fillers(sug.fillers);
    }
    std::map<SlotType, std::string> fill;
    if (sug.has_slot && !sug.fillers.empty()) fill[sug.slot] = sug.fillers.front().text;
    sug.text = render_plain(apply_pattern(*p, s, m, fill).tokens);
    out.push_back(std::move(sug));
  }

  std::vector<FillerChoice> raw_pool;
  for (const auto& e : derived.raw) {
    if (e.item_lemma == alert.item_lemma && context_match(alert.context, e.repr, k, syn)) {
      merge_filler(raw_pool, e.text, e.freq, e.last_seq, e.sources);
    }
  }
  if (!raw_pool.empty()) {
    rank_fillers(raw_pool);
    Suggestion sug;
    sug.alert_id = alert.id;
    sug.pattern_id = "-";
    std::vector<std::string> surfaces;
    for (const auto& t : s.tokens) surfaces.push_back(t.surface);
    sug.text = render_plain(surfaces);
    sug.fillers = std::move(raw_pool);
    out.push_back(std::move(sug));
  }
  return out;
}

std::vector<Suggestion> suggest_for_sentence(const Sentence& s, const Catalog& catalog,
                                             const Lexicon& lex) {
  std::vector<Suggestion> out;
  for (const CorrectionPattern* p : catalog.sentence_patterns()) {
    MatchBinding m = match_sentence_pattern(*p, s, lex);
    if (!m.matched) continue;
    Suggestion sug;
    sug.alert_id = "-";
    sug.pattern_id = p->id;
    sug.has_slot = p->has_slot();
    if (sug.has_slot) sug.slot = p->first_slot();
    sug.text = render_plain(apply_pattern(*p, s, m, {}).tokens);
    out.push_back(std::move(sug));
  }
  return out;
}

}  // namespace fuzzlint
