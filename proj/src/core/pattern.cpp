#include "pattern.hpp"

#include <algorithm>
#include <set>

#include "util.hpp"

namespace fuzzlint {

namespace {

const char* const kSlotNames[] = {"value",    "interval", "time",      "time_interval",
                                  "distance", "warning",  "paraphrase"};

// Rewrites the writers actually make, distilled into default patterns.
// $item copies the occurrence's surface so sentence-initial capitals
// survive; bare words on the right are emitted as written.
const char* kBuiltins = R"(
P-few: ["a few" X:noun] -> [less than <value> $X]
P-most: [most X:noun] -> [more than <value> $X]
P-regularly: [regularly V:verb(action)] -> [every <time> $V]
P-frequently: [frequently V:verb(action)] -> [every <time> $V]
P-prog: [progressively V:verb(durative) G:gap(0,4) $end] -> [$item $V $G <time_interval>]
P-carefully-warn: [carefully V:verb(action) G:gap(0,5) $end] -> [$item $V $G <warning>]
P-carefully-skip: [carefully $end] -> []
P-near: [near G:gap(0,2) L:noun(location)] -> [less than <distance> from $G $L]
P-around: [around G:gap(0,2) L:noun(location)] -> [within <distance> of $G $L]
P-about: [about N:number] -> [between <interval>]
P-adj-para: [@item(convenient|specific|acceptable|appropriate|adapted|suitable|easy|normal) G:gap(0,2) X:noun] -> [$G $X <paraphrase>]
P-adj-erase: [@item(special|basic) G:gap(0,2) X:noun] -> [$G $X]
P-shall-purpose: [X:gap(1,8) shall Y:gap(1,10) C:purpose Z:gap(1,12) $end] -> [$X shall $Y . The goal is to $Z]
)";

const std::vector<std::vector<std::string>>& purpose_connectives() {
  static const std::vector<std::vector<std::string>> conns = {
      {"in", "order", "to"}, {"so", "as", "to"}, {"so", "that"}};
  return conns;
}

const std::set<std::string>& time_unit_lemmas() {
  static const std::set<std::string> units = {"second", "sec", "minute",      "min",  "mn",
                                              "mns",    "hour", "hr",          "day",  "week",
                                              "month",  "year", "millisecond", "ms"};
  return units;
}

const std::set<std::string>& distance_unit_lemmas() {
  static const std::set<std::string> units = {"meter", "metre",      "km",   "mm",  "cm",
                                              "inch",  "foot",       "feet", "ft",  "mile",
                                              "yard",  "millimeter", "nm",   "centimeter"};
  return units;
}

struct RawTok {
  std::string text;
  bool quoted = false;
};

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line_no) + ": " + msg);
}

std::vector<RawTok> split_quoted(const std::string& s, const std::string& origin, int line_no) {
  std::vector<RawTok> out;
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] == '"') {
      size_t j = s.find('"', i + 1);
      if (j == std::string::npos) fail(origin, line_no, "unterminated quote");
      out.push_back({s.substr(i + 1, j - i - 1), true});
      i = j + 1;
      continue;
    }
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({s.substr(i, j - i), false});
    i = j;
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

const char* to_string(SlotType t) { return kSlotNames[static_cast<int>(t)]; }

std::optional<SlotType> slot_type_from(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kSlotNames[i]) return static_cast<SlotType>(i);
  }
  return std::nullopt;
}

bool CorrectionPattern::applies_to(const std::string& lemma, FuzzyCategory cat) const {
  if (sentence_level) return false;
  if (item_category && *item_category == cat) return true;
  return std::find(item_lemmas.begin(), item_lemmas.end(), lemma) != item_lemmas.end();
}

bool CorrectionPattern::has_slot() const {
  for (const auto& e : rhs) {
    if (e.kind == RhsElem::Kind::slot) return true;
  }
  return false;
}

SlotType CorrectionPattern::first_slot() const {
  for (const auto& e : rhs) {
    if (e.kind == RhsElem::Kind::slot) return e.slot;
  }
  return SlotType::value;
}

int CorrectionPattern::specificity() const {
  int literals = 0, constrained = 0;
  for (const auto& e : lhs) {
    switch (e.kind) {
      case PatternElem::Kind::literal:
      case PatternElem::Kind::purpose:
        ++literals;
        break;
      case PatternElem::Kind::item:
        if (!e.text.empty()) ++literals;
        break;
      case PatternElem::Kind::cat_var:
        if (!e.any_pos || !e.features.empty()) ++constrained;
        break;
      default:
        break;
    }
  }
  // An item anchored on concrete lemmas is tighter than a category anchor.
  if (!item_lemmas.empty()) ++literals;
  return literals * 100 + constrained * 10 + static_cast<int>(lhs.size());
}

std::string CorrectionPattern::source_line() const {
  // Good enough for warnings; not meant to round-trip.
  return id;
}

CorrectionPattern parse_pattern_line(const std::string& line, const std::string& origin,
                                     int line_no) {
  CorrectionPattern p;
  size_t colon = line.find(':');
  if (colon == std::string::npos) fail(origin, line_no, "expected \"id: [lhs] -> [rhs]\"");
  p.id = trim(line.substr(0, colon));
  if (p.id.empty()) fail(origin, line_no, "empty pattern id");
  for (char c : p.id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      fail(origin, line_no, "bad character in pattern id \"" + p.id + "\"");
    }
  }
  std::string rest = line.substr(colon + 1);
  size_t l1 = rest.find('[');
  size_t r1 = rest.find(']', l1 == std::string::npos ? 0 : l1);
  if (l1 == std::string::npos || r1 == std::string::npos) {
    fail(origin, line_no, "missing [...] left side");
  }
  size_t arrow = rest.find("->", r1);
  size_t l2 = rest.find('[', arrow == std::string::npos ? r1 : arrow);
  size_t r2 = rest.rfind(']');
  if (arrow == std::string::npos || l2 == std::string::npos || r2 == std::string::npos ||
      r2 <= l2) {
    fail(origin, line_no, "missing \"-> [...]\" right side");
  }

  auto lhs_toks = split_quoted(rest.substr(l1 + 1, r1 - l1 - 1), origin, line_no);
  auto rhs_toks = split_quoted(rest.substr(l2 + 1, r2 - l2 - 1), origin, line_no);

  bool have_anchor = false;
  std::vector<std::string> var_names;
  for (size_t idx = 0; idx < lhs_toks.size(); ++idx) {
    const RawTok& rt = lhs_toks[idx];
    PatternElem e;
    if (!rt.quoted && rt.text == "$end") {
      e.kind = PatternElem::Kind::boundary;
      p.lhs.push_back(e);
      continue;
    }
    if (!rt.quoted && rt.text.rfind("@item(", 0) == 0 && rt.text.back() == ')') {
      if (have_anchor) fail(origin, line_no, "more than one item anchor");
      have_anchor = true;
      e.kind = PatternElem::Kind::item;
      std::string spec = rt.text.substr(6, rt.text.size() - 7);
      if (spec.rfind("cat=", 0) == 0) {
        auto cat = fuzzy_category_from(spec.substr(4));
        if (!cat) fail(origin, line_no, "unknown category in @item: \"" + spec.substr(4) + "\"");
        p.item_category = *cat;
      } else {
        for (auto& alt : split(spec, '|')) {
          std::string lemma = to_lower(trim(alt));
          if (lemma.empty()) fail(origin, line_no, "empty lemma in @item list");
          p.item_lemmas.push_back(lemma);
        }
        if (p.item_lemmas.empty()) fail(origin, line_no, "empty @item list");
      }
      p.lhs.push_back(e);
      continue;
    }
    if (!rt.quoted) {
      size_t colon2 = rt.text.find(':');
      if (colon2 != std::string::npos && colon2 > 0) {
        e.name = rt.text.substr(0, colon2);
        if (!valid_name(e.name)) fail(origin, line_no, "bad variable name \"" + e.name + "\"");
        std::string spec = rt.text.substr(colon2 + 1);
        std::vector<std::string> args;
        size_t paren = spec.find('(');
        if (paren != std::string::npos) {
          if (spec.back() != ')') fail(origin, line_no, "missing ')' in \"" + rt.text + "\"");
          for (auto& a : split(spec.substr(paren + 1, spec.size() - paren - 2), ',')) {
            args.push_back(trim(a));
          }
          spec = spec.substr(0, paren);
        }
        if (spec == "gap") {
          e.kind = PatternElem::Kind::gap;
          if (args.size() != 2) fail(origin, line_no, "gap needs (min,max)");
          try {
            e.gap_min = std::stoi(args[0]);
            e.gap_max = std::stoi(args[1]);
          } catch (...) {
            fail(origin, line_no, "gap bounds must be numbers");
          }
          if (e.gap_min < 0 || e.gap_max < e.gap_min || e.gap_max > 30) {
            fail(origin, line_no, "gap bounds out of range");
          }
        } else if (spec == "purpose") {
          e.kind = PatternElem::Kind::purpose;
        } else if (spec == "any") {
          e.kind = PatternElem::Kind::cat_var;
          e.any_pos = true;
        } else {
          auto pos = pos_from(spec);
          if (!pos) fail(origin, line_no, "unknown word class \"" + spec + "\"");
          e.kind = PatternElem::Kind::cat_var;
          e.pos = *pos;
          e.features = args;
        }
        var_names.push_back(e.name);
        p.lhs.push_back(e);
        continue;
      }
    }
    // Bare or quoted words: the leading element names the item the pattern
    // rewrites; anywhere else they are fixed words.
    if (idx == 0) {
      have_anchor = true;
      e.kind = PatternElem::Kind::item;
      e.text = to_lower(rt.text);
      p.item_lemmas.push_back(to_lower(rt.text));
      p.lhs.push_back(e);
    } else {
      for (auto& w : split_ws(rt.text)) {
        PatternElem lit;
        lit.kind = PatternElem::Kind::literal;
        lit.text = to_lower(w);
        p.lhs.push_back(lit);
      }
    }
  }
  p.sentence_level = !have_anchor;
  if (p.lhs.empty()) fail(origin, line_no, "empty left side");

  for (const RawTok& rt : rhs_toks) {
    if (!rt.quoted && rt.text.size() >= 2 && rt.text.front() == '<' && rt.text.back() == '>') {
      auto slot = slot_type_from(rt.text.substr(1, rt.text.size() - 2));
      if (!slot) fail(origin, line_no, "unknown slot type " + rt.text);
      RhsElem e;
      e.kind = RhsElem::Kind::slot;
      e.slot = *slot;
      p.rhs.push_back(e);
      continue;
    }
    if (!rt.quoted && rt.text.size() >= 2 && rt.text[0] == '$') {
      std::string name = rt.text.substr(1);
      bool known = name == "item"
                       ? have_anchor
                       : std::find(var_names.begin(), var_names.end(), name) != var_names.end();
      if (!known) fail(origin, line_no, "$" + name + " does not name a left-side variable");
      RhsElem e;
      e.kind = RhsElem::Kind::copy;
      e.var = name;
      p.rhs.push_back(e);
      continue;
    }
    for (auto& w : split_ws(rt.text)) {
      RhsElem e;
      e.kind = RhsElem::Kind::literal;
      e.text = w;
      p.rhs.push_back(e);
    }
  }
  return p;
}

Catalog Catalog::builtins() {
  Catalog c;
  c.merge_text(kBuiltins, "builtin");
  return c;
}

void Catalog::merge_text(const std::string& text, const std::string& origin) {
  int line_no = 0;
  for (auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    CorrectionPattern p = parse_pattern_line(line, origin, line_no);
    bool replaced = false;
    for (auto& prev : patterns_) {
      if (prev.id == p.id) {
        warnings_.push_back("pattern " + p.id + " redefined by " + origin + ":" +
                            std::to_string(line_no));
        prev = p;
        replaced = true;
        break;
      }
    }
    if (!replaced) patterns_.push_back(std::move(p));
  }
}

void Catalog::merge_file(const std::string& path) { merge_text(read_file(path), path); }

std::vector<const CorrectionPattern*> Catalog::applicable(const std::string& lemma,
                                                          FuzzyCategory cat) const {
  std::vector<const CorrectionPattern*> out;
  for (const auto& p : patterns_) {
    if (p.applies_to(lemma, cat)) out.push_back(&p);
  }
  std::sort(out.begin(), out.end(), [](const CorrectionPattern* a, const CorrectionPattern* b) {
    int sa = a->specificity(), sb = b->specificity();
    if (sa != sb) return sa > sb;
    return a->id < b->id;
  });
  return out;
}

std::vector<const CorrectionPattern*> Catalog::sentence_patterns() const {
  std::vector<const CorrectionPattern*> out;
  for (const auto& p : patterns_) {
    if (p.sentence_level) out.push_back(&p);
  }
  return out;
}

namespace {

struct Matcher {
  const Sentence& s;
  const Lexicon& lex;
  MatchBinding* out;

  bool token_is(const PatternElem& e, size_t pos) const {
    const Token& t = s.tokens[pos];
    return t.lemma == e.text || to_lower(t.surface) == e.text;
  }

  bool noun_here(size_t pos) const {
    const Token& t = s.tokens[pos];
    if (is_punct_token(t.surface) || lex.is_stopword(t.surface) || is_numeral(t.lemma)) {
      return false;
    }
    for (const auto& we : lex.categorize(t.surface)) {
      if (we.pos == Pos::noun) return true;
    }
    return false;
  }

  bool entry_fits(const PatternElem& e, size_t pos) const {
    const Token& t = s.tokens[pos];
    if (is_punct_token(t.surface)) return false;
    if (e.any_pos) return true;
    if (e.pos == Pos::number) return is_numeral(t.lemma);
    for (const auto& we : lex.categorize(t.surface)) {
      if (we.pos != e.pos) continue;
      bool all = true;
      for (const auto& f : e.features) all &= we.has_feature(f);
      if (all) return true;
    }
    return false;
  }

  bool noun_run_fits(const PatternElem& e, size_t pos, size_t len) const {
    if (e.features.empty()) return true;
    const Token& head = s.tokens[pos + len - 1];
    for (const auto& we : lex.categorize(head.surface)) {
      if (we.pos != Pos::noun) continue;
      bool all = true;
      for (const auto& f : e.features) all &= we.has_feature(f);
      if (all) return true;
    }
    return false;
  }

  bool match_from(const std::vector<PatternElem>& elems, size_t idx, size_t pos) {
    if (idx == elems.size()) {
      out->end = pos;
      return true;
    }
    const PatternElem& e = elems[idx];
    size_t n = s.tokens.size();
    switch (e.kind) {
      case PatternElem::Kind::literal:
        return pos < n && token_is(e, pos) && match_from(elems, idx + 1, pos + 1);
      case PatternElem::Kind::boundary: {
        for (size_t j = pos; j < n; ++j) {
          if (!is_punct_token(s.tokens[j].surface)) return false;
        }
        return match_from(elems, idx + 1, pos);
      }
      case PatternElem::Kind::gap: {
        for (int len = e.gap_min; len <= e.gap_max; ++len) {
          if (pos + len > n) break;
          out->vars[e.name] = TokenSpan{pos, pos + len};
          if (match_from(elems, idx + 1, pos + len)) return true;
        }
        out->vars.erase(e.name);
        return false;
      }
      case PatternElem::Kind::purpose: {
        for (const auto& conn : purpose_connectives()) {
          if (pos + conn.size() > n) continue;
          bool ok = true;
          for (size_t j = 0; j < conn.size() && ok; ++j) {
            ok = s.tokens[pos + j].lemma == conn[j] ||
                 to_lower(s.tokens[pos + j].surface) == conn[j];
          }
          if (!ok) continue;
          out->vars[e.name] = TokenSpan{pos, pos + conn.size()};
          if (match_from(elems, idx + 1, pos + conn.size())) return true;
        }
        out->vars.erase(e.name);
        return false;
      }
      case PatternElem::Kind::cat_var: {
        if (pos >= n) return false;
        if (e.pos == Pos::noun && !e.any_pos) {
          size_t run = 0;
          while (pos + run < n && noun_here(pos + run)) ++run;
          for (size_t len = run; len >= 1; --len) {
            if (!noun_run_fits(e, pos, len)) continue;
            out->vars[e.name] = TokenSpan{pos, pos + len};
            if (match_from(elems, idx + 1, pos + len)) return true;
          }
          out->vars.erase(e.name);
          return false;
        }
        if (!entry_fits(e, pos)) return false;
        out->vars[e.name] = TokenSpan{pos, pos + 1};
        return match_from(elems, idx + 1, pos + 1);
      }
      case PatternElem::Kind::item:
        return false;  // handled by the caller's split around the anchor
    }
    return false;
  }

  // Mirror image for the elements before the anchor: pos is an exclusive
  // right edge moving left.
  bool match_back(const std::vector<PatternElem>& elems, size_t idx, size_t pos) {
    if (idx == elems.size()) {
      out->begin = pos;
      return true;
    }
    const PatternElem& e = elems[idx];
    switch (e.kind) {
      case PatternElem::Kind::literal:
        return pos > 0 && token_is(e, pos - 1) && match_back(elems, idx + 1, pos - 1);
      case PatternElem::Kind::gap: {
        for (int len = e.gap_min; len <= e.gap_max; ++len) {
          if (len > static_cast<int>(pos)) break;
          out->vars[e.name] = TokenSpan{pos - len, pos};
          if (match_back(elems, idx + 1, pos - len)) return true;
        }
        out->vars.erase(e.name);
        return false;
      }
      case PatternElem::Kind::cat_var: {
        if (pos == 0) return false;
        if (e.pos == Pos::noun && !e.any_pos) {
          size_t run = 0;
          while (run < pos && noun_here(pos - run - 1)) ++run;
          for (size_t len = run; len >= 1; --len) {
            if (!noun_run_fits(e, pos - len, len)) continue;
            out->vars[e.name] = TokenSpan{pos - len, pos};
            if (match_back(elems, idx + 1, pos - len)) return true;
          }
          out->vars.erase(e.name);
          return false;
        }
        if (!entry_fits(e, pos - 1)) return false;
        out->vars[e.name] = TokenSpan{pos - 1, pos};
        return match_back(elems, idx + 1, pos - 1);
      }
      case PatternElem::Kind::purpose: {
        for (const auto& conn : purpose_connectives()) {
          if (conn.size() > pos) continue;
          size_t start = pos - conn.size();
          bool ok = true;
          for (size_t j = 0; j < conn.size() && ok; ++j) {
            ok = s.tokens[start + j].lemma == conn[j] ||
                 to_lower(s.tokens[start + j].surface) == conn[j];
          }
          if (!ok) continue;
          out->vars[e.name] = TokenSpan{start, pos};
          if (match_back(elems, idx + 1, start)) return true;
        }
        out->vars.erase(e.name);
        return false;
      }
      case PatternElem::Kind::boundary:
        // A left-edge boundary: nothing but punctuation may precede.
        for (size_t j = 0; j < pos; ++j) {
          if (!is_punct_token(s.tokens[j].surface)) return false;
        }
        return match_back(elems, idx + 1, pos);
      case PatternElem::Kind::item:
        return false;
    }
    return false;
  }
};

}  // namespace

MatchBinding match_pattern(const CorrectionPattern& p, const Sentence& s, TokenSpan item,
                           const Lexicon& lex) {
  MatchBinding m;
  if (p.sentence_level) return m;
  size_t anchor = p.lhs.size();
  for (size_t i = 0; i < p.lhs.size(); ++i) {
    if (p.lhs[i].kind == PatternElem::Kind::item) anchor = i;
  }
  if (anchor == p.lhs.size()) return m;

  Matcher mm{s, lex, &m};
  m.item = item;
  std::vector<PatternElem> post(p.lhs.begin() + anchor + 1, p.lhs.end());
  std::vector<PatternElem> pre(p.lhs.rend() - anchor, p.lhs.rend());
  m.begin = item.begin;
  m.end = item.end;
  if (!mm.match_from(post, 0, item.end)) return m;
  if (!mm.match_back(pre, 0, item.begin)) return m;
  m.matched = true;
  return m;
}

MatchBinding match_sentence_pattern(const CorrectionPattern& p, const Sentence& s,
                                    const Lexicon& lex) {
  MatchBinding m;
  if (!p.sentence_level) return m;
  Matcher mm{s, lex, &m};
  for (size_t start = 0; start <= s.tokens.size(); ++start) {
    m.vars.clear();
    if (mm.match_from(p.lhs, 0, start)) {
      m.begin = start;
      m.matched = true;
      return m;
    }
  }
  return m;
}

AppliedPattern apply_pattern(const CorrectionPattern& p, const Sentence& s, const MatchBinding& m,
                             const std::map<SlotType, std::string>& fillers) {
  AppliedPattern out;
  for (size_t i = 0; i < m.begin; ++i) out.tokens.push_back(s.tokens[i].surface);
  out.revised.begin = out.tokens.size();
  for (const auto& e : p.rhs) {
    switch (e.kind) {
      case RhsElem::Kind::literal:
        out.tokens.push_back(e.text);
        break;
      case RhsElem::Kind::copy: {
        TokenSpan span = e.var == "item" ? m.item : m.vars.at(e.var);
        for (size_t i = span.begin; i < span.end; ++i) out.tokens.push_back(s.tokens[i].surface);
        break;
      }
      case RhsElem::Kind::slot: {
        auto it = fillers.find(e.slot);
        if (it != fillers.end() && !it->second.empty()) {
          for (auto& w : split_ws(it->second)) out.tokens.push_back(w);
        } else {
          out.tokens.push_back(std::string("⟨") + to_string(e.slot) + "⟩");
        }
        break;
      }
    }
  }
  out.revised.end = out.tokens.size();
  for (size_t i = m.end; i < s.tokens.size(); ++i) out.tokens.push_back(s.tokens[i].surface);
  return out;
}

std::string render_plain(const std::vector<std::string>& tokens) {
  static const std::set<std::string> no_space_before = {".", ",", "!", "?", ";", ":", ")"};
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty() && !no_space_before.count(t) && out.back() != '(') out.push_back(' ');
    out += t;
  }
  return out;
}

bool slot_accepts(SlotType t, const std::string& text, const Lexicon& lex) {
  (void)lex;
  auto words = split_ws(text);
  if (words.empty()) return false;
  std::vector<std::string> lemmas;
  for (auto& w : words) lemmas.push_back(lemmatize(w));
  bool any_number = false;
  for (auto& l : lemmas) any_number |= is_numeral(l);
  auto contains_unit = [&](const std::set<std::string>& units) {
    for (auto& l : lemmas) {
      if (units.count(l)) return true;
    }
    return false;
  };
  switch (t) {
    case SlotType::value: {
      for (auto& l : lemmas) {
        if (!is_numeral(l)) return false;
      }
      return true;
    }
    case SlotType::interval: {
      bool connective = false;
      for (auto& l : lemmas) connective |= l == "to" || l == "and" || l == "between";
      return any_number && connective;
    }
    case SlotType::time:
    case SlotType::time_interval:
      return contains_unit(time_unit_lemmas());
    case SlotType::distance:
      return contains_unit(distance_unit_lemmas());
    case SlotType::warning:
    case SlotType::paraphrase:
      return false;
  }
  return false;
}

std::vector<std::string> Catalog::overlap_warnings(const std::vector<Sentence>& docs,
                                                   const Lexicon& lex) const {
  std::vector<std::string> out;
  DeactivationSet none;
  SynonymTable no_syn;
  DetectParams dp;
  auto alerts = detect_sentences(docs, lex, none, no_syn, dp);
  for (const auto& a : alerts) {
    const Sentence& s = docs[a.sentence_index];
    std::vector<const CorrectionPattern*> hits;
    for (const CorrectionPattern* p : applicable(a.item_lemma, a.category)) {
      if (match_pattern(*p, s, a.span, lex).matched) hits.push_back(p);
    }
    for (size_t i = 0; i + 1 < hits.size(); ++i) {
      if (hits[i]->specificity() == hits[i + 1]->specificity()) {
        out.push_back("patterns " + hits[i]->id + " and " + hits[i + 1]->id +
                      " match \"" + a.item_lemma + "\" in sentence " +
                      std::to_string(a.sentence_index) + " with equal specificity");
      }
    }
  }
  return out;
}

}  // namespace fuzzlint
