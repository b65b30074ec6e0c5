#ifndef FUZZLINT_CORE_KV_HPP
#define FUZZLINT_CORE_KV_HPP

// Line-delimited key=value record encoding shared by the memory store and
// the report writers.  A line is
//
//   type key1=value1 key2="quoted value" ...
//
// Bare values may contain [A-Za-z0-9_.:%+/-]; anything else is quoted with
// backslash escapes for '"' and '\\'.  The writer is canonical (fixed field
// order, deterministic quoting) so serialize -> parse -> serialize is
// byte-identical.

#include <string>
#include <utility>
#include <vector>

namespace fuzzlint {

struct KvLine {
  std::string type;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string* find(const std::string& key) const;
  /// Missing key raises ParseError mentioning the record type.
  const std::string& need(const std::string& key) const;
  int need_int(const std::string& key) const;
};

class KvWriter {
 public:
  explicit KvWriter(std::string type) : line_(std::move(type)) {}
  KvWriter& field(const std::string& key, const std::string& value);
  KvWriter& field(const std::string& key, long long value);
  /// Forces quoting even for bare-safe values (text payloads).
  KvWriter& text_field(const std::string& key, const std::string& value);
  std::string str() const { return line_; }

 private:
  std::string line_;
};

bool kv_value_is_bare(const std::string& v);
std::string kv_quote(const std::string& v);

KvLine parse_kv_line(const std::string& line);

}  // namespace fuzzlint

#endif
