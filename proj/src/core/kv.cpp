#include "core/kv.hpp"

#include <cctype>

#include "core/util.hpp"

namespace fuzzlint {

const std::string* KvLine::find(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

const std::string& KvLine::need(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ParseError("record '" + type + "' is missing field '" + key + "'");
  return *v;
}

int KvLine::need_int(const std::string& key) const {
  const std::string& v = need(key);
  try {
    size_t pos = 0;
    int n = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParseError("record '" + type + "': field '" + key + "' is not an integer: " + v);
  }
}

bool kv_value_is_bare(const std::string& v) {
  if (v.empty()) return false;
  for (unsigned char c : v) {
    if (std::isalnum(c)) continue;
    switch (c) {
      case '_': case '.': case ':': case '%': case '+': case '-': case '/':
        continue;
      default:
        return false;
    }
  }
  return true;
}

std::string kv_quote(const std::string& v) {
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

KvWriter& KvWriter::field(const std::string& key, const std::string& value) {
  line_ += ' ';
  line_ += key;
  line_ += '=';
  line_ += kv_value_is_bare(value) ? value : kv_quote(value);
  return *this;
}

KvWriter& KvWriter::field(const std::string& key, long long value) {
  return field(key, std::to_string(value));
}

KvWriter& KvWriter::text_field(const std::string& key, const std::string& value) {
  line_ += ' ';
  line_ += key;
  line_ += '=';
  line_ += kv_quote(value);
  return *this;
}

KvLine parse_kv_line(const std::string& line) {
  KvLine out;
  size_t i = 0, n = line.size();
  auto skip_ws = [&] { while (i < n && line[i] == ' ') ++i; };
  skip_ws();
  while (i < n && line[i] != ' ') out.type.push_back(line[i++]);
  if (out.type.empty()) throw ParseError("empty record line");
  skip_ws();
  while (i < n) {
    std::string key;
    while (i < n && line[i] != '=' && line[i] != ' ') key.push_back(line[i++]);
    if (i >= n || line[i] != '=' || key.empty())
      throw ParseError("malformed field in record '" + out.type + "' near offset " +
                       std::to_string(i));
    ++i;  // '='
    std::string value;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i++];
        if (c == '\\' && i < n) {
          value.push_back(line[i++]);
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value.push_back(c);
        }
      }
      if (!closed)
        throw ParseError("unterminated quoted value for '" + key + "' in record '" +
                         out.type + "'");
    } else {
      while (i < n && line[i] != ' ') value.push_back(line[i++]);
    }
    out.fields.emplace_back(key, value);
    skip_ws();
  }
  return out;
}

}  // namespace fuzzlint
