#include "core/util.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fuzzlint {

std::string to_lower(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(c < 0x80 ? char(std::tolower(c)) : char(c));
  return out;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace((unsigned char)s[b])) ++b;
  while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_word_byte(unsigned char c) {
  // Bytes >= 0x80 (UTF-8 continuations and lead bytes) stay inside tokens.
  return std::isalnum(c) || c >= 0x80;
}

bool is_digit_byte(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  size_t i = 0, n = s.size();
  if (s.back() == '%') --n;
  if (n == 0) return false;
  bool seen_digit = false, seen_sep = false;
  for (; i < n; ++i) {
    unsigned char c = s[i];
    if (is_digit_byte(c)) {
      seen_digit = true;
    } else if ((c == '.' || c == ',') && seen_digit && !seen_sep && i + 1 < n) {
      seen_sep = true;
    } else {
      return false;
    }
  }
  return seen_digit;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + tmp);
    out.write(content.data(), (std::streamsize)content.size());
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("rename failed: " + tmp + " -> " + path);
  }
}

}  // namespace fuzzlint
