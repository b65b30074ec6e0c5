#ifndef FUZZLINT_CORE_UTIL_HPP
#define FUZZLINT_CORE_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzlint {

// Error taxonomy kept deliberately small: the C API maps each type
// to one status code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Another process holds the store lock.
struct LockedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// A named entity (deactivation id, ...) does not exist.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Operation not allowed in the current mode (e.g. writing read-only).
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Paired inputs that must line up do not (learns with uneven texts).
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_lower(const std::string& s);
std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::vector<std::string> split_ws(const std::string& s);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

bool is_word_byte(unsigned char c);
bool is_digit_byte(unsigned char c);

/// "30", "2.5", "65%", "10,5" count as numerals; "V1" does not.
bool is_numeral(const std::string& s);

std::uint64_t fnv1a64(const std::string& s);
std::string hex16(std::uint64_t v);

std::string read_file(const std::string& path);
/// Write via temp file + rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace fuzzlint

#endif
