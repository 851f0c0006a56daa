#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace liftc {

// Unbounded integers everywhere (interpreter and SMT side agree on the
// integer theory). mpz_class division/modulo truncate toward zero, which is
// the division model this project fixes.
using Int = mpz_class;

struct SourceLoc {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

// Base for all diagnosable failures carrying a program point.
class Diagnostic : public std::runtime_error {
 public:
  Diagnostic(std::string kind, std::string msg, SourceLoc loc = {})
      : std::runtime_error(format(kind, msg, loc)),
        kind_(std::move(kind)),
        loc_(loc) {}
  const std::string& kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }

 private:
  static std::string format(const std::string& kind, const std::string& msg,
                            SourceLoc loc) {
    std::string s;
    if (loc.valid()) s += loc.str() + ": ";
    s += kind + ": " + msg;
    return s;
  }
  std::string kind_;
  SourceLoc loc_;
};

// Deterministic 64-bit string hash (FNV-1a).
inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

// Seedable PRNG with a fixed algorithm (splitmix64) so generated states,
// benchmarks and reports are byte-identical across platforms and runs.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n), n > 0.
  uint64_t below(uint64_t n) { return next() % n; }
  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

 private:
  uint64_t state_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Diagnostic("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Diagnostic("IoError", "cannot write " + path);
  out << content;
}

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    std::string line(s.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    start = nl + 1;
  }
  return out;
}

// Collapses all whitespace runs to single spaces and trims; used for the
// "modulo whitespace" golden comparisons.
inline std::string normalize_ws(std::string_view s) {
  std::string out;
  bool in_ws = true;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!in_ws) out.push_back(' ');
      in_ws = true;
    } else {
      out.push_back(c);
      in_ws = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace liftc
