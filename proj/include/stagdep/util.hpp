// Shared utilities: deterministic RNG, string helpers, error types.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stagdep {

// Malformed or inconsistent input data (bad CoNLL files, misaligned
// corpora, unusable configs).  The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// splitmix64.  Hand-rolled so shuffles and draws are bit-identical across
// platforms and standard library versions; <random> distributions are not.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).  n must be positive.
  uint64_t below(uint64_t n) { return next() % n; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  uint64_t state_;
};

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// UTF-8 aware affixes; n counts code points, not bytes.
int utf8_length(std::string_view s);
std::string utf8_prefix(std::string_view s, int n);
std::string utf8_suffix(std::string_view s, int n);

uint64_t fnv1a64(std::string_view s);
std::string hex16(uint64_t v);

// Shortest exact decimal for a double (round-trips via strtod).
std::string format_double(double v);
// Fraction rendered as a percentage with two decimals, e.g. 0.8097 -> "80.97".
std::string format_pct(double fraction);
// Signed variant for deltas, e.g. "+18.92" / "-0.31".
std::string format_pct_signed(double fraction);

}  // namespace stagdep
