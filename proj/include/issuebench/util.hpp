#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace issuebench {

using Json = nlohmann::ordered_json;

// --- files ---

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);
/// Write via a temp file in the same directory, then rename. A reader never
/// observes a half-written file.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value, int indent = 2);

// --- strings ---

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool contains_ci(std::string_view haystack, std::string_view needle);

/// Substitute every occurrence of "{key}" for each (key, value) pair, scanning
/// the template left to right exactly once. Substituted values are never
/// rescanned, so braces inside values survive untouched. Throws if a key never
/// occurs in the template.
std::string render_template(std::string_view tmpl,
                            const std::vector<std::pair<std::string, std::string>>& vars);

// --- hashing ---

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& path);

// --- deterministic RNG ---

/// splitmix64: tiny, seedable, identical output on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, bound) via rejection sampling; exact, no modulo bias.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// FNV-1a over bytes; used to derive per-item RNG streams from (seed, key).
std::uint64_t fnv1a64(std::string_view data);

// --- percent rendering ---

/// Tenths of a percent for num/den, rounded half away from zero, in exact
/// integer arithmetic (e.g. 1546/4598 -> 336).
long long percent_tenths(long long num, long long den);
/// "336" -> "33.6"
std::string format_tenths(long long tenths);
/// Convenience: percent string with one decimal for the fraction num/den.
std::string format_percent(long long num, long long den);

/// Fixed-point decimal string with the given number of fractional digits,
/// rounded half away from zero. Used everywhere a float reaches a report file.
std::string format_fixed(double value, int digits);

// --- time ---

std::string utc_timestamp();

}  // namespace issuebench
