#pragma once

// Rare characters are replaced by the placeholder "<x>" before translation
// and put back, in source order, after decoding.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt::rarechar {

inline constexpr std::string_view kPlaceholder = "<x>";
inline constexpr std::uint64_t kDefaultMinCount = 100;

struct CharCensus {
  std::unordered_map<char32_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(std::string_view utf8);
  /// Tallies are mergeable, so shards can be counted independently.
  void merge(const CharCensus& other);
  /// (char, count) sorted by count descending, then code point.
  std::vector<std::pair<char32_t, std::uint64_t>> sorted() const;
};

/// Exact character frequencies over both sides of the corpus.
CharCensus census(std::span<const SentencePair> corpus);

/// Tab-separated "char<TAB>count" lines, most frequent first.
std::string format_census(const CharCensus& census);
CharCensus parse_census(std::string_view tsv);

class Charset {
 public:
  Charset() = default;
  explicit Charset(std::unordered_set<char32_t> chars) : chars_(std::move(chars)) {}

  /// Whitespace and the characters of the placeholder and its escape are
  /// always retained.
  bool contains(char32_t c) const;
  std::size_t size() const { return chars_.size(); }
  const std::unordered_set<char32_t>& chars() const { return chars_; }

 private:
  std::unordered_set<char32_t> chars_;
};

/// Characters with count >= min_count. min_count must be >= 1.
Charset build_charset(const CharCensus& census, std::uint64_t min_count = kDefaultMinCount);

/// One removed character plus whether masking padded its placeholder with a
/// space on the left/right.
struct SavedChar {
  char32_t ch = 0;
  bool space_left = false;
  bool space_right = false;

  friend bool operator==(const SavedChar&, const SavedChar&) = default;
};

struct PlaceholderRecord {
  std::string masked;
  std::vector<SavedChar> saved;
};

/// Replaces every character outside `charset` with a space-delimited "<x>".
/// Literal "<x>" in the input is escaped as "<\x>" (and "<\x>" as "<\\x>").
PlaceholderRecord mask(std::string_view sentence, const Charset& charset);

/// Number of "<x>" placeholders in `text` (escaped forms excluded).
std::size_t count_placeholders(std::string_view text);

struct RestoreResult {
  std::string text;
  std::size_t missing = 0;  // saved characters with no placeholder left
  std::size_t surplus = 0;  // placeholders with no saved character
};

/// Puts saved characters back into the i-th placeholder, removing the spaces
/// masking injected. Count mismatches are warnings, never errors.
RestoreResult restore(std::string_view output, std::span<const SavedChar> saved);

/// Sidecar line: one entry per saved character, tab-separated. An entry is
/// the character, optionally followed by a space and the injected-space
/// flags ("L", "R" or "LR").
std::string format_sidecar(std::span<const SavedChar> saved);
std::vector<SavedChar> parse_sidecar(std::string_view line);

}  // namespace ugcmt::rarechar
