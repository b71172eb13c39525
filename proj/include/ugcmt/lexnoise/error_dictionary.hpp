#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ugcmt/lexnoise/lexicon.hpp"

namespace ugcmt::lexnoise {

struct Variant {
  std::string text;
  std::uint64_t count = 0;

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Correct spelling -> observed variants with counts. After finalize() every
/// list is sorted by descending count (ties by text).
class ErrorDictionary {
 public:
  struct Entry {
    std::vector<Variant> variants;
    std::uint64_t total = 0;
  };

  /// Ignores variant == correct and count == 0.
  void add(std::string_view correct, std::string_view variant, std::uint64_t count = 1);
  void merge(const ErrorDictionary& other);
  void finalize();

  const Entry* find(std::string_view correct) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }

  /// Samples a variant with probability proportional to its count, from a
  /// uniform integer r in [0, total).
  static const Variant& pick(const Entry& entry, std::uint64_t r);

  /// "correct<TAB>variant:count;variant:count" per line.
  std::string format() const;
  static ErrorDictionary parse(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static ErrorDictionary load(const std::filesystem::path& path);

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

/// Variant -> correct pairs that resolve a fuzzy-match tie in favour of a
/// phonetic spelling ("sa" -> "ça").
using PhoneticTable = std::vector<std::pair<std::string, std::string>>;

const PhoneticTable& builtin_phonetic_table();

struct DictionaryBuildOptions {
  unsigned max_dist = 2;
  unsigned threads = 1;
  const PhoneticTable* phonetic = &builtin_phonetic_table();
};

/// For every out-of-lexicon token with at least one fuzzy match, credits the
/// top-ranked candidate with one observation of that token. Tokens without
/// letters and tokens containing ';', ':' or a tab are not counted.
ErrorDictionary build_error_dictionary(std::span<const std::string> corpus,
                                       const Lexicon& lexicon,
                                       const DictionaryBuildOptions& options = {});

}  // namespace ugcmt::lexnoise
