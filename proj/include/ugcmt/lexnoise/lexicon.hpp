#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ugcmt/lexnoise/edit_distance.hpp"

namespace ugcmt::lexnoise {

struct Candidate {
  std::string word;
  unsigned distance = 0;
  std::vector<EditOperation> ops;
  std::uint64_t frequency = 0;
};

/// Lowercase NFC word list compiled into a character trie. Fuzzy lookup
/// walks the trie carrying one dynamic-programming row per depth and prunes
/// subtrees that can no longer come within the distance bound.
class Lexicon {
 public:
  Lexicon() = default;

  /// Entries are NFC-normalized and lowercased; duplicate forms sum their
  /// frequencies. Throws ConfigError on an empty list.
  static Lexicon from_entries(const std::vector<std::pair<std::string, std::uint64_t>>& entries);
  static Lexicon from_words(const std::vector<std::string>& words);

  /// One word per line, optionally followed by a tab and a frequency.
  static Lexicon load(const std::filesystem::path& path);

  bool contains(std::string_view lowercase_word) const;
  std::uint64_t frequency(std::string_view lowercase_word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::string>& words() const { return words_; }

  /// Every entry within `max_dist` of `observed` (already lowercased), sorted
  /// by distance, then frequency (descending), then code-point order.
  std::vector<Candidate> search(std::u32string_view observed, unsigned max_dist,
                                const EditOptions& options = {}) const;

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> children;  // sorted
    std::int32_t word = -1;
  };

  void insert(std::u32string_view word, std::int32_t id);

  std::vector<Node> nodes_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> freq_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t max_len_ = 0;
};

/// Lexicon lookup for an out-of-lexicon word. The word is lowercased first;
/// passing an in-lexicon word is a ContractError.
std::vector<Candidate> fuzzy_match(std::string_view word, const Lexicon& lexicon,
                                   unsigned max_dist = 2);

}  // namespace ugcmt::lexnoise
