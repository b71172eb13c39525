#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ugcmt::lexnoise {

/// A whitespace token with leading and trailing punctuation peeled off.
/// Offsets are bytes into the sentence; `core` may be empty (pure
/// punctuation).
struct WordToken {
  std::size_t token_begin = 0;
  std::size_t token_end = 0;
  std::size_t core_begin = 0;
  std::size_t core_end = 0;
  bool has_letter = false;

  std::string_view core(std::string_view sentence) const {
    return sentence.substr(core_begin, core_end - core_begin);
  }
  std::string_view token(std::string_view sentence) const {
    return sentence.substr(token_begin, token_end - token_begin);
  }
};

std::vector<WordToken> tokenize_words(std::string_view sentence);

}  // namespace ugcmt::lexnoise
