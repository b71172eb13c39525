#include "ugcmt/lexnoise/tokens.hpp"

#include <unicode/utf8.h>

#include "ugcmt/core/text.hpp"

namespace ugcmt::lexnoise {

std::vector<WordToken> tokenize_words(std::string_view sentence) {
  std::vector<WordToken> out;
  const auto* s = reinterpret_cast<const uint8_t*>(sentence.data());
  for (auto tok : text::split_whitespace(sentence)) {
    WordToken w;
    w.token_begin = static_cast<std::size_t>(tok.data() - sentence.data());
    w.token_end = w.token_begin + tok.size();
    // Code-point boundaries and punctuation flags of the token.
    std::vector<std::size_t> starts;
    std::vector<bool> punct;
    auto i = static_cast<int32_t>(w.token_begin);
    const auto end = static_cast<int32_t>(w.token_end);
    while (i < end) {
      starts.push_back(static_cast<std::size_t>(i));
      UChar32 c;
      U8_NEXT(s, i, end, c);
      punct.push_back(c >= 0 && text::is_punct(static_cast<char32_t>(c)));
      if (c >= 0 && text::is_letter(static_cast<char32_t>(c))) w.has_letter = true;
    }
    starts.push_back(w.token_end);
    std::size_t lo = 0;
    std::size_t hi = punct.size();
    while (lo < hi && punct[lo]) ++lo;
    while (hi > lo && punct[hi - 1]) --hi;
    w.core_begin = starts[lo];
    w.core_end = starts[hi];
    out.push_back(w);
  }
  return out;
}

}  // namespace ugcmt::lexnoise
