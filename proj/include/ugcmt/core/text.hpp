#pragma once

// UTF-8 and Unicode helpers shared by every module. Case mappings are the
// one-to-one "simple" mappings so that lowercasing and recasing never change
// the number of code points; full_lower() is the exception, used where a
// reference tool applies full mappings (BLEU case folding).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ugcmt::text {

/// Decodes UTF-8. Throws DataError naming the byte offset of the first
/// ill-formed sequence.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

/// Byte offset of the first ill-formed UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

bool is_nfc(std::string_view utf8);
std::string to_nfc(std::string_view utf8);

/// First code point of the canonical decomposition ("é" -> 'e').
char32_t base_letter(char32_t cp);

bool is_upper(char32_t cp);  // uppercase or titlecase letter
bool is_lower(char32_t cp);
inline bool is_cased(char32_t cp) { return is_upper(cp) || is_lower(cp); }
bool is_letter(char32_t cp);
bool is_alnum(char32_t cp);
bool is_punct(char32_t cp);
bool is_space(char32_t cp);

/// Pictographic emoji (Extended_Pictographic or Emoji_Presentation); plain
/// digits, '#' and '*' are not counted even though they carry Emoji=Yes.
bool is_emoji(char32_t cp);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

std::string lower(std::string_view utf8);
std::string upper(std::string_view utf8);
/// First cased letter upper, every other cased letter lower.
std::string title(std::string_view utf8);
/// Full Unicode lowercase mapping (ICU root locale).
std::string full_lower(std::string_view utf8);

/// Splits on Unicode White_Space; no empty tokens.
std::vector<std::string_view> split_whitespace(std::string_view utf8);

/// Counts whitespace-separated tokens without materializing them.
std::size_t count_words(std::string_view utf8);

/// Joins with a single separator.
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace ugcmt::text
