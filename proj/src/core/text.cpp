#include "ugcmt/core/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fmt/format.h>

#include "ugcmt/core/error.hpp"

namespace ugcmt::text {
namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

const icu::Normalizer2& nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
  return *n;
}

template <class Fn>
std::string map_code_points(std::string_view utf8, Fn&& fn) {
  std::string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto len = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < len) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, len, c);
    if (c < 0) {
      throw DataError(fmt::format("invalid UTF-8 at byte offset {}", start));
    }
    append_utf8(out, fn(static_cast<char32_t>(c)));
  }
  return out;
}

inline bool ascii_space(unsigned char b) {
  return b == ' ' || (b >= '\t' && b <= '\r');
}

}  // namespace

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto len = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < len) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, len, c);
    if (c < 0) {
      throw DataError(fmt::format("invalid UTF-8 at byte offset {}", start));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string to_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) append_utf8(out, c);
  return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto len = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < len) {
    if (s[i] < 0x80) {
      ++i;
      continue;
    }
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, len, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::nullopt;
}

bool is_nfc(std::string_view utf8) {
  bool ascii = true;
  for (unsigned char b : utf8) {
    if (b >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return true;
  UErrorCode status = U_ZERO_ERROR;
  const auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  const bool ok = nfc().isNormalized(u, status);
  return U_SUCCESS(status) && ok;
}

std::string to_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString out = nfc().normalize(u, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

char32_t base_letter(char32_t cp) {
  if (cp < 0xC0) return cp;
  icu::UnicodeString d;
  if (!nfd().getDecomposition(static_cast<UChar32>(cp), d) || d.isEmpty()) {
    return cp;
  }
  return static_cast<char32_t>(d.char32At(0));
}

bool is_upper(char32_t cp) {
  return u_isUUppercase(static_cast<UChar32>(cp)) ||
         u_istitle(static_cast<UChar32>(cp));
}
bool is_lower(char32_t cp) { return u_isULowercase(static_cast<UChar32>(cp)); }
bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }
bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }
bool is_punct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }
bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_emoji(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  if (c < 0x80) return false;
  return u_hasBinaryProperty(c, UCHAR_EXTENDED_PICTOGRAPHIC) ||
         u_hasBinaryProperty(c, UCHAR_EMOJI_PRESENTATION);
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

char32_t to_upper(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') ? cp - 32 : cp;
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(cp)));
}

std::string lower(std::string_view utf8) {
  return map_code_points(utf8, [](char32_t c) { return to_lower(c); });
}

std::string upper(std::string_view utf8) {
  return map_code_points(utf8, [](char32_t c) { return to_upper(c); });
}

std::string title(std::string_view utf8) {
  bool seen_cased = false;
  return map_code_points(utf8, [&](char32_t c) {
    if (!is_cased(c)) return c;
    if (!seen_cased) {
      seen_cased = true;
      return to_upper(c);
    }
    return to_lower(c);
  });
}

std::string full_lower(std::string_view utf8) {
  auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u.toLower(icu::Locale::getRoot());
  std::string out;
  u.toUTF8String(out);
  return out;
}

template <class Sink>
static void scan_words(std::string_view utf8, Sink&& sink) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto len = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  int32_t word_start = -1;
  while (i < len) {
    const int32_t start = i;
    bool space;
    if (s[i] < 0x80) {
      space = ascii_space(s[i]);
      ++i;
    } else {
      UChar32 c;
      U8_NEXT(s, i, len, c);
      space = c >= 0 && u_isUWhiteSpace(c);
    }
    if (space) {
      if (word_start >= 0) {
        sink(utf8.substr(word_start, start - word_start));
        word_start = -1;
      }
    } else if (word_start < 0) {
      word_start = start;
    }
  }
  if (word_start >= 0) sink(utf8.substr(word_start));
}

std::vector<std::string_view> split_whitespace(std::string_view utf8) {
  std::vector<std::string_view> out;
  scan_words(utf8, [&](std::string_view w) { out.push_back(w); });
  return out;
}

std::size_t count_words(std::string_view utf8) {
  std::size_t n = 0;
  scan_words(utf8, [&](std::string_view) { ++n; });
  return n;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace ugcmt::text
