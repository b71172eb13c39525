#include "ugcmt/casing.hpp"

#include <fmt/format.h>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/rng.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::casing {
namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return !prefix.empty() && s.substr(0, prefix.size()) == prefix;
}

// "<T>", "\<T>", "\\<T>", ... : the reserved tag literal behind k backslashes.
bool is_escaped_tag_shape(std::string_view s, std::size_t min_backslashes) {
  std::size_t k = 0;
  while (k < s.size() && s[k] == '\\') ++k;
  if (k < min_backslashes) return false;
  const auto rest = s.substr(k);
  return rest.size() == 3 && rest[0] == '<' && rest[2] == '>' &&
         (rest[1] == 'T' || rest[1] == 'U' || rest[1] == 'L');
}

std::string escape_piece(std::string s) {
  if (is_escaped_tag_shape(s, 0)) s.insert(s.begin(), '\\');
  return s;
}

std::string unescape_piece(std::string_view s) {
  if (is_escaped_tag_shape(s, 1)) return std::string(s.substr(1));
  return std::string(s);
}

std::size_t count_cased(std::string_view s) {
  std::size_t n = 0;
  for (char32_t c : text::to_u32(s)) n += text::is_cased(c);
  return n;
}

// A lone capital is classified TITLE but encoded as UPPER.
CaseTag effective_tag(const CasedWord& w) {
  if (w.verbatim) return CaseTag::kLower;
  if (w.tag != CaseTag::kTitle) return w.tag;
  std::size_t cased = 0;
  for (const auto& p : w.pieces) cased += count_cased(p);
  return cased == 1 ? CaseTag::kUpper : CaseTag::kTitle;
}

std::string replace_markers(std::string s, std::string_view marker) {
  if (marker.empty()) return s;
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  for (;;) {
    const auto hit = s.find(marker, pos);
    if (hit == std::string::npos) {
      out.append(s, pos, std::string::npos);
      break;
    }
    out.append(s, pos, hit - pos);
    out.push_back(' ');
    pos = hit + marker.size();
  }
  if (!out.empty() && out.front() == ' ') out.erase(out.begin());
  return out;
}

std::vector<std::string> split_tokens(std::string_view stream) {
  std::vector<std::string> out;
  for (auto t : text::split_whitespace(stream)) out.emplace_back(t);
  return out;
}

}  // namespace

std::string_view tag_token(CaseTag tag) {
  switch (tag) {
    case CaseTag::kLower:
      return "<L>";
    case CaseTag::kUpper:
      return "<U>";
    case CaseTag::kTitle:
      return "<T>";
  }
  return "<L>";
}

std::optional<CaseTag> parse_tag_token(std::string_view token) {
  if (token == "<L>") return CaseTag::kLower;
  if (token == "<U>") return CaseTag::kUpper;
  if (token == "<T>") return CaseTag::kTitle;
  return std::nullopt;
}

std::string_view tag_letter(CaseTag tag) {
  switch (tag) {
    case CaseTag::kLower:
      return "L";
    case CaseTag::kUpper:
      return "U";
    case CaseTag::kTitle:
      return "T";
  }
  return "L";
}

CaseTag parse_tag_letter(std::string_view letter) {
  if (letter == "L") return CaseTag::kLower;
  if (letter == "U") return CaseTag::kUpper;
  if (letter == "T") return CaseTag::kTitle;
  throw DataError(fmt::format("unknown case tag '{}'", letter));
}

void CaseNoiseProfile::validate() const {
  for (double p : {p_upper, p_title, p_lower}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(fmt::format("case-noise probability {} outside [0,1]", p));
    }
  }
  if (p_upper + p_title + p_lower > 1.0 + 1e-12) {
    throw ConfigError(fmt::format(
        "case-noise probabilities sum to {} > 1", p_upper + p_title + p_lower));
  }
}

// ------------------------------------------------------------- split/classify

std::vector<std::string> split_mixed_case(std::string_view token) {
  const std::u32string cps = text::to_u32(token);
  std::vector<std::size_t> cased;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (text::is_cased(cps[i])) cased.push_back(i);
  }
  std::vector<std::size_t> cuts;
  for (std::size_t k = 1; k < cased.size(); ++k) {
    if (!text::is_upper(cps[cased[k]])) continue;
    const bool prev_lower = text::is_lower(cps[cased[k - 1]]);
    const bool run_ends = !prev_lower && k + 1 < cased.size() &&
                          text::is_lower(cps[cased[k + 1]]);
    if (prev_lower || run_ends) cuts.push_back(cased[k]);
  }
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t cut : cuts) {
    pieces.push_back(text::to_utf8(std::u32string_view(cps).substr(start, cut - start)));
    start = cut;
  }
  pieces.push_back(text::to_utf8(std::u32string_view(cps).substr(start)));
  return pieces;
}

namespace {

std::optional<CaseTag> try_classify(std::string_view token) {
  std::size_t n = 0;
  std::size_t uppers = 0;
  bool first_upper = false;
  bool rest_lower = true;
  for (char32_t c : text::to_u32(token)) {
    if (!text::is_cased(c)) continue;
    const bool up = text::is_upper(c);
    if (n == 0) {
      first_upper = up;
    } else if (up) {
      rest_lower = false;
    }
    uppers += up;
    ++n;
  }
  if (n == 0 || uppers == 0) return CaseTag::kLower;
  if (uppers == n) return n >= 2 ? CaseTag::kUpper : CaseTag::kTitle;
  if (first_upper && rest_lower) return CaseTag::kTitle;
  return std::nullopt;
}

}  // namespace

bool is_single_case(std::string_view token) {
  return try_classify(token).has_value();
}

CaseTag classify_case(std::string_view token) {
  if (auto t = try_classify(token)) return *t;
  throw ContractError(fmt::format(
      "'{}' is mixed-case; split it with split_mixed_case first", token));
}

std::string recase(std::string_view form, CaseTag tag) {
  switch (tag) {
    case CaseTag::kLower:
      return std::string(form);
    case CaseTag::kUpper:
      return text::upper(form);
    case CaseTag::kTitle:
      return text::title(form);
  }
  return std::string(form);
}

// ------------------------------------------------------------------- analyze

bool is_reserved_token(std::string_view token) {
  if (token.size() < 3 || token.front() != '<' || token.back() != '>') return false;
  if (parse_tag_token(token)) return false;
  const auto name = token.substr(1, token.size() - 2);
  const auto ascii_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!ascii_alpha(name.front())) return false;
  for (char c : name) {
    if (!ascii_alpha(c) && !(c >= '0' && c <= '9') && c != '_' && c != '-') return false;
  }
  return true;
}

std::vector<CasedWord> analyze(std::string_view sentence,
                               const SegmentOptions& options) {
  std::vector<CasedWord> out;
  bool first_word = true;
  for (auto word : text::split_whitespace(sentence)) {
    if (is_reserved_token(word)) {
      CasedWord w;
      w.verbatim = true;
      w.pieces.push_back((first_word ? "" : options.marker) + std::string(word));
      out.push_back(std::move(w));
      first_word = false;
      continue;
    }
    bool first_unit = true;
    for (auto& unit : split_mixed_case(word)) {
      CasedWord w;
      w.tag = classify_case(unit);
      const std::string lowered = text::lower(unit);
      if (options.segmenter) {
        w.pieces = options.segmenter(lowered);
      }
      if (w.pieces.empty()) w.pieces.push_back(lowered);
      if (first_unit && !first_word) w.pieces.front().insert(0, options.marker);
      first_unit = false;
      out.push_back(std::move(w));
    }
    first_word = false;
  }
  return out;
}

// -------------------------------------------------------------------- inline

std::vector<std::string> encode_inline(std::span<const CasedWord> words,
                                       std::string_view marker) {
  if (marker.empty()) throw ConfigError("word-boundary marker must be non-empty");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& w = words[k];
    if (w.pieces.empty()) continue;
    for (const auto& p : w.pieces) out.push_back(w.verbatim ? p : escape_piece(text::lower(p)));
    const CaseTag tag = effective_tag(w);
    if (tag != CaseTag::kLower) {
      out.emplace_back(tag_token(tag));
    } else if (k + 1 < words.size() && !words[k + 1].pieces.empty() &&
               !starts_with(words[k + 1].pieces.front(), marker)) {
      out.emplace_back(tag_token(CaseTag::kLower));
    }
  }
  return out;
}

std::string decode_inline(std::span<const std::string> tokens,
                          std::string_view marker) {
  std::string out;
  std::string unit;
  bool unit_open = false;
  bool prev_was_tag = false;
  auto flush = [&](CaseTag tag) {
    out += recase(unit, tag);
    unit.clear();
    unit_open = false;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (auto tag = parse_tag_token(tok)) {
      if (!unit_open) {
        log::warn("inline_tag_ignored",
                  {{"position", i},
                   {"tag", tok},
                   {"reason", prev_was_tag ? "consecutive" : "leading"}});
      } else {
        flush(*tag);
      }
      prev_was_tag = true;
      continue;
    }
    prev_was_tag = false;
    if (unit_open && starts_with(tok, marker)) flush(CaseTag::kLower);
    unit += unescape_piece(tok);
    unit_open = true;
  }
  if (unit_open) flush(CaseTag::kLower);
  return replace_markers(std::move(out), marker);
}

std::string encode_inline_text(std::string_view sentence,
                               const SegmentOptions& options) {
  const auto words = analyze(sentence, options);
  return text::join(encode_inline(words, options.marker), " ");
}

std::string decode_inline_text(std::string_view stream, std::string_view marker) {
  return decode_inline(split_tokens(stream), marker);
}

// ------------------------------------------------------------------ factored

FactoredStreams encode_factored(std::span<const CasedWord> words) {
  FactoredStreams s;
  for (const auto& w : words) {
    const CaseTag tag = effective_tag(w);
    bool title_placed = false;
    for (const auto& p : w.pieces) {
      std::string form = w.verbatim ? p : escape_piece(text::lower(p));
      CaseTag t = CaseTag::kLower;
      if (tag == CaseTag::kUpper) {
        t = CaseTag::kUpper;
      } else if (tag == CaseTag::kTitle && !title_placed && count_cased(form) > 0) {
        t = CaseTag::kTitle;
        title_placed = true;
      }
      s.forms.push_back(std::move(form));
      s.tags.push_back(t);
    }
  }
  return s;
}

std::vector<CaseFactoredToken> to_tokens(const FactoredStreams& streams) {
  std::vector<CaseFactoredToken> out;
  out.reserve(streams.forms.size());
  for (std::size_t i = 0; i < streams.forms.size(); ++i) {
    out.push_back({streams.forms[i], streams.tags[i]});
  }
  return out;
}

std::string decode_factored(std::span<const std::string> forms,
                            std::span<const CaseTag> tags,
                            std::string_view marker) {
  if (forms.size() != tags.size()) {
    throw DataError(fmt::format("factored streams differ in length: {} forms, {} tags",
                                forms.size(), tags.size()));
  }
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out += recase(unescape_piece(forms[i]), tags[i]);
  }
  return replace_markers(std::move(out), marker);
}

std::pair<std::string, std::string> encode_factored_text(
    std::string_view sentence, const SegmentOptions& options) {
  const auto words = analyze(sentence, options);
  const auto s = encode_factored(words);
  std::vector<std::string> letters;
  letters.reserve(s.tags.size());
  for (auto t : s.tags) letters.emplace_back(tag_letter(t));
  return {text::join(s.forms, " "), text::join(letters, " ")};
}

std::string decode_factored_text(std::string_view forms, std::string_view tags,
                                 std::string_view marker) {
  const auto f = split_tokens(forms);
  std::vector<CaseTag> t;
  for (auto letter : text::split_whitespace(tags)) t.push_back(parse_tag_letter(letter));
  return decode_factored(f, t, marker);
}

// --------------------------------------------------------------------- noise

NoiseChoice case_noise_choice(const CaseNoiseProfile& profile,
                              std::uint64_t sentence_index,
                              std::uint64_t token_index) {
  const double u = CounterRng(profile.seed)
                       .uniform(rng_stream::kCaseNoise, sentence_index, token_index);
  if (u < profile.p_upper) return NoiseChoice::kUpper;
  if (u < profile.p_upper + profile.p_title) return NoiseChoice::kTitle;
  if (u < profile.p_upper + profile.p_title + profile.p_lower) return NoiseChoice::kLower;
  return NoiseChoice::kKeep;
}

std::string apply_case_noise(std::string_view sentence,
                             const CaseNoiseProfile& profile,
                             std::uint64_t sentence_index) {
  std::string out;
  out.reserve(sentence.size());
  std::size_t pos = 0;
  std::uint64_t k = 0;
  for (auto tok : text::split_whitespace(sentence)) {
    const auto start = static_cast<std::size_t>(tok.data() - sentence.data());
    out.append(sentence.substr(pos, start - pos));
    const auto choice = case_noise_choice(profile, sentence_index, k++);
    switch (is_reserved_token(tok) ? NoiseChoice::kKeep : choice) {
      case NoiseChoice::kUpper:
        out += text::upper(tok);
        break;
      case NoiseChoice::kTitle:
        out += text::title(tok);
        break;
      case NoiseChoice::kLower:
        out += text::lower(tok);
        break;
      case NoiseChoice::kKeep:
        out.append(tok);
        break;
    }
    pos = start + tok.size();
  }
  out.append(sentence.substr(pos));
  return out;
}

std::string apply_case_mode(std::string_view sentence, CaseTag mode) {
  std::string out;
  std::size_t pos = 0;
  for (auto tok : text::split_whitespace(sentence)) {
    const auto start = static_cast<std::size_t>(tok.data() - sentence.data());
    out.append(sentence.substr(pos, start - pos));
    if (is_reserved_token(tok)) {
      out.append(tok);
    } else if (mode == CaseTag::kUpper) {
      out += text::upper(tok);
    } else if (mode == CaseTag::kLower) {
      out += text::lower(tok);
    } else {
      out += text::title(tok);
    }
    pos = start + tok.size();
  }
  out.append(sentence.substr(pos));
  return out;
}

std::vector<SentencePair> make_case_variant_testset(
    std::vector<SentencePair> corpus, CaseTag mode) {
  for (auto& p : corpus) p.src = apply_case_mode(p.src, mode);
  return corpus;
}

}  // namespace ugcmt::casing
