#pragma once

// Case handling for NMT data: mixed-case splitting, inline casing
// (lowercased pieces followed by <T>/<U> tags), factored casing (parallel
// form and tag streams), synthetic case noise and case-variant test sets.
//
// A "unit" is a single-case token, i.e. the output of split_mixed_case().
// Units that came from the same whitespace word are glued: only the first
// unit of a non-initial word carries the word-boundary marker.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt::casing {

enum class CaseTag { kLower, kUpper, kTitle };

/// "<L>", "<U>", "<T>".
std::string_view tag_token(CaseTag tag);
std::optional<CaseTag> parse_tag_token(std::string_view token);
/// "L", "U", "T" (factored tag streams).
std::string_view tag_letter(CaseTag tag);
CaseTag parse_tag_letter(std::string_view letter);

struct CaseFactoredToken {
  std::string form;  // no uppercase letters
  CaseTag tag = CaseTag::kLower;

  friend bool operator==(const CaseFactoredToken&, const CaseFactoredToken&) = default;
};

struct CaseNoiseProfile {
  double p_upper = 0.05;
  double p_title = 0.10;
  double p_lower = 0.20;
  std::uint64_t seed = 0;

  /// Throws ConfigError unless every probability is in [0,1] and they sum
  /// to at most 1.
  void validate() const;
};

/// Splits before an uppercase letter whose previous cased letter is
/// lowercase ("MacDonalds" -> Mac|Donalds), and before the last capital of
/// an uppercase run that continues in lowercase ("HTMLParser" ->
/// HTML|Parser). Every piece is single-case; the pieces concatenate to the
/// input.
std::vector<std::string> split_mixed_case(std::string_view token);

bool is_single_case(std::string_view token);

/// UPPER iff at least two cased letters, all uppercase; TITLE iff the first
/// cased letter is uppercase and the rest lowercase (a lone capital is
/// TITLE); LOWER otherwise, including tokens without cased letters. Throws
/// ContractError on mixed-case input.
CaseTag classify_case(std::string_view token);

/// Applies `tag` to a lowercase form.
std::string recase(std::string_view form, CaseTag tag);

/// Whole-token markup such as a corpus tag ("<PE>") or the rare-character
/// placeholder ("<x>"): '<', an ASCII letter, ASCII letters, digits, '_' or
/// '-', then '>'. The case tags themselves are excluded. Every transform in
/// this module passes reserved tokens through unchanged.
bool is_reserved_token(std::string_view token);

/// One single-case unit after segmentation. Pieces may be given in any case;
/// encoders lowercase them unless the unit is verbatim (a reserved token).
struct CasedWord {
  std::vector<std::string> pieces;
  CaseTag tag = CaseTag::kLower;
  bool verbatim = false;
};

/// Subword segmenter applied to each lowercased unit. The default keeps the
/// unit whole.
using Segmenter = std::function<std::vector<std::string>(std::string_view)>;

struct SegmentOptions {
  std::string marker = "▁";  // word-boundary mark on the first piece
  Segmenter segmenter;
};

/// Whitespace words -> mixed-case split -> classify -> segment. The first
/// unit of every non-initial whitespace word gets the boundary marker.
std::vector<CasedWord> analyze(std::string_view sentence,
                               const SegmentOptions& options = {});

/// Pieces lowercased, each non-lowercase unit followed by <T> or <U>. <L> is
/// dropped except after a lowercase unit that is directly followed by a glued
/// unit of the same word (e.g. "iPhone"), where it is the only separator.
std::vector<std::string> encode_inline(std::span<const CasedWord> words,
                                       std::string_view marker = "▁");

/// Inverse of encode_inline. Tags with no preceding piece (leading or
/// consecutive) are ignored with a warning.
std::string decode_inline(std::span<const std::string> tokens,
                          std::string_view marker = "▁");

std::string encode_inline_text(std::string_view sentence,
                               const SegmentOptions& options = {});
std::string decode_inline_text(std::string_view stream,
                               std::string_view marker = "▁");

struct FactoredStreams {
  std::vector<std::string> forms;
  std::vector<CaseTag> tags;
};

/// One tag per piece. UPPER units tag every piece UPPER; TITLE units tag the
/// piece holding the first cased letter TITLE and the rest LOWER.
FactoredStreams encode_factored(std::span<const CasedWord> words);
std::vector<CaseFactoredToken> to_tokens(const FactoredStreams& streams);

/// Throws DataError when the streams differ in length.
std::string decode_factored(std::span<const std::string> forms,
                            std::span<const CaseTag> tags,
                            std::string_view marker = "▁");

/// Text form of the factored streams: (space-joined forms, space-joined tag
/// letters).
std::pair<std::string, std::string> encode_factored_text(
    std::string_view sentence, const SegmentOptions& options = {});
std::string decode_factored_text(std::string_view forms, std::string_view tags,
                                 std::string_view marker = "▁");

enum class NoiseChoice { kKeep, kUpper, kTitle, kLower };

/// The draw for one token, keyed by (seed, sentence index, token index).
NoiseChoice case_noise_choice(const CaseNoiseProfile& profile,
                              std::uint64_t sentence_index,
                              std::uint64_t token_index);

/// Rewrites whitespace tokens independently; separators are preserved.
std::string apply_case_noise(std::string_view sentence,
                             const CaseNoiseProfile& profile,
                             std::uint64_t sentence_index);

/// Whole-sentence case transform used for case-variant test sets. TITLE
/// title-cases every whitespace token.
std::string apply_case_mode(std::string_view sentence, CaseTag mode);

/// Rewrites the source side only.
std::vector<SentencePair> make_case_variant_testset(
    std::vector<SentencePair> corpus, CaseTag mode);

}  // namespace ugcmt::casing
