#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugcmt::eval {

/// mteval-v13a tokenization as done by the reference scorer: unescape a few
/// entities, split ASCII symbols, split '.' and ',' unless between digits,
/// split '-' after a digit, then split on whitespace.
std::vector<std::string> tokenize_13a(std::string_view text);

/// Python str.isspace() for one code point.
bool is_python_space(char32_t cp);

inline constexpr int kBleuOrder = 4;

struct BleuConfig {
  bool case_sensitive = true;
  unsigned threads = 1;
};

struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> correct{};
  std::array<std::uint64_t, kBleuOrder> total{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  void merge(const BleuStats& other);
};

struct BleuResult {
  double score = 0.0;
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 0.0;
  BleuStats stats;
  std::string signature;
};

BleuStats sentence_stats(std::string_view hyp, std::string_view ref, const BleuConfig& config);

/// Exponential smoothing: the k-th order in a row with no matches gets
/// precision 1 / (2^k * total). No matches at any order scores 0.
BleuResult compute_bleu(const BleuStats& stats, const BleuConfig& config);

/// Throws DataError on unequal lengths or an empty corpus.
BleuResult corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                       const BleuConfig& config = {});

std::string bleu_signature(const BleuConfig& config);

/// "BLEU = 35.12 66.1/41.0/28.2/19.9 (BP = 1.000 ratio = 1.012 hyp_len = ...)"
std::string format_bleu(const BleuResult& result);

}  // namespace ugcmt::eval
