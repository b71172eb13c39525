#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ugcmt/core/corpus.hpp"
#include "ugcmt/lexnoise/error_dictionary.hpp"
#include "ugcmt/lexnoise/rules.hpp"

namespace ugcmt::lexnoise {

struct NoiseConfig {
  std::shared_ptr<const ErrorDictionary> dictionary;
  std::shared_ptr<const RuleSet> rules;
  double token_rate = 0.0;
  std::uint64_t seed = 0;

  /// Throws ConfigError when token_rate is outside [0,1].
  void validate() const;
};

struct NoisedSentence {
  std::string text;
  bool modified = false;
};

/// A token is eligible when its punctuation-peeled core is single-case and
/// its lowercase form has dictionary variants. Eligible token t of pair i is
/// replaced iff uniform(i, t) < token_rate; the variant is drawn in
/// proportion to its count and takes the case of the original. Rules run on
/// the result.
NoisedSentence inject_noise(std::string_view sentence, const NoiseConfig& config,
                            std::uint64_t pair_index);

struct CalibrationResult {
  double token_rate = 0.0;
  /// Fraction of sample sentences modified at token_rate, measured with a
  /// real injection pass.
  double measured_rate = 0.0;
  /// Fractions at token_rate 0 and 1.
  double min_rate = 0.0;
  double max_rate = 0.0;
  bool rules_disabled = false;
};

/// Bisects token_rate until the modified-sentence fraction on `sample` is
/// as close to `target` as the sample allows. Rule probabilities are held
/// fixed, except that target 0 returns rate 0 with every rule disabled.
/// Throws ConfigError when the target lies outside [min_rate - tolerance,
/// max_rate + tolerance].
CalibrationResult calibrate_rate(const NoiseConfig& config, std::span<const std::string> sample,
                                 double target = 0.30, double tolerance = 0.02,
                                 unsigned threads = 1);

struct NoisifyResult {
  std::vector<SentencePair> pairs;
  std::vector<bool> modified;
  std::size_t modified_count = 0;
};

/// Source side through inject_noise keyed by position in `pairs`; targets are
/// copied untouched.
NoisifyResult noisify_corpus(std::span<const SentencePair> pairs, const NoiseConfig& config,
                             unsigned threads = 1);

/// Fraction of sentences inject_noise modifies.
double modified_fraction(std::span<const std::string> sentences, const NoiseConfig& config,
                         unsigned threads = 1);

}  // namespace ugcmt::lexnoise
