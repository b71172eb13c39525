#include "ugcmt/lexnoise/noise.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

#include "ugcmt/casing.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"
#include "ugcmt/lexnoise/tokens.hpp"

namespace ugcmt::lexnoise {

void NoiseConfig::validate() const {
  if (!(token_rate >= 0.0 && token_rate <= 1.0)) {
    throw ConfigError(fmt::format("token rate {} outside [0,1]", token_rate));
  }
}

namespace {

struct Eligible {
  std::size_t token_index;
  WordToken token;
  const ErrorDictionary::Entry* entry;
  casing::CaseTag tag;
};

std::vector<Eligible> eligible_tokens(std::string_view sentence, const ErrorDictionary* dict) {
  std::vector<Eligible> out;
  if (dict == nullptr || dict->empty()) return out;
  const auto tokens = tokenize_words(sentence);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto& tok = tokens[t];
    if (!tok.has_letter || casing::is_reserved_token(tok.token(sentence))) continue;
    const auto core = tok.core(sentence);
    if (!casing::is_single_case(core)) continue;
    const auto* entry = dict->find(text::lower(core));
    if (entry == nullptr || entry->total == 0) continue;
    out.push_back({t, tok, entry, casing::classify_case(core)});
  }
  return out;
}

std::string apply_rules(std::string_view s, const NoiseConfig& config, std::uint64_t pair) {
  if (!config.rules || config.rules->inert()) return std::string(s);
  return config.rules->apply(s, CounterRng(config.seed), pair);
}

// Smallest replacement draw among eligible tokens; 2.0 when none.
double min_draw(std::string_view sentence, const NoiseConfig& config, std::uint64_t pair) {
  const CounterRng rng(config.seed);
  double m = 2.0;
  for (const auto& e : eligible_tokens(sentence, config.dictionary.get())) {
    m = std::min(m, rng.uniform(rng_stream::kTokenReplace, pair, e.token_index));
  }
  return m;
}

}  // namespace

NoisedSentence inject_noise(std::string_view sentence, const NoiseConfig& config,
                            std::uint64_t pair_index) {
  std::string out;
  if (config.token_rate > 0.0) {
    const CounterRng rng(config.seed);
    std::size_t pos = 0;
    out.reserve(sentence.size() + 8);
    for (const auto& e : eligible_tokens(sentence, config.dictionary.get())) {
      if (rng.uniform(rng_stream::kTokenReplace, pair_index, e.token_index) >= config.token_rate) {
        continue;
      }
      const auto r = rng.below(e.entry->total, rng_stream::kVariantPick, pair_index, e.token_index);
      const auto& variant = ErrorDictionary::pick(*e.entry, r);
      out.append(sentence.substr(pos, e.token.core_begin - pos));
      out += casing::recase(variant.text, e.tag);
      pos = e.token.core_end;
    }
    out.append(sentence.substr(pos));
  } else {
    out.assign(sentence);
  }
  out = apply_rules(out, config, pair_index);
  const bool modified = out != sentence;
  return {std::move(out), modified};
}

double modified_fraction(std::span<const std::string> sentences, const NoiseConfig& config,
                         unsigned threads) {
  if (sentences.empty()) return 0.0;
  std::vector<char> flags(sentences.size());
  parallel_for(sentences.size(), threads, [&](std::size_t i) {
    flags[i] = inject_noise(sentences[i], config, i).modified;
  });
  return static_cast<double>(std::count(flags.begin(), flags.end(), 1)) /
         static_cast<double>(sentences.size());
}

CalibrationResult calibrate_rate(const NoiseConfig& config, std::span<const std::string> sample,
                                 double target, double tolerance, unsigned threads) {
  config.validate();
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ConfigError(fmt::format("calibration target {} outside [0,1]", target));
  }
  if (sample.empty()) throw ConfigError("calibration sample is empty");

  CalibrationResult res;
  if (target == 0.0) {
    res.rules_disabled = true;
    return res;
  }

  // Per sentence: does rule noise alone modify it, and below which rate does
  // at least one token get replaced.
  const std::size_t n = sample.size();
  std::vector<char> by_rules(n);
  std::vector<double> threshold(n);
  NoiseConfig no_tokens = config;
  no_tokens.token_rate = 0.0;
  parallel_for(n, threads, [&](std::size_t i) {
    by_rules[i] = inject_noise(sample[i], no_tokens, i).modified;
    threshold[i] = min_draw(sample[i], config, i);
  });
  auto predicted = [&](double rate) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += (by_rules[i] || threshold[i] < rate) ? 1 : 0;
    return static_cast<double>(k) / static_cast<double>(n);
  };

  NoiseConfig probe = config;
  probe.token_rate = 0.0;
  res.min_rate = modified_fraction(sample, probe, threads);
  probe.token_rate = 1.0;
  res.max_rate = modified_fraction(sample, probe, threads);
  if (res.max_rate + tolerance < target) {
    throw ConfigError(fmt::format(
        "target sentence rate {:.4f} is unreachable: at most {:.4f} of the sample can be "
        "modified with this dictionary and rule set",
        target, res.max_rate));
  }
  if (res.min_rate - tolerance > target) {
    throw ConfigError(fmt::format(
        "target sentence rate {:.4f} is unreachable: the rules alone modify {:.4f} of the "
        "sample; lower the rule probabilities",
        target, res.min_rate));
  }

  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (predicted(mid) < target ? lo : hi) = mid;
  }
  // Either side of the crossing may be closer to the target.
  res.token_rate = std::abs(predicted(lo) - target) < std::abs(predicted(hi) - target) ? lo : hi;
  probe.token_rate = res.token_rate;
  res.measured_rate = modified_fraction(sample, probe, threads);
  log::info("calibrated", {{"token_rate", res.token_rate},
                           {"target", target},
                           {"measured", res.measured_rate},
                           {"min", res.min_rate},
                           {"max", res.max_rate},
                           {"sample", n}});
  return res;
}

NoisifyResult noisify_corpus(std::span<const SentencePair> pairs, const NoiseConfig& config,
                             unsigned threads) {
  config.validate();
  NoisifyResult res;
  res.pairs.assign(pairs.begin(), pairs.end());
  std::vector<char> flags(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    auto noised = inject_noise(pairs[i].src, config, i);
    res.pairs[i].src = std::move(noised.text);
    flags[i] = noised.modified;
  });
  res.modified.assign(flags.begin(), flags.end());
  res.modified_count = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
  return res;
}

}  // namespace ugcmt::lexnoise
