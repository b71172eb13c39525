#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>

#include "ugcmt/lexnoise/lexicon.hpp"

namespace ugcmt::lexnoise {

struct NoiseProfile {
  std::uint64_t tokens = 0;
  std::uint64_t emojis = 0;
  std::uint64_t allcaps = 0;
  std::uint64_t typos = 0;

  double emojis_per_100() const { return per_100(emojis); }
  double allcaps_per_100() const { return per_100(allcaps); }
  double typos_per_100() const { return per_100(typos); }

  void merge(const NoiseProfile& other);

 private:
  double per_100(std::uint64_t n) const {
    return tokens == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(tokens);
  }
};

struct ProfileOptions {
  /// Uppercase words not counted as all-caps, compared against the
  /// punctuation-peeled token.
  std::set<std::string, std::less<>> acronyms;
  unsigned max_dist = 2;
  unsigned threads = 1;
};

/// Tokens are whitespace tokens. Emojis are counted per pictograph (skin-tone
/// modifiers, joiners and selectors fold into their base, a flag counts
/// once). All-caps words have at least two letters, all uppercase. Typos are
/// out-of-lexicon tokens with a fuzzy match; with no lexicon they are not
/// counted.
NoiseProfile noise_profile(std::span<const std::string> corpus, const Lexicon* lexicon,
                           const ProfileOptions& options = {});

}  // namespace ugcmt::lexnoise
