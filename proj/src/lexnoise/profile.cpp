#include "ugcmt/lexnoise/profile.hpp"

#include <mutex>

#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"
#include "ugcmt/lexnoise/tokens.hpp"

namespace ugcmt::lexnoise {

void NoiseProfile::merge(const NoiseProfile& other) {
  tokens += other.tokens;
  emojis += other.emojis;
  allcaps += other.allcaps;
  typos += other.typos;
}

namespace {

bool is_regional_indicator(char32_t c) { return c >= 0x1F1E6 && c <= 0x1F1FF; }
bool is_skin_tone(char32_t c) { return c >= 0x1F3FB && c <= 0x1F3FF; }

std::uint64_t count_emojis(std::u32string_view s) {
  std::uint64_t n = 0;
  bool joined = false;
  bool pending_flag = false;
  for (char32_t c : s) {
    if (c == 0x200D) {
      joined = true;
      continue;
    }
    if (is_regional_indicator(c)) {
      if (!pending_flag) ++n;
      pending_flag = !pending_flag;
      joined = false;
      continue;
    }
    pending_flag = false;
    if (is_skin_tone(c) || c == 0xFE0F || c == 0xFE0E) continue;
    if (text::is_emoji(c)) {
      if (!joined) ++n;
    }
    joined = false;
  }
  return n;
}

bool is_allcaps(std::u32string_view w) {
  int letters = 0;
  for (char32_t c : w) {
    if (!text::is_letter(c)) continue;
    if (!text::is_upper(c)) return false;
    ++letters;
  }
  return letters >= 2;
}

}  // namespace

NoiseProfile noise_profile(std::span<const std::string> corpus, const Lexicon* lexicon,
                           const ProfileOptions& options) {
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, corpus.size()));
  std::vector<NoiseProfile> parts(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    NoiseProfile& p = parts[w];
    const std::size_t begin = corpus.size() * w / workers;
    const std::size_t end = corpus.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      const std::string_view sentence = corpus[i];
      p.tokens += text::count_words(sentence);
      p.emojis += count_emojis(text::to_u32(sentence));
      for (const auto& tok : tokenize_words(sentence)) {
        if (!tok.has_letter) continue;
        const auto core = tok.core(sentence);
        const auto cps = text::to_u32(core);
        if (is_allcaps(cps) && !options.acronyms.contains(core)) ++p.allcaps;
        if (lexicon != nullptr) {
          const auto low = text::lower(core);
          if (!lexicon->contains(low) &&
              !lexicon->search(text::to_u32(low), options.max_dist).empty()) {
            ++p.typos;
          }
        }
      }
    }
  });
  NoiseProfile total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace ugcmt::lexnoise
