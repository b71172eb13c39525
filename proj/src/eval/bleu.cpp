#include "ugcmt/eval/bleu.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <unordered_map>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::eval {

bool is_python_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 ||
         c == 0x202F || c == 0x205F || c == 0x3000;
}

namespace {

void replace_all(std::u32string& s, std::u32string_view from, std::u32string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::u32string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

// [\{-\~\[-\` -\&\(-\+\:-\@\/]
bool is_13a_symbol(char32_t c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') ||
         (c >= '(' && c <= '+') || (c >= ':' && c <= '@') || c == '/';
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  std::u32string s = text::to_u32(text);
  replace_all(s, U"<skipped>", U"");
  replace_all(s, U"-\n", U"");
  replace_all(s, U"\n", U" ");
  if (s.find(U'&') != std::u32string::npos) {
    replace_all(s, U"&quot;", U"\"");
    replace_all(s, U"&amp;", U"&");
    replace_all(s, U"&lt;", U"<");
    replace_all(s, U"&gt;", U">");
  }
  s = U" " + s + U" ";

  // Each pass mirrors a left-to-right, non-overlapping regex substitution.
  std::u32string t;
  t.reserve(s.size() * 2);
  for (char32_t c : s) {
    if (is_13a_symbol(c)) {
      t.push_back(' ');
      t.push_back(c);
      t.push_back(' ');
    } else {
      t.push_back(c);
    }
  }
  s.swap(t);

  t.clear();
  for (std::size_t i = 0; i < s.size();) {  // ([^0-9])([\.,]) -> "\1 \2 "
    if (i + 1 < s.size() && !is_digit(s[i]) && (s[i + 1] == '.' || s[i + 1] == ',')) {
      t.push_back(s[i]);
      t.push_back(' ');
      t.push_back(s[i + 1]);
      t.push_back(' ');
      i += 2;
    } else {
      t.push_back(s[i++]);
    }
  }
  s.swap(t);

  t.clear();
  for (std::size_t i = 0; i < s.size();) {  // ([\.,])([^0-9]) -> " \1 \2"
    if (i + 1 < s.size() && (s[i] == '.' || s[i] == ',') && !is_digit(s[i + 1])) {
      t.push_back(' ');
      t.push_back(s[i]);
      t.push_back(' ');
      t.push_back(s[i + 1]);
      i += 2;
    } else {
      t.push_back(s[i++]);
    }
  }
  s.swap(t);

  t.clear();
  for (std::size_t i = 0; i < s.size();) {  // ([0-9])(-) -> "\1 \2 "
    if (i + 1 < s.size() && is_digit(s[i]) && s[i + 1] == '-') {
      t.push_back(s[i]);
      t.push_back(' ');
      t.push_back('-');
      t.push_back(' ');
      i += 2;
    } else {
      t.push_back(s[i++]);
    }
  }
  s.swap(t);

  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_python_space(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && !is_python_space(s[i])) ++i;
    if (i > b) out.push_back(text::to_utf8(std::u32string_view(s).substr(b, i - b)));
  }
  return out;
}

void BleuStats::merge(const BleuStats& other) {
  for (int n = 0; n < kBleuOrder; ++n) {
    correct[n] += other.correct[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
}

namespace {

std::vector<std::string> preprocess(std::string_view s, const BleuConfig& config) {
  std::string line = config.case_sensitive ? std::string(s) : text::full_lower(s);
  auto cps = text::to_u32(line);
  while (!cps.empty() && is_python_space(cps.back())) cps.pop_back();
  return tokenize_13a(text::to_utf8(cps));
}

struct NgramHash {
  std::size_t operator()(const std::string& s) const noexcept {
    return std::hash<std::string>{}(s);
  }
};

using NgramCounts = std::unordered_map<std::string, std::uint64_t, NgramHash>;

NgramCounts count_ngrams(const std::vector<std::string>& toks, int n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key = toks[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += toks[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuStats sentence_stats(std::string_view hyp, std::string_view ref, const BleuConfig& config) {
  const auto h = preprocess(hyp, config);
  const auto r = preprocess(ref, config);
  BleuStats st;
  st.hyp_len = h.size();
  st.ref_len = r.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    const auto hc = count_ngrams(h, n);
    const auto rc = count_ngrams(r, n);
    std::uint64_t total = 0;
    std::uint64_t correct = 0;
    for (const auto& [g, c] : hc) {
      total += c;
      if (auto it = rc.find(g); it != rc.end()) correct += std::min(c, it->second);
    }
    st.total[n - 1] = total;
    st.correct[n - 1] = correct;
  }
  return st;
}

BleuResult compute_bleu(const BleuStats& stats, const BleuConfig& config) {
  BleuResult res;
  res.stats = stats;
  res.signature = bleu_signature(config);
  if (stats.hyp_len < stats.ref_len) {
    res.brevity_penalty =
        stats.hyp_len > 0 ? std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                               static_cast<double>(stats.hyp_len))
                          : 0.0;
  } else {
    res.brevity_penalty = 1.0;
  }
  bool any_correct = false;
  for (auto c : stats.correct) any_correct |= c > 0;
  if (!any_correct) return res;

  // Precisions are kept as fractions so a perfect match is exactly 100.
  std::array<double, kBleuOrder> frac{};
  double smooth = 1.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    if (stats.total[n] == 0) break;
    if (stats.correct[n] == 0) {
      smooth *= 2.0;
      frac[n] = 1.0 / (smooth * static_cast<double>(stats.total[n]));
    } else {
      frac[n] = static_cast<double>(stats.correct[n]) / static_cast<double>(stats.total[n]);
    }
  }
  double log_sum = 0.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    res.precisions[n] = 100.0 * frac[n];
    if (frac[n] == 0.0) return res;
    log_sum += std::log(frac[n]);
  }
  res.score = 100.0 * res.brevity_penalty * std::exp(log_sum / kBleuOrder);
  return res;
}

BleuResult corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                       const BleuConfig& config) {
  if (hyps.size() != refs.size()) {
    throw DataError(fmt::format("hypotheses have {} lines, references have {} lines",
                                hyps.size(), refs.size()));
  }
  if (hyps.empty()) throw DataError("cannot score an empty corpus");
  const unsigned workers =
      std::max(1u, std::min<unsigned>(resolve_threads(config.threads), hyps.size()));
  std::vector<BleuStats> parts(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t b = hyps.size() * w / workers;
    const std::size_t e = hyps.size() * (w + 1) / workers;
    for (std::size_t i = b; i < e; ++i) parts[w].merge(sentence_stats(hyps[i], refs[i], config));
  });
  BleuStats total;
  for (const auto& p : parts) total.merge(p);
  return compute_bleu(total, config);
}

std::string bleu_signature(const BleuConfig& config) {
  return fmt::format("BLEU+case.{}+numrefs.1+smooth.exp+tok.13a+version.ugcmt-{}",
                     config.case_sensitive ? "mixed" : "lc", UGCMT_VERSION);
}

std::string format_bleu(const BleuResult& r) {
  const double ratio = r.stats.ref_len == 0 ? 0.0
                                            : static_cast<double>(r.stats.hyp_len) /
                                                  static_cast<double>(r.stats.ref_len);
  return fmt::format(
      "BLEU = {:.2f} {:.1f}/{:.1f}/{:.1f}/{:.1f} (BP = {:.3f} ratio = {:.3f} hyp_len = {} "
      "ref_len = {})",
      r.score, r.precisions[0], r.precisions[1], r.precisions[2], r.precisions[3],
      r.brevity_penalty, ratio, r.stats.hyp_len, r.stats.ref_len);
}

}  // namespace ugcmt::eval
