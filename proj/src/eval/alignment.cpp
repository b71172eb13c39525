#include "ugcmt/eval/alignment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"
#include "ugcmt/eval/bleu.hpp"

namespace ugcmt::eval {

std::string_view to_string(AlignKind kind) {
  switch (kind) {
    case AlignKind::kMatch:
      return "match";
    case AlignKind::kSubstitution:
      return "sub";
    case AlignKind::kDeletion:
      return "del";
    case AlignKind::kInsertion:
      return "ins";
  }
  return "?";
}

std::vector<AlignStep> edit_alignment(std::span<const std::string> hyp,
                                      std::span<const std::string> ref) {
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<std::uint32_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  std::vector<AlignStep> steps;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = hyp[i - 1] == ref[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        steps.push_back({same ? AlignKind::kMatch : AlignKind::kSubstitution, hyp[i - 1],
                         ref[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      steps.push_back({AlignKind::kDeletion, hyp[i - 1], std::nullopt});
      --i;
    } else {
      steps.push_back({AlignKind::kInsertion, std::nullopt, ref[j - 1]});
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::size_t alignment_cost(const std::vector<AlignStep>& steps) {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(), [](const auto& s) { return s.kind != AlignKind::kMatch; }));
}

std::vector<Substitution> mine_substitutions(std::span<const std::string> hyps,
                                             std::span<const std::string> refs,
                                             std::uint64_t min_count, unsigned threads) {
  if (hyps.size() != refs.size()) {
    throw DataError(fmt::format("hypotheses have {} lines, references have {} lines",
                                hyps.size(), refs.size()));
  }
  using Counts = std::map<std::pair<std::string, std::string>, std::uint64_t>;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, hyps.size()));
  std::vector<Counts> parts(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t b = hyps.size() * w / workers;
    const std::size_t e = hyps.size() * (w + 1) / workers;
    for (std::size_t k = b; k < e; ++k) {
      const auto h = tokenize_13a(text::full_lower(hyps[k]));
      const auto r = tokenize_13a(text::full_lower(refs[k]));
      for (const auto& s : edit_alignment(h, r)) {
        if (s.kind == AlignKind::kSubstitution) ++parts[w][{*s.hyp, *s.ref}];
      }
    }
  });
  Counts total;
  for (auto& p : parts) {
    for (auto& [k, v] : p) total[k] += v;
  }
  std::vector<Substitution> out;
  for (auto& [k, v] : total) {
    if (v >= min_count) out.push_back({k.first, k.second, v});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.count > b.count; });
  return out;
}

}  // namespace ugcmt::eval
