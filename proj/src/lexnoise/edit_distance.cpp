#include "ugcmt/lexnoise/edit_distance.hpp"

#include <algorithm>
#include <limits>

#include "ugcmt/core/text.hpp"

namespace ugcmt::lexnoise {

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::kDeletion:
      return "DELETION";
    case EditKind::kInsertion:
      return "INSERTION";
    case EditKind::kDiacriticSub:
      return "DIACRITIC_SUB";
    case EditKind::kSwap:
      return "SWAP";
    case EditKind::kSubstitution:
      return "SUBSTITUTION";
    case EditKind::kRepetition:
      return "REPETITION";
  }
  return "?";
}

std::vector<EditKind> kinds(const std::vector<EditOperation>& ops) {
  std::vector<EditKind> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(op.kind);
  return out;
}

namespace detail {

RunInfo run_info(std::u32string_view s) {
  RunInfo r;
  r.start.resize(s.size());
  r.length.resize(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    for (std::size_t k = i; k < j; ++k) {
      r.start[k] = i;
      r.length[k] = j - i;
    }
    i = j;
  }
  return r;
}

}  // namespace detail

EditResult edit_distance(std::u32string_view a, std::u32string_view b,
                         const EditOptions& options) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const auto runs = detail::run_info(a);
  constexpr unsigned kInf = std::numeric_limits<unsigned>::max() / 2;
  std::vector<unsigned> d((n + 1) * (m + 1), kInf);
  auto at = [&](std::size_t i, std::size_t j) -> unsigned& { return d[i * (m + 1) + j]; };

  // Largest number of trailing copies of a[i-1] removable as one repetition.
  auto rep_span = [&](std::size_t i) -> std::size_t {
    if (!options.repetition || i < 2) return 0;
    if (runs.length[i - 1] > options.max_run) return 0;
    return i - 1 - runs.start[i - 1];
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) {
        at(0, 0) = 0;
        continue;
      }
      unsigned v = kInf;
      if (i > 0 && j > 0) v = std::min(v, at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0u : 1u));
      if (j > 0) v = std::min(v, at(i, j - 1) + 1);
      if (i > 0) v = std::min(v, at(i - 1, j) + 1);
      if (i > 1 && j > 1 && a[i - 2] == b[j - 1] && a[i - 1] == b[j - 2] && a[i - 1] != a[i - 2]) {
        v = std::min(v, at(i - 2, j - 2) + 1);
      }
      for (std::size_t r = 1, span = rep_span(i); r <= span; ++r) {
        v = std::min(v, at(i - r, j) + 1);
      }
      at(i, j) = v;
    }
  }

  EditResult result;
  result.distance = at(n, m);
  // Backtrace with a fixed preference order so ties resolve deterministically.
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const unsigned v = at(i, j);
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] && at(i - 1, j - 1) == v) {
      --i;
      --j;
      continue;
    }
    if (i > 0 && j > 0 && a[i - 1] != b[j - 1] && at(i - 1, j - 1) + 1 == v) {
      const bool diacritic = text::base_letter(a[i - 1]) == text::base_letter(b[j - 1]);
      result.ops.push_back(
          {diacritic ? EditKind::kDiacriticSub : EditKind::kSubstitution, i - 1});
      --i;
      --j;
      continue;
    }
    if (i > 1 && j > 1 && a[i - 2] == b[j - 1] && a[i - 1] == b[j - 2] &&
        a[i - 1] != a[i - 2] && at(i - 2, j - 2) + 1 == v) {
      result.ops.push_back({EditKind::kSwap, i - 2});
      i -= 2;
      j -= 2;
      continue;
    }
    if (j > 0 && at(i, j - 1) + 1 == v) {
      result.ops.push_back({EditKind::kDeletion, i});
      --j;
      continue;
    }
    if (i > 0 && at(i - 1, j) + 1 == v) {
      result.ops.push_back({EditKind::kInsertion, i - 1});
      --i;
      continue;
    }
    bool moved = false;
    for (std::size_t r = 1, span = rep_span(i); r <= span; ++r) {
      if (at(i - r, j) + 1 == v) {
        result.ops.push_back({EditKind::kRepetition, i - r});
        i -= r;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // unreachable: every cell has a predecessor
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

EditResult edit_distance(std::string_view observed, std::string_view correct,
                         const EditOptions& options) {
  return edit_distance(text::to_u32(observed), text::to_u32(correct), options);
}

}  // namespace ugcmt::lexnoise
