#include "ugcmt/lexnoise/lexicon.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

#include "ugcmt/core/corpus.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::lexnoise {

Lexicon Lexicon::from_entries(
    const std::vector<std::pair<std::string, std::uint64_t>>& entries) {
  Lexicon lex;
  lex.nodes_.emplace_back();
  for (const auto& [raw, freq] : entries) {
    std::string w = text::lower(text::to_nfc(raw));
    if (w.empty()) continue;
    auto it = lex.index_.find(w);
    if (it != lex.index_.end()) {
      lex.freq_[it->second] += freq;
      continue;
    }
    const auto id = static_cast<std::uint32_t>(lex.words_.size());
    const auto cps = text::to_u32(w);
    lex.max_len_ = std::max(lex.max_len_, cps.size());
    lex.insert(cps, static_cast<std::int32_t>(id));
    lex.index_.emplace(w, id);
    lex.words_.push_back(std::move(w));
    lex.freq_.push_back(freq);
  }
  if (lex.words_.empty()) throw ConfigError("lexicon is empty");
  return lex;
}

Lexicon Lexicon::from_words(const std::vector<std::string>& words) {
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(words.size());
  for (const auto& w : words) entries.emplace_back(w, 0);
  return from_entries(entries);
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  LineReader reader(path);
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  while (auto line = reader.next()) {
    if (line->empty()) continue;
    const auto tab = line->find('\t');
    std::uint64_t freq = 0;
    if (tab != std::string::npos) {
      try {
        freq = std::stoull(line->substr(tab + 1));
      } catch (const std::exception&) {
        throw DataError(fmt::format("{}:{}: bad frequency", path.string(),
                                    reader.lines_read()));
      }
      line->resize(tab);
    }
    entries.emplace_back(std::move(*line), freq);
  }
  return from_entries(entries);
}

void Lexicon::insert(std::u32string_view word, std::int32_t id) {
  std::uint32_t node = 0;
  for (char32_t c : word) {
    auto& kids = nodes_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), c,
                               [](const auto& p, char32_t v) { return p.first < v; });
    if (it != kids.end() && it->first == c) {
      node = it->second;
      continue;
    }
    const auto next = static_cast<std::uint32_t>(nodes_.size());
    kids.insert(it, {c, next});
    nodes_.emplace_back();
    node = next;
  }
  nodes_[node].word = id;
}

bool Lexicon::contains(std::string_view lowercase_word) const {
  return index_.count(std::string(lowercase_word)) > 0;
}

std::uint64_t Lexicon::frequency(std::string_view lowercase_word) const {
  auto it = index_.find(std::string(lowercase_word));
  return it == index_.end() ? 0 : freq_[it->second];
}

std::vector<Candidate> Lexicon::search(std::u32string_view a, unsigned max_dist,
                                       const EditOptions& options) const {
  std::vector<Candidate> out;
  if (nodes_.empty()) return out;
  const std::size_t n = a.size();
  const auto runs = detail::run_info(a);
  constexpr unsigned kInf = std::numeric_limits<unsigned>::max() / 4;

  auto rep_span = [&](std::size_t i) -> std::size_t {
    if (!options.repetition || i < 2) return 0;
    if (runs.length[i - 1] > options.max_run) return 0;
    return i - 1 - runs.start[i - 1];
  };

  // rows[j] holds D[.][j] for the current path; edge[j] is the j-th character.
  // Sized up front: rows must not reallocate while the walk holds references.
  std::vector<std::vector<unsigned>> rows(max_len_ + 1, std::vector<unsigned>(n + 1, kInf));
  std::vector<char32_t> edge(max_len_ + 1, 0);
  rows[0][0] = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    unsigned v = rows[0][i - 1] + 1;
    for (std::size_t r = 1, span = rep_span(i); r <= span; ++r) v = std::min(v, rows[0][i - r] + 1);
    rows[0][i] = v;
  }
  auto row_min = [](const std::vector<unsigned>& r) { return *std::min_element(r.begin(), r.end()); };

  std::vector<std::int32_t> hits;
  auto visit = [&](auto&& self, std::uint32_t node, std::size_t depth) -> void {
    const auto& cur = rows[depth];
    if (nodes_[node].word >= 0 && cur[n] <= max_dist) hits.push_back(nodes_[node].word);
    const unsigned prune_cur = row_min(cur);
    const unsigned prune_prev = depth >= 1 ? row_min(rows[depth - 1]) + 1 : kInf;
    if (prune_cur > max_dist && prune_prev > max_dist) return;
    for (const auto& [c, child] : nodes_[node].children) {
      const std::size_t j = depth + 1;
      edge[j] = c;
      auto& row = rows[j];
      const auto& prev = rows[j - 1];
      row[0] = prev[0] + 1;
      for (std::size_t i = 1; i <= n; ++i) {
        unsigned v = prev[i] + 1;
        v = std::min(v, prev[i - 1] + (a[i - 1] == c ? 0u : 1u));
        v = std::min(v, row[i - 1] + 1);
        if (j >= 2 && i >= 2 && a[i - 2] == c && a[i - 1] == edge[j - 1] && a[i - 1] != a[i - 2]) {
          v = std::min(v, rows[j - 2][i - 2] + 1);
        }
        for (std::size_t r = 1, span = rep_span(i); r <= span; ++r) v = std::min(v, row[i - r] + 1);
        row[i] = v;
      }
      self(self, child, j);
    }
  };
  visit(visit, 0, 0);

  out.reserve(hits.size());
  for (auto id : hits) {
    Candidate c;
    c.word = words_[static_cast<std::size_t>(id)];
    auto res = edit_distance(a, text::to_u32(c.word), options);
    c.distance = res.distance;
    c.ops = std::move(res.ops);
    c.frequency = freq_[static_cast<std::size_t>(id)];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (x.frequency != y.frequency) return x.frequency > y.frequency;
    return x.word < y.word;
  });
  return out;
}

std::vector<Candidate> fuzzy_match(std::string_view word, const Lexicon& lexicon,
                                   unsigned max_dist) {
  const std::string lowered = text::lower(text::to_nfc(word));
  if (lexicon.contains(lowered)) {
    throw ContractError(fmt::format("'{}' is in the lexicon; fuzzy_match expects an "
                                    "out-of-lexicon word",
                                    word));
  }
  return lexicon.search(text::to_u32(lowered), max_dist);
}

}  // namespace ugcmt::lexnoise
