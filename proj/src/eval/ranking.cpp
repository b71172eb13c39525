#include "ugcmt/eval/ranking.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::eval {

int Ranking::level_of(std::string_view system) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& s : levels[i]) {
      if (s == system) return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<std::string> Ranking::systems() const {
  std::vector<std::string> out;
  for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  return out;
}

bool Ranking::same_as(const Ranking& other) const {
  if (levels.size() != other.levels.size()) return false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::set<std::string> a(levels[i].begin(), levels[i].end());
    std::set<std::string> b(other.levels[i].begin(), other.levels[i].end());
    if (a != b) return false;
  }
  return true;
}

Ranking parse_ranking(std::string_view s) {
  std::string norm;
  for (char c : s) {
    if (c == '>') {
      norm += ' ';
    } else if (c == '=') {
      norm += " = ";
    } else {
      norm += c;
    }
  }
  Ranking r;
  std::set<std::string, std::less<>> seen;
  bool join = false;
  for (auto tok : text::split_whitespace(norm)) {
    if (tok == "=") {
      if (r.levels.empty()) throw DataError(fmt::format("ranking '{}' starts with '='", s));
      join = true;
      continue;
    }
    if (!seen.insert(std::string(tok)).second) {
      throw DataError(fmt::format("ranking '{}' lists '{}' twice", s, tok));
    }
    if (join) {
      r.levels.back().emplace_back(tok);
    } else {
      r.levels.push_back({std::string(tok)});
    }
    join = false;
  }
  if (join) throw DataError(fmt::format("ranking '{}' ends with '='", s));
  if (r.levels.empty()) throw DataError("empty ranking");
  return r;
}

std::string format_ranking(const Ranking& ranking) {
  std::string out;
  for (std::size_t i = 0; i < ranking.levels.size(); ++i) {
    if (i) out += " > ";
    out += text::join(ranking.levels[i], " = ");
  }
  return out;
}

std::vector<RankingJudgment> parse_judgments(std::string_view content) {
  std::vector<RankingJudgment> out;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    for (;;) {
      const auto tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (f.size() < 3 || f.size() > 6) {
      throw DataError(fmt::format("judgments line {}: expected 3 to 6 tab-separated fields",
                                  line_no));
    }
    RankingJudgment j;
    j.judge_id = f[0];
    j.sentence_id = f[1];
    try {
      j.ranking = parse_ranking(f[2]);
      if (f.size() > 3) {
        if (f[3] != "0" && f[3] != "1") throw DataError("gold flag must be 0 or 1");
        j.is_gold = f[3] == "1";
      }
      if (f.size() > 4 && !f[4].empty() && f[4] != "-") j.gold_expected = parse_ranking(f[4]);
      if (f.size() > 5 && !f[5].empty()) j.submission_id = f[5];
    } catch (const DataError& e) {
      throw DataError(fmt::format("judgments line {}: {}", line_no, e.what()));
    }
    if (j.is_gold && !j.gold_expected) {
      throw DataError(fmt::format("judgments line {}: gold item without expected ranking",
                                  line_no));
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<RankingJudgment> load_judgments(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open judgments '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_judgments(ss.str());
}

GoldPolicy parse_gold_policy(std::string_view name) {
  if (name == "all") return GoldPolicy::kAll;
  if (name == "any-submission") return GoldPolicy::kAnySubmission;
  if (name == "none") return GoldPolicy::kNone;
  throw ConfigError(
      fmt::format("unknown gold policy '{}' (expected all, any-submission or none)", name));
}

std::string_view to_string(GoldPolicy policy) {
  switch (policy) {
    case GoldPolicy::kAll:
      return "all";
    case GoldPolicy::kAnySubmission:
      return "any-submission";
    case GoldPolicy::kNone:
      return "none";
  }
  return "?";
}

std::vector<RankingJudgment> filter_judgments_by_gold(std::span<const RankingJudgment> judgments,
                                                      GoldPolicy policy) {
  using Key = std::pair<std::string, std::string>;  // judge, submission
  auto key_of = [](const RankingJudgment& j) {
    return Key{j.judge_id, j.submission_id.value_or(j.judge_id)};
  };
  std::map<Key, bool> passed;  // submission -> all gold correct
  std::set<Key> has_gold;
  for (const auto& j : judgments) {
    auto [it, fresh] = passed.try_emplace(key_of(j), true);
    if (!j.is_gold) continue;
    if (!j.gold_expected) {
      throw DataError(fmt::format("gold item {} of judge {} has no expected ranking",
                                  j.sentence_id, j.judge_id));
    }
    has_gold.insert(it->first);
    if (!j.ranking.same_as(*j.gold_expected)) it->second = false;
  }
  // A judge is good after passing a submission that had gold items, or when
  // none of their submissions had any.
  std::set<std::string> good_judges;
  std::set<std::string> gold_judges;
  for (const auto& k : has_gold) gold_judges.insert(k.first);
  for (const auto& [k, ok] : passed) {
    if ((ok && has_gold.contains(k)) || !gold_judges.contains(k.first)) good_judges.insert(k.first);
  }
  std::vector<RankingJudgment> out;
  for (const auto& j : judgments) {
    if (j.is_gold) continue;
    bool keep = true;
    switch (policy) {
      case GoldPolicy::kAll:
        keep = passed.at(key_of(j));
        break;
      case GoldPolicy::kAnySubmission:
        keep = good_judges.contains(j.judge_id);
        break;
      case GoldPolicy::kNone:
        break;
    }
    if (keep) out.push_back(j);
  }
  return out;
}

std::vector<std::string> collect_systems(std::span<const RankingJudgment> judgments) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& j : judgments) {
    for (const auto& s : j.ranking.systems()) {
      if (seen.insert(s).second) out.push_back(s);
    }
  }
  return out;
}

namespace {

// +1 when a is ranked above b, -1 below, 0 tied; nullopt if either is absent.
std::optional<int> compare(const Ranking& r, std::string_view a, std::string_view b) {
  const int la = r.level_of(a);
  const int lb = r.level_of(b);
  if (la < 0 || lb < 0) return std::nullopt;
  return la < lb ? 1 : (la > lb ? -1 : 0);
}

}  // namespace

std::vector<PairwiseResult> pairwise_table(std::span<const RankingJudgment> judgments,
                                           std::span<const std::string> systems) {
  std::vector<PairwiseResult> table;
  for (std::size_t x = 0; x < systems.size(); ++x) {
    for (std::size_t y = x + 1; y < systems.size(); ++y) {
      PairwiseResult r;
      r.a = systems[x];
      r.b = systems[y];
      for (const auto& j : judgments) {
        const auto c = compare(j.ranking, r.a, r.b);
        if (!c) continue;
        if (*c > 0) {
          ++r.wins;
        } else if (*c < 0) {
          ++r.losses;
        } else {
          ++r.ties;
        }
      }
      table.push_back(std::move(r));
    }
  }
  return table;
}

void add_significance(std::vector<PairwiseResult>& table,
                      std::span<const RankingJudgment> judgments) {
  for (auto& r : table) {
    std::vector<double> signs;
    for (const auto& j : judgments) {
      if (auto c = compare(j.ranking, r.a, r.b)) signs.push_back(*c);
    }
    r.test = wilcoxon_signed_rank(signs);
  }
}

namespace {

using ItemLabels = std::map<std::string, std::map<std::string, std::string>>;  // item -> judge -> label

ItemLabels item_labels(std::span<const RankingJudgment> judgments) {
  ItemLabels items;
  for (const auto& j : judgments) {
    auto systems = j.ranking.systems();
    std::sort(systems.begin(), systems.end());
    for (std::size_t x = 0; x < systems.size(); ++x) {
      for (std::size_t y = x + 1; y < systems.size(); ++y) {
        const int c = *compare(j.ranking, systems[x], systems[y]);
        const std::string item = j.sentence_id + '\x1f' + systems[x] + '\x1f' + systems[y];
        items[item].try_emplace(j.judge_id, c > 0 ? ">" : (c < 0 ? "<" : "="));
      }
    }
  }
  return items;
}

}  // namespace

std::optional<AgreementResult> average_pairwise_kappa(
    std::span<const RankingJudgment> judgments) {
  const auto items = item_labels(judgments);
  std::map<std::pair<std::string, std::string>,
           std::pair<std::vector<std::string>, std::vector<std::string>>>
      shared;
  for (const auto& [item, by_judge] : items) {
    for (auto a = by_judge.begin(); a != by_judge.end(); ++a) {
      for (auto b = std::next(a); b != by_judge.end(); ++b) {
        auto& s = shared[{a->first, b->first}];
        s.first.push_back(a->second);
        s.second.push_back(b->second);
      }
    }
  }
  if (shared.empty()) return std::nullopt;
  AgreementResult res;
  res.min = 1.0;
  res.max = -1.0;
  double sum = 0.0;
  for (const auto& [judges, labels] : shared) {
    const auto k = cohen_kappa(labels.first, labels.second);
    sum += k.kappa;
    res.min = std::min(res.min, k.kappa);
    res.max = std::max(res.max, k.kappa);
    res.degenerate_pairs += k.degenerate;
    ++res.judge_pairs;
  }
  res.mean = sum / static_cast<double>(res.judge_pairs);
  return res;
}

std::optional<KappaResult> fleiss_kappa(std::span<const RankingJudgment> judgments) {
  std::vector<std::vector<std::string>> ratings;
  for (const auto& [item, by_judge] : item_labels(judgments)) {
    if (by_judge.size() < 2) continue;
    auto& r = ratings.emplace_back();
    for (const auto& [judge, label] : by_judge) r.push_back(label);
  }
  if (ratings.empty()) return std::nullopt;
  return fleiss_kappa(std::span<const std::vector<std::string>>(ratings));
}

}  // namespace ugcmt::eval
