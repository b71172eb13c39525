#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ugcmt/eval/stats.hpp"

namespace ugcmt::eval {

/// Total preorder over systems: levels from best to worst, ties share a
/// level.
struct Ranking {
  std::vector<std::vector<std::string>> levels;

  /// Level of `system`, or -1 when it is not ranked.
  int level_of(std::string_view system) const;
  std::vector<std::string> systems() const;
  /// Compares levels as sets.
  bool same_as(const Ranking& other) const;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

/// "A > B = C > D"; whitespace also separates levels ("A B=C D"). Throws
/// DataError when a system appears twice.
Ranking parse_ranking(std::string_view text);
std::string format_ranking(const Ranking& ranking);

struct RankingJudgment {
  std::string judge_id;
  std::string sentence_id;
  Ranking ranking;
  bool is_gold = false;
  std::optional<Ranking> gold_expected;
  /// Unit of gold checking (a crowd task); defaults to the judge.
  std::optional<std::string> submission_id;
};

/// Tab-separated: judge, sentence, ranking, gold flag (0/1), expected ranking
/// or "-", optional submission id. Blank lines and '#' lines are skipped.
std::vector<RankingJudgment> parse_judgments(std::string_view text);
std::vector<RankingJudgment> load_judgments(const std::filesystem::path& path);

enum class GoldPolicy {
  /// Keep a submission only if every gold item in it is ranked as expected.
  kAll,
  /// Keep every submission of a judge who passed all gold items of at least
  /// one submission that had gold items (judges never shown gold are kept).
  kAnySubmission,
  /// Keep everything.
  kNone,
};

GoldPolicy parse_gold_policy(std::string_view name);
std::string_view to_string(GoldPolicy policy);

/// Returns the retained non-gold judgments. A submission with no gold items
/// passes under kAll. Throws DataError when a gold judgment lacks its
/// expected ranking.
std::vector<RankingJudgment> filter_judgments_by_gold(std::span<const RankingJudgment> judgments,
                                                      GoldPolicy policy = GoldPolicy::kAll);

struct PairwiseResult {
  std::string a;
  std::string b;
  std::uint64_t wins = 0;  // a ranked above b
  std::uint64_t ties = 0;
  std::uint64_t losses = 0;
  std::optional<WilcoxonResult> test;
};

/// One entry per unordered pair in `systems` order; every judgment ranking
/// both systems contributes one win, tie or loss.
std::vector<PairwiseResult> pairwise_table(std::span<const RankingJudgment> judgments,
                                           std::span<const std::string> systems);

/// Adds a signed-rank test per pair over per-judgment signs (+1, 0, -1).
void add_significance(std::vector<PairwiseResult>& table,
                      std::span<const RankingJudgment> judgments);

/// Systems in order of first appearance.
std::vector<std::string> collect_systems(std::span<const RankingJudgment> judgments);

struct AgreementResult {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t judge_pairs = 0;
  std::size_t degenerate_pairs = 0;
};

/// Items are (sentence, system pair) labelled "<", "=" or ">". Cohen's
/// kappa is computed for each pair of judges sharing at least one item and
/// averaged. Returns nullopt when no two judges share an item.
std::optional<AgreementResult> average_pairwise_kappa(
    std::span<const RankingJudgment> judgments);

/// Fleiss' kappa over the same items.
std::optional<KappaResult> fleiss_kappa(std::span<const RankingJudgment> judgments);

}  // namespace ugcmt::eval
