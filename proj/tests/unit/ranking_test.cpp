#include "ugcmt/eval/ranking.hpp"

#include <gtest/gtest.h>

#include "ugcmt/core/error.hpp"

namespace ugcmt::eval {
namespace {

std::vector<std::string> sentences(const std::vector<RankingJudgment>& js) {
  std::vector<std::string> out;
  for (const auto& j : js) out.push_back(j.sentence_id);
  return out;
}

TEST(Ranking, ParsesLevelsAndTies) {
  const auto r = parse_ranking("A > B = C > D");
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.level_of("A"), 0);
  EXPECT_EQ(r.level_of("B"), 1);
  EXPECT_EQ(r.level_of("C"), 1);
  EXPECT_EQ(r.level_of("D"), 2);
  EXPECT_EQ(r.level_of("E"), -1);
  EXPECT_EQ(format_ranking(r), "A > B = C > D");
  EXPECT_TRUE(parse_ranking("A B=C D").same_as(r));
  EXPECT_TRUE(parse_ranking("A > C = B > D").same_as(r));
  EXPECT_FALSE(parse_ranking("A > B > C > D").same_as(r));
  EXPECT_THROW(parse_ranking("A > B = A"), DataError);
}

TEST(Ranking, ParsesJudgmentFile) {
  const auto js = parse_judgments(
      "# comment\n"
      "j1\ts1\tA > B\t0\t-\n"
      "\n"
      "j1\tg1\tB > A\t1\tA > B\ttask7\n");
  ASSERT_EQ(js.size(), 2u);
  EXPECT_FALSE(js[0].is_gold);
  EXPECT_FALSE(js[0].gold_expected.has_value());
  EXPECT_TRUE(js[1].is_gold);
  EXPECT_EQ(format_ranking(*js[1].gold_expected), "A > B");
  EXPECT_EQ(js[1].submission_id, "task7");
  EXPECT_THROW(parse_judgments("j1\ts1\n"), DataError);
  EXPECT_THROW(parse_judgments("j1\ts1\tA > B\t2\t-\n"), DataError);
}

// Ten judgments; the retained sets below were worked out by hand.
const char* kGoldFixture =
    "j1\tg1\tA > B\t1\tA > B\tt1\n"   // pass
    "j1\ta1\tA > B\t0\t-\tt1\n"
    "j2\tg2\tB > A\t1\tA > B\tt2\n"   // fail
    "j2\tb1\tA = B\t0\t-\tt2\n"
    "j2\tg3\tA > B\t1\tA > B\tt3\n"   // pass
    "j2\tb2\tB > A\t0\t-\tt3\n"
    "j3\tc1\tA > B\t0\t-\n"           // never shown gold
    "j4\tg4\tA > B\t1\tA > B\tt4\n"   // pass
    "j4\tg5\tA = B\t1\tA > B\tt4\n"   // fail
    "j4\td1\tB > A\t0\t-\tt4\n";

TEST(GoldFilter, AllPolicy) {
  const auto js = parse_judgments(kGoldFixture);
  ASSERT_EQ(js.size(), 10u);
  EXPECT_EQ(sentences(filter_judgments_by_gold(js, GoldPolicy::kAll)),
            (std::vector<std::string>{"a1", "b2", "c1"}));
}

TEST(GoldFilter, AnySubmissionPolicy) {
  const auto js = parse_judgments(kGoldFixture);
  EXPECT_EQ(sentences(filter_judgments_by_gold(js, GoldPolicy::kAnySubmission)),
            (std::vector<std::string>{"a1", "b1", "b2", "c1"}));
}

TEST(GoldFilter, NonePolicyDropsOnlyGoldItems) {
  const auto js = parse_judgments(kGoldFixture);
  EXPECT_EQ(sentences(filter_judgments_by_gold(js, GoldPolicy::kNone)),
            (std::vector<std::string>{"a1", "b1", "b2", "c1", "d1"}));
}

TEST(GoldFilter, JudgeFailingEveryGoldLosesEverything) {
  const auto js = parse_judgments(
      "j1\tg1\tB > A\t1\tA > B\n"
      "j1\tg2\tB > A\t1\tA > B\n"
      "j1\ts1\tA > B\t0\t-\n"
      "j2\tg1\tA > B\t1\tA > B\n"
      "j2\ts1\tA > B\t0\t-\n");
  const auto kept = filter_judgments_by_gold(js);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].judge_id, "j2");
}

TEST(GoldFilter, MissingExpectedRankingIsAnError) {
  EXPECT_THROW(parse_judgments("j1\tg1\tA > B\t1\t-\n"), DataError);
  RankingJudgment j;
  j.judge_id = "j1";
  j.sentence_id = "g1";
  j.ranking = parse_ranking("A > B");
  j.is_gold = true;
  const std::vector<RankingJudgment> js{j};
  EXPECT_THROW(filter_judgments_by_gold(js), DataError);
}

TEST(GoldFilter, PolicyNames) {
  EXPECT_EQ(parse_gold_policy("all"), GoldPolicy::kAll);
  EXPECT_EQ(parse_gold_policy("any-submission"), GoldPolicy::kAnySubmission);
  EXPECT_EQ(parse_gold_policy("none"), GoldPolicy::kNone);
  EXPECT_THROW(parse_gold_policy("most"), Error);
  EXPECT_EQ(to_string(GoldPolicy::kAnySubmission), "any-submission");
}

TEST(Pairwise, SingleJudgment) {
  const auto js = parse_judgments("j1\ts1\tA > B\t0\t-\n");
  const std::vector<std::string> systems{"A", "B"};
  const auto t = pairwise_table(js, systems);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].wins, 1u);
  EXPECT_EQ(t[0].ties, 0u);
  EXPECT_EQ(t[0].losses, 0u);
}

TEST(Pairwise, AllTies) {
  const auto js = parse_judgments("j1\ts1\tA = B\t0\t-\nj2\ts1\tA = B\t0\t-\nj1\ts2\tB=A\t0\t-\n");
  auto t = pairwise_table(js, collect_systems(js));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].ties, 3u);
  add_significance(t, js);
  ASSERT_TRUE(t[0].test.has_value());
  EXPECT_TRUE(t[0].test->degenerate);
  EXPECT_EQ(t[0].test->p_value, 1.0);
}

TEST(Pairwise, TotalsConstantWhenEveryoneRanksEverything) {
  const auto js = parse_judgments(
      "j1\ts1\tA > B > C\t0\t-\n"
      "j1\ts2\tC > A = B\t0\t-\n"
      "j2\ts1\tB > A = C\t0\t-\n"
      "j2\ts2\tA = B = C\t0\t-\n"
      "j3\ts1\tC > B > A\t0\t-\n");
  const auto systems = collect_systems(js);
  EXPECT_EQ(systems, (std::vector<std::string>{"A", "B", "C"}));
  const auto t = pairwise_table(js, systems);
  ASSERT_EQ(t.size(), 3u);
  for (const auto& p : t) EXPECT_EQ(p.wins + p.ties + p.losses, 5u) << p.a << p.b;
  // A vs B: s1/j1 win, s2/j1 tie, s1/j2 loss, s2/j2 tie, s1/j3 loss.
  EXPECT_EQ(t[0].a, "A");
  EXPECT_EQ(t[0].b, "B");
  EXPECT_EQ(t[0].wins, 1u);
  EXPECT_EQ(t[0].ties, 2u);
  EXPECT_EQ(t[0].losses, 2u);
}

TEST(Pairwise, SignificanceOnClearWinner) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "j1\ts" + std::to_string(i) + "\tA > B\t0\t-\n";
  const auto js = parse_judgments(text);
  auto t = pairwise_table(js, collect_systems(js));
  add_significance(t, js);
  ASSERT_TRUE(t[0].test.has_value());
  EXPECT_EQ(t[0].test->n, 10u);
  EXPECT_EQ(t[0].test->p_value, 2.0 / 1024.0);
}

TEST(Agreement, PairwiseCohenOverSharedItems) {
  // Items are (sentence, system pair). j1 and j2 agree on s1 and disagree
  // on s2's (A,B); j3 shares nothing with anyone.
  const auto js = parse_judgments(
      "j1\ts1\tA > B\t0\t-\n"
      "j2\ts1\tA > B\t0\t-\n"
      "j1\ts2\tB > A\t0\t-\n"
      "j2\ts2\tA = B\t0\t-\n"
      "j3\ts9\tA > B\t0\t-\n");
  const auto k = average_pairwise_kappa(js);
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(k->judge_pairs, 1u);
  // Labels j1: ">" "<", j2: ">" "=": p_o = 1/2, p_e = (1*1)/4 = 1/4.
  EXPECT_NEAR(k->mean, (0.5 - 0.25) / 0.75, 1e-12);
  EXPECT_EQ(k->min, k->max);

  const auto alone = parse_judgments("j1\ts1\tA > B\t0\t-\nj2\ts2\tA > B\t0\t-\n");
  EXPECT_FALSE(average_pairwise_kappa(alone).has_value());
}

TEST(Agreement, PerfectAgreementIsOne) {
  const auto js = parse_judgments(
      "j1\ts1\tA > B > C\t0\t-\n"
      "j2\ts1\tA > B > C\t0\t-\n"
      "j1\ts2\tC > B = A\t0\t-\n"
      "j2\ts2\tC > A = B\t0\t-\n");
  const auto k = average_pairwise_kappa(js);
  ASSERT_TRUE(k.has_value());
  EXPECT_DOUBLE_EQ(k->mean, 1.0);
  const auto f = fleiss_kappa(js);
  ASSERT_TRUE(f.has_value());
  EXPECT_DOUBLE_EQ(f->kappa, 1.0);
}

}  // namespace
}  // namespace ugcmt::eval
