#include "ugcmt/eval/polysemy.hpp"

#include <gtest/gtest.h>

#include "ugcmt/core/error.hpp"

namespace ugcmt::eval {
namespace {

TEST(ContainsWord, BoundariesAndCase) {
  EXPECT_TRUE(contains_word("La carte est top", "carte"));
  EXPECT_TRUE(contains_word("CARTE!", "carte"));
  EXPECT_TRUE(contains_word("(carte)", "Carte"));
  EXPECT_FALSE(contains_word("cartes", "carte"));
  EXPECT_FALSE(contains_word("pancarte", "carte"));
  EXPECT_TRUE(contains_word("the credit card reader", "credit card"));
  EXPECT_FALSE(contains_word("", "carte"));
  EXPECT_TRUE(contains_word("À la CUISINE", "cuisine"));
}

TEST(PolysemyEntries, Parse) {
  const auto e = parse_polysemy_entries(
      "# word\taccepted\n"
      "carte\tmenu|menus,card|cards,map\n"
      "cadre\tsetting,surroundings\tframe,executive\n");
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].source_word, "carte");
  EXPECT_EQ(e[0].accepted, (std::vector<std::string>{"menu|menus", "card|cards", "map"}));
  EXPECT_TRUE(e[0].rejected_hint.empty());
  EXPECT_EQ(e[1].rejected_hint, (std::vector<std::string>{"frame", "executive"}));
  EXPECT_THROW(parse_polysemy_entries("carte\n"), Error);
}

TEST(PolysemousAccuracy, CountsPerEntry) {
  const auto entries = parse_polysemy_entries(
      "carte\tmenu|menus,card\n"
      "cuisine\tfood,cooking|cuisine\n");
  const std::vector<std::string> srcs{
      "La carte est variée.",     // hyp uses "menus" -> correct
      "Belle carte des vins",     // "map" not accepted -> wrong
      "Cuisine excellente",       // "food" -> correct
      "Rien à signaler",          // no entry word
      "La cuisine et la carte"};  // both entries; only cuisine correct
  const std::vector<std::string> hyps{
      "The menus are varied.", "Nice wine map", "Excellent food", "Nothing to report",
      "The cuisine and the list"};
  const auto rep = polysemous_accuracy(srcs, hyps, entries);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_EQ(rep.entries[0].n_source, 3u);
  EXPECT_EQ(rep.entries[0].n_correct, 1u);
  EXPECT_EQ(rep.entries[1].n_source, 2u);
  EXPECT_EQ(rep.entries[1].n_correct, 2u);
  EXPECT_EQ(rep.total_source, 5u);
  EXPECT_EQ(rep.total_correct, 3u);
  // Weighted mean of per-entry accuracies.
  const double weighted = (rep.entries[0].accuracy() * 3 + rep.entries[1].accuracy() * 2) / 5;
  EXPECT_NEAR(rep.percent(), weighted, 1e-12);
  EXPECT_DOUBLE_EQ(rep.percent(), 60.0);
}

TEST(PolysemousAccuracy, Errors) {
  const auto entries = parse_polysemy_entries("carte\tmenu\n");
  const std::vector<std::string> one{"a"};
  const std::vector<std::string> two{"a", "b"};
  EXPECT_THROW(polysemous_accuracy(one, two, entries), DataError);
  std::vector<PolysemyEntry> empty_accepted{PolysemyEntry{"carte", {}, {}}};
  EXPECT_THROW(polysemous_accuracy(one, one, empty_accepted), ConfigError);
}

}  // namespace
}  // namespace ugcmt::eval
