#include "ugcmt/lexnoise/edit_distance.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ugcmt/core/text.hpp"

namespace ugcmt::lexnoise {
namespace {

// Optimal string alignment distance (adjacent transpositions), textbook DP.
unsigned osa(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<unsigned>> d(a.size() + 1, std::vector<unsigned>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<unsigned>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<unsigned>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[a.size()][b.size()];
}

TEST(EditDistance, ErrorTypes) {
  auto r = edit_distance("apelle", "appelle");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kDeletion}));

  r = edit_distance("appercevoir", "apercevoir");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kInsertion}));

  r = edit_distance("mangè", "mangé");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kDiacriticSub}));

  r = edit_distance("mnager", "manger");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kSwap}));

  r = edit_distance("menger", "manger");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kSubstitution}));

  r = edit_distance("merciiiii", "merci");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(kinds(r.ops), (std::vector<EditKind>{EditKind::kRepetition}));

  r = edit_distance("manger", "manger");
  EXPECT_EQ(r.distance, 0u);
  EXPECT_TRUE(r.ops.empty());
}

TEST(EditDistance, RepetitionThreshold) {
  // A run of 10 collapses at cost 1; 11 is too long.
  EXPECT_EQ(edit_distance("merc" + std::string(10, 'i'), "merci").distance, 1u);
  EXPECT_GT(edit_distance("merc" + std::string(11, 'i'), "merci").distance, 1u);
  EXPECT_EQ(edit_distance("trooop", "trop").distance, 1u);
  // Two separate runs cost one each.
  EXPECT_EQ(edit_distance("trrooop", "trop").distance, 2u);
  EXPECT_EQ(edit_distance("merciiiii", "merci", EditOptions{false, 10}).distance, 4u);
}

TEST(EditDistance, Positions) {
  const auto r = edit_distance("apelle", "appelle");
  ASSERT_EQ(r.ops.size(), 1u);
  EXPECT_LE(r.ops[0].position, 2u);
  EXPECT_EQ(to_string(EditKind::kDiacriticSub), "DIACRITIC_SUB");
}

TEST(EditDistance, WithoutRepetitionEqualsOsa) {
  std::mt19937 gen(17);
  const std::u32string alphabet = U"aeéèbcdr";
  for (int trial = 0; trial < 5000; ++trial) {
    std::u32string a;
    std::u32string b;
    const int na = static_cast<int>(gen() % 8);
    const int nb = static_cast<int>(gen() % 8);
    for (int i = 0; i < na; ++i) a += alphabet[gen() % alphabet.size()];
    for (int i = 0; i < nb; ++i) b += alphabet[gen() % alphabet.size()];
    const auto r = edit_distance(a, b, EditOptions{false, 10});
    ASSERT_EQ(r.distance, osa(a, b)) << text::to_utf8(a) << " / " << text::to_utf8(b);
    ASSERT_EQ(r.ops.size(), r.distance);
    // Repetition can only help.
    ASSERT_LE(edit_distance(a, b).distance, r.distance);
  }
}

}  // namespace
}  // namespace ugcmt::lexnoise
