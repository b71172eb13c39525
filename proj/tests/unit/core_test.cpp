#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "test_util.hpp"
#include "ugcmt/core/corpus.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/rng.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt {
namespace {

std::string shell(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), p.get())) out.append(buf.data(), n);
  return out;
}

TEST(Corpus, MismatchedLineCounts) {
  testing::TempDir dir;
  testing::write_file(dir / "a.src", "1\n2\n3\n");
  testing::write_file(dir / "a.tgt", "1\n2\n");
  try {
    read_parallel(dir / "a.src", dir / "a.tgt");
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('3'), std::string::npos) << msg;
    EXPECT_NE(msg.find('2'), std::string::npos) << msg;
  }
}

TEST(Corpus, TenThousandLinesMatchPaste) {
  testing::TempDir dir;
  CounterRng rng(10);
  std::string s, t;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    s += "src " + std::to_string(rng.below(1000000, i)) + " é\n";
    t += "tgt " + std::to_string(i) + (i % 7 ? "" : " Ça va") + "\n";
  }
  testing::write_file(dir / "c.src", s);
  testing::write_file(dir / "c.tgt", t);
  const auto pairs = read_parallel(dir / "c.src", dir / "c.tgt");
  ASSERT_EQ(pairs.size(), 10000u);
  std::istringstream oracle(shell("paste -d '\\t' " + (dir / "c.src") + " " + (dir / "c.tgt")));
  std::string line;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ASSERT_TRUE(std::getline(oracle, line));
    EXPECT_EQ(pairs[i].line_no, i + 1);
    EXPECT_EQ(pairs[i].src + "\t" + *pairs[i].tgt, line);
  }
  EXPECT_FALSE(std::getline(oracle, line));
  EXPECT_EQ(count_lines(dir / "c.src"), 10000u);
}

TEST(Corpus, InvalidUtf8ReportsOffset) {
  testing::TempDir dir;
  testing::write_file(dir / "b.txt", "ok\nab\xff\n");
  LineReader r(dir / "b.txt");
  EXPECT_EQ(*r.next(), "ok");
  try {
    r.next();
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find('5'), std::string::npos) << e.what();
  }
  EXPECT_EQ(text::find_invalid_utf8("ab\xc3"), 2u);
  EXPECT_FALSE(text::find_invalid_utf8("ça"));
}

TEST(Corpus, NfcOnRead) {
  testing::TempDir dir;
  testing::write_file(dir / "n.txt", "c\xcc\xa7" "a\nd\xc3\xa9j\xc3\xa0\n");
  LineReader r(dir / "n.txt");
  EXPECT_EQ(*r.next(), "ça");
  EXPECT_EQ(*r.next(), "déjà");
  EXPECT_FALSE(r.next());
  EXPECT_EQ(r.normalized_lines(), 1u);
  r.finish();
}

TEST(Corpus, WriterRejectsNewlines) {
  std::ostringstream out;
  LineWriter w(out);
  w.write("a b");
  EXPECT_THROW(w.write("a\nb"), DataError);
  EXPECT_THROW(check_single_line("x\r"), DataError);
  w.flush();
  EXPECT_EQ(out.str(), "a b\n");
}

TEST(Reviews, RecordWithRating) {
  std::istringstream in(
      R"({"review_id":"r1","venue_type":"Bar, Bistro","rating":8.29,)"
      R"("sentences":[{"src":"Super bar !","tgt":"Great bar!"},{"src":"On reviendra."}]})"
      "\n");
  ReviewReader r(in, "mem", true);
  const auto rec = r.next();
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->review_id, "r1");
  ASSERT_EQ(rec->sentences.size(), 2u);
  EXPECT_EQ(rec->sentences[0].tgt, "Great bar!");
  EXPECT_FALSE(rec->sentences[1].tgt);
  EXPECT_EQ(rec->sentences[1].review_id, "r1");
  EXPECT_DOUBLE_EQ(*rec->rating, 8.29);
  EXPECT_EQ(rec->venue_type, "Bar, Bistro");
  EXPECT_FALSE(r.next());

  std::istringstream again(format_review(*rec) + "\n");
  ReviewReader r2(again, "mem", true);
  const auto back = r2.next();
  EXPECT_EQ(back->sentences, rec->sentences);
  EXPECT_EQ(back->rating, rec->rating);
}

TEST(Reviews, StrictAndLenient) {
  const std::string text =
      "{\"review_id\":\"a\",\"sentences\":[{\"src\":\"x\"}]}\nnot json\n"
      "{\"review_id\":\"b\",\"sentences\":[{\"src\":\"y\"}]}\n";
  std::istringstream strict_in(text);
  ReviewReader strict(strict_in, "mem", true);
  strict.next();
  EXPECT_THROW(strict.next(), DataError);

  std::istringstream lenient_in(text);
  ReviewReader lenient(lenient_in, "mem", false);
  EXPECT_EQ(lenient.next()->review_id, "a");
  EXPECT_EQ(lenient.next()->review_id, "b");
  EXPECT_EQ(lenient.records_skipped(), 1u);

  for (const char* bad : {"{\"sentences\":[{\"src\":\"x\"}]}", "{\"review_id\":\"c\",\"sentences\":[]}"}) {
    std::istringstream in(std::string(bad) + "\n");
    ReviewReader r(in, "mem", false);
    EXPECT_THROW(r.next(), DataError) << bad;
  }
  std::istringstream range("{\"review_id\":\"a\",\"rating\":11,\"sentences\":[{\"src\":\"x\"}]}\n");
  EXPECT_THROW(ReviewReader(range, "mem", true).next(), DataError);
}

TEST(Splits, Names) {
  for (auto n : {SplitName::kPE, SplitName::kHT, SplitName::kValid, SplitName::kTest}) {
    EXPECT_EQ(parse_split_name(to_string(n)), n);
  }
}

TEST(Rng, PureAndUniform) {
  const CounterRng a(42), b(42), c(43);
  EXPECT_EQ(a.bits(1, 2, 3), b.bits(1, 2, 3));
  EXPECT_NE(a.bits(1, 2, 3), c.bits(1, 2, 3));
  EXPECT_NE(a.bits(1, 2, 3), a.bits(1, 3, 2));
  std::array<int, 10> bins{};
  double sum = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = a.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    bins[a.below(10, i, 1)]++;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  for (int n : bins) EXPECT_NEAR(n / 100000.0, 0.1, 0.005);
}

}  // namespace
}  // namespace ugcmt
