// Acceptance checks. One PASS/FAIL (or SKIP) line per criterion; exit status
// is nonzero when any criterion fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ugcmt/casing.hpp"
#include "ugcmt/cli/app.hpp"
#include "ugcmt/core/corpus.hpp"
#include "ugcmt/core/rng.hpp"
#include "ugcmt/core/text.hpp"
#include "ugcmt/corpusops/filter.hpp"
#include "ugcmt/corpusops/temperature.hpp"
#include "ugcmt/eval/bleu.hpp"
#include "ugcmt/eval/polysemy.hpp"
#include "ugcmt/eval/stats.hpp"
#include "ugcmt/lexnoise/error_dictionary.hpp"
#include "ugcmt/lexnoise/lexicon.hpp"
#include "ugcmt/lexnoise/noise.hpp"
#include "ugcmt/lexnoise/profile.hpp"
#include "ugcmt/rarechar.hpp"

namespace fs = std::filesystem;
using namespace ugcmt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  bool skipped = false;
};

// Collects failed checks; the first few are reported.
class Checks {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && failures_++ < 5) notes_.push_back(what);
  }
  void info(const std::string& s) { info_.push_back(s); }
  Outcome done() const {
    Outcome o;
    o.ok = failures_ == 0;
    std::string d;
    for (const auto& s : info_) d += (d.empty() ? "" : "; ") + s;
    for (const auto& s : notes_) d += (d.empty() ? "" : "; ") + ("FAILED " + s);
    if (failures_ > 5) d += fmt::format("; {} more", failures_ - 5);
    o.detail = d;
    return o;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> info_;
};

fs::path data(const std::string& rel) { return fs::path(UGCMT_TEST_DATA) / rel; }

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
  std::ofstream out(p, std::ios::binary);
  for (const auto& l : lines) out << l << '\n';
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / fmt::format("ugcmt-accept-{}{}", rd(), rd());
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// ---------------------------------------------------------------------------
// Fixture generators.

const std::vector<std::string>& french_words() {
  static const auto words = read_lines(data("lexicon/fr.txt"));
  return words;
}

std::string random_case(std::mt19937& gen, const std::string& w) {
  switch (gen() % 6) {
    case 0:
      return text::upper(w);
    case 1:
      return text::title(w);
    default:
      return w;
  }
}

std::string random_sentence(std::mt19937& gen, bool recased) {
  static const std::vector<std::string> punct{".", "!", "?", ",", "!!", ":)"};
  static const std::vector<std::string> extra{"McDonalds", "iPhone", "42", "l'équipe", "5-star",
                                              "(super)", "YouTube"};
  const auto& words = french_words();
  std::string s;
  const int n = 1 + static_cast<int>(gen() % 14);
  for (int i = 0; i < n; ++i) {
    if (!s.empty()) s += ' ';
    const auto r = gen() % 20;
    std::string w = r == 0 ? extra[gen() % extra.size()]
                  : r == 1 ? punct[gen() % punct.size()]
                           : words[gen() % words.size()];
    s += recased ? random_case(gen, w) : w;
  }
  return s;
}

std::string corrupt(std::mt19937& gen, const std::string& word) {
  static const std::u32string pool = U"abcdeéèilmnorstuç";
  auto cps = text::to_u32(word);
  const std::size_t i = cps.empty() ? 0 : gen() % cps.size();
  switch (gen() % 6) {
    case 0:
      if (cps.size() > 1) cps.erase(i, 1);
      break;
    case 1:
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(i), pool[gen() % pool.size()]);
      break;
    case 2:
      cps[i] = pool[gen() % pool.size()];
      break;
    case 3:
      if (i + 1 < cps.size()) std::swap(cps[i], cps[i + 1]);
      break;
    case 4:
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(i), 3, cps[i]);
      break;
    default:
      cps[i] = text::base_letter(cps[i]);
      break;
  }
  return text::to_utf8(cps);
}

// Clean review-like French sentences.
std::vector<std::string> clean_corpus(std::uint32_t seed, std::size_t n) {
  std::mt19937 gen(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = random_sentence(gen, false);
    if (!s.empty()) s = text::title(s.substr(0, s.find(' '))) + s.substr(std::min(s.size(), s.find(' ')));
    out.push_back(s);
  }
  return out;
}

// In-domain text with natural typos on about one token in eight.
std::vector<std::string> typo_corpus(std::uint32_t seed, std::size_t n) {
  std::mt19937 gen(seed);
  const auto& words = french_words();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    const int len = 3 + static_cast<int>(gen() % 10);
    for (int k = 0; k < len; ++k) {
      const auto& w = words[gen() % words.size()];
      if (!s.empty()) s += ' ';
      s += gen() % 8 == 0 ? corrupt(gen, w) : w;
    }
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria.

Outcome casing_round_trips() {
  Checks c;
  using namespace casing;
  SegmentOptions opts;
  opts.marker = "_";
  opts.segmenter = [](std::string_view unit) -> std::vector<std::string> {
    if (unit == "fries") return {"f", "ries"};
    return {std::string(unit)};
  };
  const auto stream = encode_inline_text("Best fries EVER", opts);
  c.expect(stream == "best <T> _f ries _ever <U>", "worked example encodes to '" + stream + "'");
  c.expect(decode_inline_text("best <T> _f ries _ever <U>", "_") == "Best fries EVER",
           "worked example decode");

  // Sentences whose tokens are single-case after the mixed-case split, with a
  // segmenter that cuts units into pieces of two code points.
  SegmentOptions bpe;
  bpe.segmenter = [](std::string_view unit) {
    std::vector<std::string> pieces;
    const auto cps = text::to_u32(unit);
    for (std::size_t i = 0; i < cps.size(); i += 2) {
      pieces.push_back(text::to_utf8(cps.substr(i, 2)));
    }
    return pieces;
  };
  std::mt19937 gen(1001);
  std::size_t inline_bad = 0;
  std::size_t factored_bad = 0;
  std::size_t sentences = 0;
  while (sentences < 10000) {
    auto s = random_sentence(gen, true);
    std::string units;
    for (auto tok : text::split_whitespace(s)) {
      for (const auto& u : split_mixed_case(tok)) units += (units.empty() ? "" : " ") + u;
    }
    const auto& opt = sentences % 2 ? bpe : SegmentOptions{};
    if (decode_inline_text(encode_inline_text(units, opt)) != units) ++inline_bad;
    const auto [forms, tags] = encode_factored_text(units, opt);
    if (decode_factored_text(forms, tags) != units) ++factored_bad;
    ++sentences;
  }
  c.info(fmt::format("{} sentences, {} inline / {} factored mismatches", sentences, inline_bad,
                     factored_bad));
  c.expect(inline_bad == 0, "inline round trip");
  c.expect(factored_bad == 0, "factored round trip");
  return c.done();
}

Outcome case_noise_rates() {
  Checks c;
  casing::CaseNoiseProfile profile;
  profile.seed = 2024;
  std::string sentence;
  for (int i = 0; i < 100; ++i) sentence += i ? " xYz" : "xYz";
  std::map<std::string, std::size_t> seen;
  std::size_t tokens = 0;
  for (std::uint64_t s = 0; s < 1200; ++s) {
    const auto out = casing::apply_case_noise(sentence, profile, s);
    for (auto tok : text::split_whitespace(out)) {
      ++seen[std::string(tok)];
      ++tokens;
    }
  }
  const double n = static_cast<double>(tokens);
  const double up = seen["XYZ"] / n;
  const double title = seen["Xyz"] / n;
  const double low = seen["xyz"] / n;
  c.info(fmt::format("{} tokens: upper {:.4f} title {:.4f} lower {:.4f}", tokens, up, title, low));
  c.expect(std::abs(up - 0.05) <= 0.005, "upper rate");
  c.expect(std::abs(title - 0.10) <= 0.005, "title rate");
  c.expect(std::abs(low - 0.20) <= 0.005, "lower rate");
  c.expect(seen["xYz"] + seen["XYZ"] + seen["Xyz"] + seen["xyz"] == tokens, "only expected forms");
  return c.done();
}

Outcome placeholder_round_trip() {
  Checks c;
  static const std::vector<std::string> emojis{"🙂", "😍", "👍", "🍕", "❤", "🤤", "🎉", "☕",
                                               "😡", "🔥", "🥖", "✨"};
  std::mt19937 gen(77);
  std::vector<SentencePair> corpus;
  for (int i = 0; i < 1000; ++i) {
    auto s = random_sentence(gen, true);
    const int k = 1 + static_cast<int>(gen() % 4);
    for (int e = 0; e < k; ++e) {
      const auto& em = emojis[gen() % emojis.size()];
      s = gen() % 2 ? s + " " + em : s + em;
    }
    if (gen() % 3 == 0) s = emojis[gen() % emojis.size()] + s;
    SentencePair p;
    p.src = s;
    corpus.push_back(p);
  }
  const auto charset = rarechar::build_charset(rarechar::census(corpus), 100);
  std::size_t bad = 0;
  std::size_t count_mismatch = 0;
  std::size_t masked_total = 0;
  for (const auto& p : corpus) {
    const auto rec = rarechar::mask(p.src, charset);
    masked_total += rec.saved.size();
    if (rarechar::count_placeholders(rec.masked) != rec.saved.size()) ++count_mismatch;
    const auto sidecar = rarechar::parse_sidecar(rarechar::format_sidecar(rec.saved));
    const auto back = rarechar::restore(rec.masked, sidecar);
    if (back.text != p.src || back.missing || back.surplus) ++bad;
  }
  c.info(fmt::format("1000 sentences, {} characters masked", masked_total));
  c.expect(masked_total > 1000, "emojis were masked");
  c.expect(count_mismatch == 0, fmt::format("{} placeholder/sidecar count mismatches", count_mismatch));
  c.expect(bad == 0, fmt::format("{} restore mismatches", bad));
  return c.done();
}

Outcome fuzzy_matcher() {
  Checks c;
  using namespace lexnoise;
  const auto french = Lexicon::load(data("lexicon/fr.txt"));
  const std::vector<std::pair<std::string, std::string>> examples{
      {"apelle", "appelle"}, {"appercevoir", "apercevoir"}, {"mangè", "mangé"},
      {"mnager", "manger"},  {"menger", "manger"},          {"Merciiiii", "merci"}};
  for (const auto& [observed, correct] : examples) {
    const auto cs = fuzzy_match(observed, french, 2);
    const bool found = !cs.empty() && std::any_of(cs.begin(), cs.end(), [&](const Candidate& k) {
      return k.word == correct && k.distance == cs.front().distance && k.distance <= 2;
    });
    c.expect(found, observed + " -> " + correct);
  }

  std::mt19937 gen(31337);
  std::vector<std::string> words = french.words();
  std::set<std::string> seen(words.begin(), words.end());
  static const std::vector<std::string> letters{"a", "b", "c", "d", "e", "é", "è", "i", "l",
                                                "m", "n", "o", "r", "s", "t", "u", "ç"};
  while (words.size() < 5000) {
    std::string w;
    const int n = 2 + static_cast<int>(gen() % 8);
    for (int i = 0; i < n; ++i) w += letters[gen() % letters.size()];
    if (seen.insert(w).second) words.push_back(w);
  }
  const auto lex = Lexicon::from_words(words);
  std::size_t probes = 0;
  std::size_t differ = 0;
  while (probes < 500) {
    auto probe = words[gen() % words.size()];
    for (int e = 1 + static_cast<int>(gen() % 2); e > 0; --e) probe = corrupt(gen, probe);
    if (lex.contains(probe)) continue;
    ++probes;
    std::map<std::string, unsigned> oracle;
    for (const auto& w : lex.words()) {
      const auto d = edit_distance(probe, w).distance;
      if (d <= 2) oracle[w] = d;
    }
    std::map<std::string, unsigned> got;
    for (const auto& k : fuzzy_match(probe, lex, 2)) got[k.word] = k.distance;
    if (got != oracle) ++differ;
  }
  c.info(fmt::format("{}-word lexicon, {} probes, {} differ from exhaustive scan", lex.size(),
                     probes, differ));
  c.expect(differ == 0, "oracle equivalence");
  return c.done();
}

Outcome noise_calibration() {
  Checks c;
  using namespace lexnoise;
  const auto lex = Lexicon::load(data("lexicon/fr.txt"));
  DictionaryBuildOptions build;
  build.threads = 4;
  auto dict = std::make_shared<ErrorDictionary>(build_error_dictionary(typo_corpus(5, 20000), lex, build));

  NoiseConfig config;
  config.dictionary = dict;
  config.rules = std::make_shared<RuleSet>(default_rules());
  config.seed = 17;
  const auto sample = clean_corpus(11, 10000);
  const auto cal = calibrate_rate(config, sample, 0.30, 0.02, 8);
  config.token_rate = cal.token_rate;

  std::vector<SentencePair> pairs;
  for (const auto& s : clean_corpus(12, 10000)) {
    SentencePair p;
    p.src = s;
    p.tgt = "EN: " + s;
    pairs.push_back(p);
  }
  const auto noised = noisify_corpus(pairs, config, 8);
  const double rate = static_cast<double>(noised.modified_count) / static_cast<double>(pairs.size());
  bool targets_same = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) targets_same &= noised.pairs[i].tgt == pairs[i].tgt;
  c.info(fmt::format("dictionary {} words; rules alone {:.4f}; token rate {:.4f}; sample {:.4f}; "
                     "held-out {:.4f}",
                     dict->size(), cal.min_rate, cal.token_rate, cal.measured_rate, rate));
  c.expect(std::abs(cal.measured_rate - 0.30) <= 0.02, "calibration sample rate");
  c.expect(std::abs(rate - 0.30) <= 0.02, "noisify_corpus rate on 10k held-out pairs");
  c.expect(targets_same, "targets byte-identical");
  return c.done();
}

SentencePair make_pair(std::string s, std::string t) {
  SentencePair p;
  p.src = std::move(s);
  p.tgt = std::move(t);
  return p;
}

std::string n_words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i ? " w" : "w";
  return s;
}

Outcome filters() {
  Checks c;
  using namespace corpusops;
  const FilterConfig cfg;
  c.expect(filter_pair(make_pair(n_words(175), n_words(175)), cfg).keep, "175 words kept");
  c.expect(!filter_pair(make_pair(n_words(176), n_words(176)), cfg).keep, "176 words dropped");
  c.expect(filter_pair(make_pair(n_words(100), n_words(150)), cfg).keep, "ratio 1.5 kept");
  c.expect(filter_pair(make_pair(n_words(150), n_words(100)), cfg).keep, "ratio 1.5 reversed kept");
  c.expect(!filter_pair(make_pair(n_words(100), n_words(151)), cfg).keep, "ratio 1.51 dropped");
  c.expect(!filter_pair(make_pair(n_words(10), n_words(16)), cfg).keep, "ratio 1.6 dropped");
  FilterConfig eps = cfg;
  eps.max_ratio = std::nextafter(1.5, 0.0);
  c.expect(!filter_pair(make_pair(n_words(100), n_words(150)), eps).keep,
           "ratio 1.5 dropped just below the threshold");

  std::mt19937 gen(404);
  std::vector<SentencePair> corpus;
  for (int i = 0; i < 5000; ++i) {
    corpus.push_back(make_pair("s" + std::to_string(gen() % 1500), "t" + std::to_string(gen() % 3)));
  }
  std::set<std::pair<std::string, std::string>> oracle;
  std::vector<SentencePair> expected;
  for (const auto& p : corpus) {
    if (oracle.insert({p.src, *p.tgt}).second) expected.push_back(p);
  }
  const auto once = dedup(corpus);
  const auto twice = dedup(once);
  c.info(fmt::format("dedup {} -> {} pairs", corpus.size(), once.size()));
  c.expect(once == expected, "dedup keeps first occurrences in order");
  c.expect(twice == once, "dedup idempotent");
  return c.done();
}

Outcome bleu() {
  Checks c;
  using namespace eval;
  const auto refs = read_lines(data("bleu/ref.txt"));
  const auto hyps = read_lines(data("bleu/hyp.txt"));
  // Reference scorer outputs on this 100-pair fixture (13a, exp smoothing).
  constexpr double kMixed = 43.4714791848946;
  constexpr double kLower = 47.72464480280144;
  BleuConfig mixed;
  BleuConfig lower;
  lower.case_sensitive = false;
  const auto m = corpus_bleu(hyps, refs, mixed);
  const auto l = corpus_bleu(hyps, refs, lower);
  c.info(fmt::format("{} pairs: {:.4f} (ref {:.4f}), lowercase {:.4f} (ref {:.4f})", refs.size(),
                     m.score, kMixed, l.score, kLower));
  c.expect(refs.size() == 100 && hyps.size() == 100, "fixture size");
  c.expect(std::abs(m.score - kMixed) <= 0.01, "case-sensitive BLEU");
  c.expect(std::abs(l.score - kLower) <= 0.01, "lowercase BLEU");
  c.expect(corpus_bleu(refs, refs, mixed).score == 100.0, "identity scores exactly 100");
  c.expect(corpus_bleu(refs, refs, lower).score == 100.0, "identity scores exactly 100 (lowercase)");
  return c.done();
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(std::stod(f));
  return out;
}

Outcome statistics() {
  Checks c;
  using namespace eval;
  std::size_t cases = 0;
  double worst = 0;
  for (const auto& line : read_lines(data("stats/wilcoxon.tsv"))) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string method, p, diffs;
    std::getline(ss, method, '\t');
    std::getline(ss, p, '\t');
    std::getline(ss, diffs, '\t');
    const auto d = parse_doubles(diffs);
    const auto r = wilcoxon_signed_rank(d);
    worst = std::max(worst, std::abs(r.p_value - std::stod(p)));
    ++cases;
  }
  c.info(fmt::format("{} reference cases, max |dp| {:.2e}", cases, worst));
  c.expect(cases == 50, "50 reference cases");
  c.expect(worst <= 1e-6, "p-values within 1e-6");

  const std::vector<double> positive{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto w = wilcoxon_signed_rank(positive);
  c.expect(w.exact && w.p_value == 2.0 / 1024.0, fmt::format("ten positives p = {}", w.p_value));

  const std::vector<std::string> a{"<", "=", ">", "<", ">", "="};
  c.expect(cohen_kappa(a, a).kappa == 1.0, "kappa of perfect agreement");
  std::vector<std::string> ka, kb;
  for (char ch : std::string("AAAAAAAABBBBBBBCCCCC")) ka.emplace_back(1, ch);
  for (char ch : std::string("AAAAAABCABBBBBCBCCCC")) kb.emplace_back(1, ch);
  // p_o = 15/20, p_e = 135/400.
  const auto k = cohen_kappa(ka, kb);
  c.expect(std::abs(k.kappa - 33.0 / 53.0) <= 1e-12, fmt::format("20-item kappa {}", k.kappa));
  return c.done();
}

Outcome temperature() {
  Checks c;
  using corpusops::temperature_distribution;
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> z_dist(-50, 50);
  std::size_t bad_sum = 0, bad_argmax = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> z(1 + gen() % 20);
    for (auto& v : z) v = z_dist(gen);
    const auto arg = std::max_element(z.begin(), z.end()) - z.begin();
    for (double t : {1e-3, 0.1, 1.0 / 0.9, 3.0, 100.0}) {
      const auto p = temperature_distribution(z, t);
      if (std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) > 1e-12) ++bad_sum;
      if (std::max_element(p.begin(), p.end()) - p.begin() != arg) ++bad_argmax;
    }
  }
  const std::vector<double> z{1, 0};
  const double p0 = temperature_distribution(z, 1.0 / 0.9)[0];
  const double expect = std::exp(0.9) / (std::exp(0.9) + 1);
  c.info(fmt::format("p0 = {:.12f}", p0));
  c.expect(bad_sum == 0, "sums to 1 within 1e-12");
  c.expect(bad_argmax == 0, "argmax invariant");
  c.expect(std::abs(p0 - expect) <= 1e-9, "z=[1,0], T=1/0.9");
  return c.done();
}

int cli(const std::vector<std::string>& args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  if (code != 0) fmt::print(stderr, "ugcmt {}: {}", fmt::join(args, " "), err.str());
  return code;
}

// Builds every artifact of the fixture pipeline in `dir`.
bool run_pipeline(const fs::path& dir, unsigned threads) {
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  std::mt19937 gen(555);
  std::vector<std::string> src, tgt;
  for (int i = 0; i < 3000; ++i) {
    auto s = random_sentence(gen, true);
    if (i % 50 == 0) s += " 🙂";
    if (i % 97 == 0) s += " ✨";
    src.push_back(s);
    tgt.push_back("en " + std::to_string(gen() % 2000) + " " + s.substr(0, s.find(' ')));
    if (i % 40 == 0) {
      src.push_back(src.back());
      tgt.push_back(tgt.back());
    }
  }
  write_lines(dir / "raw.src", src);
  write_lines(dir / "raw.tgt", tgt);
  write_lines(dir / "ugc.txt", typo_corpus(21, 3000));
  fs::copy_file(data("lexicon/fr.txt"), dir / "lex.txt");

  const std::string t = std::to_string(threads);
  const std::vector<std::string> g{"--threads", t, "--seed", "7", "--quiet"};
  const auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), g.begin(), g.end());
    return cli(args) == 0;
  };
  bool ok = true;
  ok &= run({"filter", "--src", p("raw.src"), "--tgt", p("raw.tgt"), "--out-src", p("f.src"),
             "--out-tgt", p("f.tgt"), "--dedup", "--max-words", "12", "--max-ratio", "3"});
  ok &= run({"rarechar", "census", p("f.src"), "-o", p("census.tsv")});
  ok &= run({"rarechar", "mask", "-i", p("f.src"), "-o", p("m.src"), "--census", p("census.tsv"),
             "--min-count", "40", "--sidecar", p("m.sidecar")});
  ok &= run({"rarechar", "restore", "-i", p("m.src"), "-o", p("r.src"), "--sidecar", p("m.sidecar")});
  ok &= run({"case", "noise", "-i", p("m.src"), "-o", p("cn.src")});
  ok &= run({"noise", "build-dict", "--lexicon", p("lex.txt"), "--corpus", p("ugc.txt"), "--out",
             p("dict.tsv")});
  ok &= run({"noise", "apply", "--dict", p("dict.tsv"), "--rate", "0.2", "-i", p("cn.src"), "-o",
             p("noised.src"), "--flags", p("noised.flags")});
  ok &= run({"tag", "add", "--name", "PE", "-i", p("noised.src"), "-o", p("pe.src")});
  fs::copy_file(dir / "noised.src", dir / "bt.src");
  fs::copy_file(dir / "f.tgt", dir / "bt.tgt");
  fs::copy_file(dir / "m.src", dir / "ugc.src");
  fs::copy_file(dir / "f.tgt", dir / "ugc.tgt");
  {
    std::ofstream m(dir / "manifest.txt");
    m << "# name: UGC+BT\nugc\t-\t1\t0\nbt\tBT\t2\t0\n";
  }
  ok &= run({"compose", "--manifest", p("manifest.txt"), "--epoch", "3", "--out-src", p("c.src"),
             "--out-tgt", p("c.tgt")});
  ok &= run({"case", "encode", "-i", p("c.src"), "-o", p("c.inline")});
  ok &= run({"case", "encode", "--scheme", "factored", "-i", p("c.src"), "-o", p("c.forms"),
             "--tags-out", p("c.tags")});
  ok &= run({"eval", "bleu", "--refs", p("f.src"), "--hyps", p("noised.src"), "--json",
             p("bleu.json")});
  return ok;
}

Outcome determinism() {
  Checks c;
  TempDir tmp;
  std::vector<fs::path> runs;
  for (unsigned threads : {1u, 8u}) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto d = tmp.path() / fmt::format("t{}_r{}", threads, rep);
      fs::create_directories(d);
      c.expect(run_pipeline(d, threads), fmt::format("pipeline at {} threads", threads));
      runs.push_back(d);
    }
  }
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(runs[0])) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  std::size_t compared = 0;
  for (const auto& name : names) {
    const auto ref = read_file(runs[0] / name);
    c.expect(!ref.empty(), name + " is empty");
    for (std::size_t r = 1; r < runs.size(); ++r) {
      c.expect(fs::exists(runs[r] / name) && read_file(runs[r] / name) == ref,
               fmt::format("{} differs in {}", name, runs[r].filename().string()));
      ++compared;
    }
  }
  c.expect(read_file(runs[0] / "r.src") == read_file(runs[0] / "f.src"), "mask/restore identity");
  c.expect(read_file(runs[0] / "noised.src") != read_file(runs[0] / "cn.src"), "noise applied");
  c.expect(read_file(runs[0] / "cn.src") != read_file(runs[0] / "m.src"), "case noise applied");
  c.info(fmt::format("{} artifacts, {} comparisons", names.size(), compared));
  return c.done();
}

Outcome foursquare() {
  const char* env = std::getenv("UGCMT_FOURSQUARE_DIR");
  if (env == nullptr || *env == '\0') {
    Outcome o;
    o.skipped = true;
    o.detail = "UGCMT_FOURSQUARE_DIR not set";
    return o;
  }
  Checks c;
  const fs::path dir(env);
  const auto test_src = read_lines(dir / "test.fr");
  c.expect(!test_src.empty(), "test.fr present");
  const auto entries = eval::parse_polysemy_entries("cadre\tsetting\ncuisine\tfood\ncarte\tmenu\n");
  const auto rep = eval::polysemous_accuracy(test_src, test_src, entries);
  std::map<std::string, std::uint64_t> n;
  for (const auto& e : rep.entries) n[e.source_word] = e.n_source;
  c.info(fmt::format("n_source cadre {} cuisine {} carte {}", n["cadre"], n["cuisine"], n["carte"]));
  c.expect(n["cadre"] == 23 && n["cuisine"] == 32 && n["carte"] == 29, "n_source counts");

  std::vector<std::string> all;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".fr") {
      for (auto& l : read_lines(e.path())) all.push_back(std::move(l));
    }
  }
  const auto prof = lexnoise::noise_profile(all, nullptr);
  c.info(fmt::format("emojis {:.3f}, all-caps {:.3f} per 100 tokens", prof.emojis_per_100(),
                     prof.allcaps_per_100()));
  c.expect(std::abs(prof.emojis_per_100() - 0.17) <= 0.03, "emoji rate");
  c.expect(std::abs(prof.allcaps_per_100() - 0.14) <= 0.03, "all-caps rate");
  return c.done();
}

struct Criterion {
  const char* name;
  double limit_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"casing round trips", 5, casing_round_trips},
      {"case-noise rates", 10, case_noise_rates},
      {"placeholder round trip", 2, placeholder_round_trip},
      {"fuzzy matcher", 30, fuzzy_matcher},
      {"noise calibration", 60, noise_calibration},
      {"filters", 0, filters},
      {"BLEU", 0, bleu},
      {"statistics", 0, statistics},
      {"temperature distribution", 0, temperature},
      {"end-to-end determinism", 0, determinism},
      {"Foursquare constants", 0, foursquare},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.skipped && cr.limit_s > 0 && secs >= cr.limit_s) {
      o.ok = false;
      o.detail += fmt::format("; runtime over {:.0f} s", cr.limit_s);
    }
    const char* status = o.skipped ? "SKIP" : o.ok ? "PASS" : "FAIL";
    failed += !o.ok && !o.skipped;
    fmt::print("[{}] {:2}. {} ({:.2f} s): {}\n", status, i + 1, cr.name, secs, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
