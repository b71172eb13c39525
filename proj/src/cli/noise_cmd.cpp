#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "context.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/lexnoise/error_dictionary.hpp"
#include "ugcmt/lexnoise/lexicon.hpp"
#include "ugcmt/lexnoise/noise.hpp"
#include "ugcmt/lexnoise/profile.hpp"
#include "ugcmt/lexnoise/rules.hpp"

namespace ugcmt::cli {

namespace {

struct NoiseOptions {
  std::string lexicon;
  std::string corpus;
  std::string dict;
  std::string rules;
  bool no_rules = false;
  double rule_probability = lexnoise::kDefaultRuleProbability;
  std::string sample;
  double target = 0.30;
  double tolerance = 0.02;
  double rate = 0.0;
  std::string input = "-";
  std::string output = "-";
  std::string flags;
  std::string acronyms;
  unsigned max_dist = 2;
  bool json = false;
};

std::vector<std::string> read_all(const std::string& path) {
  std::vector<std::string> lines;
  LineReader r{std::filesystem::path(path)};
  while (auto l = r.next()) lines.push_back(std::move(*l));
  return lines;
}

std::shared_ptr<const lexnoise::RuleSet> load_rule_set(const NoiseOptions& o) {
  if (o.no_rules) return std::make_shared<lexnoise::RuleSet>();
  if (!o.rules.empty()) {
    return std::make_shared<lexnoise::RuleSet>(lexnoise::load_rules(o.rules));
  }
  return std::make_shared<lexnoise::RuleSet>(lexnoise::default_rules(o.rule_probability));
}

lexnoise::NoiseConfig make_config(const Context& ctx, const NoiseOptions& o) {
  lexnoise::NoiseConfig c;
  if (!std::filesystem::exists(o.dict)) {
    throw UsageError(fmt::format("dictionary '{}' does not exist", o.dict));
  }
  c.dictionary = std::make_shared<lexnoise::ErrorDictionary>(lexnoise::ErrorDictionary::load(o.dict));
  c.rules = load_rule_set(o);
  c.token_rate = o.rate;
  c.seed = ctx.seed;
  c.validate();
  return c;
}

void add_rule_options(CLI::App* cmd, NoiseOptions& o) {
  cmd->add_option("--rules", o.rules, "Rules file (default: built-in rule set)");
  cmd->add_flag("--no-rules", o.no_rules, "Disable regex rules");
  cmd->add_option("--rule-probability", o.rule_probability,
                  "Per-match probability of the built-in rules")
      ->default_str("0.02");
}

}  // namespace

void add_noise_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<NoiseOptions>();
  auto* group = app.add_subcommand("noise", "Natural-noise dictionary and injection");
  group->require_subcommand(1);

  auto* build = group->add_subcommand("build-dict", "Harvest spelling variants from text");
  build->add_option("--lexicon", o->lexicon, "Word list (word[TAB frequency])")->required();
  build->add_option("--corpus", o->corpus, "Monolingual in-domain text")->required();
  build->add_option("--out", o->dict, "Dictionary to write")->required();
  build->add_option("--max-dist", o->max_dist, "Maximum edit distance")->capture_default_str();
  ctx.actions[build] = [&ctx, o] {
    ctx.check_distinct({o->lexicon, o->corpus}, {o->dict});
    const auto lex = lexnoise::Lexicon::load(o->lexicon);
    const auto corpus = read_all(o->corpus);
    lexnoise::DictionaryBuildOptions opts;
    opts.max_dist = o->max_dist;
    opts.threads = ctx.workers();
    const auto dict = lexnoise::build_error_dictionary(corpus, lex, opts);
    dict.save(o->dict);
    ctx.note(fmt::format("noise build-dict: {} sentences, {} entries", corpus.size(), dict.size()));
  };

  auto* cal = group->add_subcommand("calibrate", "Find the token rate for a sentence rate");
  cal->add_option("--dict", o->dict, "Error dictionary")->required();
  add_rule_options(cal, *o);
  cal->add_option("--sample", o->sample, "Sample of source sentences")->required();
  cal->add_option("--target", o->target, "Fraction of sentences to modify")->default_str("0.30");
  cal->add_option("--tolerance", o->tolerance, "Accepted deviation from the target")
      ->default_str("0.02");
  cal->add_flag("--json", o->json, "Print a JSON record");
  ctx.randomized.push_back(cal);
  ctx.actions[cal] = [&ctx, o] {
    auto config = make_config(ctx, *o);
    const auto sample = read_all(o->sample);
    const auto res = lexnoise::calibrate_rate(config, sample, o->target, o->tolerance, ctx.workers());
    if (o->json) {
      *ctx.out << nlohmann::json{{"token_rate", res.token_rate},
                                 {"measured_rate", res.measured_rate},
                                 {"min_rate", res.min_rate},
                                 {"max_rate", res.max_rate},
                                 {"rules_disabled", res.rules_disabled},
                                 {"target", o->target},
                                 {"seed", ctx.seed},
                                 {"sample", sample.size()}}
                      .dump()
               << '\n';
    } else {
      *ctx.out << fmt::format("{:.6f}\n", res.token_rate);
    }
    ctx.note(fmt::format("noise calibrate: rate {:.6f} modifies {:.4f} of {} sentences{}",
                         res.token_rate, res.measured_rate, sample.size(),
                         res.rules_disabled ? " (rules disabled)" : ""));
  };

  auto* apply = group->add_subcommand("apply", "Inject noise into source sentences");
  add_io(apply, o->input, o->output);
  apply->add_option("--dict", o->dict, "Error dictionary")->required();
  add_rule_options(apply, *o);
  apply->add_option("--rate", o->rate, "Per-token replacement probability")
      ->capture_default_str();
  apply->add_option("--flags", o->flags, "Write 1/0 per line for modified sentences");
  ctx.randomized.push_back(apply);
  ctx.actions[apply] = [&ctx, o] {
    ctx.check_distinct({o->input, o->dict, o->rules}, {o->output, o->flags});
    const auto config = make_config(ctx, *o);
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    std::optional<LineWriter> flags;
    if (!o->flags.empty()) flags.emplace(std::filesystem::path(o->flags));
    std::vector<std::string> batch;
    std::vector<lexnoise::NoisedSentence> res;
    std::uint64_t n = 0;
    std::uint64_t modified = 0;
    for (bool more = true; more;) {
      batch.clear();
      while (batch.size() < 4096) {
        auto line = in.next();
        if (!line) {
          more = false;
          break;
        }
        batch.push_back(std::move(*line));
      }
      res.assign(batch.size(), {});
      parallel_for(batch.size(), ctx.workers(), [&](std::size_t i) {
        res[i] = lexnoise::inject_noise(batch[i], config, n + i);
      });
      for (const auto& r : res) {
        out.write(r.text);
        if (flags) flags->write(r.modified ? "1" : "0");
        modified += r.modified;
      }
      n += batch.size();
    }
    in.finish();
    ctx.note(fmt::format("noise apply: {} lines, {} modified ({:.2f}%)", n, modified,
                         n ? 100.0 * static_cast<double>(modified) / static_cast<double>(n) : 0.0));
  };

  auto* profile = group->add_subcommand("profile", "Emojis, all-caps words and typos per 100 tokens");
  profile->add_option("-i,--input", o->input, "Corpus ('-' for stdin)")->capture_default_str();
  profile->add_option("--lexicon", o->lexicon, "Word list for typo counting");
  profile->add_option("--acronyms", o->acronyms, "Words not counted as all-caps, one per line");
  profile->add_option("--max-dist", o->max_dist, "Maximum edit distance for typos")
      ->capture_default_str();
  profile->add_flag("--json", o->json, "Print a JSON record");
  ctx.actions[profile] = [&ctx, o] {
    std::vector<std::string> corpus;
    {
      auto in = ctx.reader(o->input);
      while (auto l = in.next()) corpus.push_back(std::move(*l));
    }
    lexnoise::ProfileOptions opts;
    opts.max_dist = o->max_dist;
    opts.threads = ctx.workers();
    if (!o->acronyms.empty()) {
      for (auto& a : read_all(o->acronyms)) {
        if (!a.empty()) opts.acronyms.insert(std::move(a));
      }
    }
    std::optional<lexnoise::Lexicon> lex;
    if (!o->lexicon.empty()) lex = lexnoise::Lexicon::load(o->lexicon);
    const auto p = lexnoise::noise_profile(corpus, lex ? &*lex : nullptr, opts);
    if (o->json) {
      nlohmann::json j = {{"tokens", p.tokens},
                          {"emojis_per_100", p.emojis_per_100()},
                          {"allcaps_per_100", p.allcaps_per_100()}};
      if (lex) {
        j["typos_per_100"] = p.typos_per_100();
      } else {
        j["typos_per_100"] = nullptr;
      }
      *ctx.out << j.dump() << '\n';
    } else {
      *ctx.out << fmt::format("tokens\t{}\nemojis/100\t{:.2f}\nallcaps/100\t{:.2f}\n", p.tokens,
                              p.emojis_per_100(), p.allcaps_per_100());
      if (lex) *ctx.out << fmt::format("typos/100\t{:.2f}\n", p.typos_per_100());
    }
  };
}

}  // namespace ugcmt::cli
