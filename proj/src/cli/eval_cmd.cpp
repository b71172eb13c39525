#include <fmt/format.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "context.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/eval/alignment.hpp"
#include "ugcmt/eval/bleu.hpp"
#include "ugcmt/eval/polysemy.hpp"
#include "ugcmt/eval/ranking.hpp"

namespace ugcmt::cli {

namespace {

struct EvalOptions {
  std::string refs;
  std::string hyps;
  std::string srcs;
  bool lowercase = false;
  std::string json;
  std::uint64_t min_count = 3;
  std::size_t top = 0;
  std::string entries;
  std::string judgments;
  std::string gold_policy = "all";
  std::vector<std::string> systems;
  bool fleiss = false;
};

std::vector<std::string> slurp(const Context& ctx, const std::string& path) {
  auto r = ctx.reader(path);
  std::vector<std::string> lines;
  while (auto l = r.next()) lines.push_back(std::move(*l));
  r.finish();
  return lines;
}

void add_json(CLI::App* cmd, std::string& json) {
  cmd->add_option("--json", json, "Also write a JSON record to FILE ('-': instead of the table)");
}

// Table to stdout unless --json is "-"; JSON to the given file.
void emit(const Context& ctx, const std::string& json_path, const std::string& table,
          const nlohmann::json& record) {
  if (json_path == "-") {
    *ctx.out << record.dump() << '\n';
    return;
  }
  *ctx.out << table;
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw DataError(fmt::format("cannot write '{}'", json_path));
    f << record.dump(2) << '\n';
  }
}

nlohmann::json wilcoxon_json(const eval::WilcoxonResult& w) {
  return {{"p_value", w.p_value}, {"r_plus", w.r_plus}, {"r_minus", w.r_minus},
          {"n", w.n},             {"exact", w.exact},   {"degenerate", w.degenerate}};
}

}  // namespace

void add_eval_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<EvalOptions>();
  auto* ev = app.add_subcommand("eval", "Scoring and human-evaluation statistics");
  ev->require_subcommand(1);

  auto* bleu = ev->add_subcommand("bleu", "Corpus BLEU (13a, exp smoothing, one reference)");
  bleu->add_option("--refs", o->refs, "Reference file")->required();
  bleu->add_option("--hyps", o->hyps, "Hypothesis file ('-' for stdin)")->required();
  bleu->add_flag("--lowercase", o->lowercase, "Case-insensitive scoring");
  add_json(bleu, o->json);
  ctx.actions[bleu] = [&ctx, o] {
    const auto refs = slurp(ctx, o->refs);
    const auto hyps = slurp(ctx, o->hyps);
    eval::BleuConfig cfg;
    cfg.case_sensitive = !o->lowercase;
    cfg.threads = ctx.workers();
    const auto r = eval::corpus_bleu(hyps, refs, cfg);
    nlohmann::json rec{{"signature", r.signature},
                       {"score", r.score},
                       {"precisions", r.precisions},
                       {"bp", r.brevity_penalty},
                       {"hyp_len", r.stats.hyp_len},
                       {"ref_len", r.stats.ref_len},
                       {"sentences", hyps.size()}};
    log::info("bleu", rec);
    emit(ctx, o->json, fmt::format("{} = {}\n", r.signature, format_bleu(r).substr(7)), rec);
  };

  auto* mine = ev->add_subcommand("mine-subs", "Word substitutions from edit alignment");
  mine->add_option("--hyps", o->hyps, "Hypothesis file")->required();
  mine->add_option("--refs", o->refs, "Reference file")->required();
  mine->add_option("--min-count", o->min_count, "Minimum occurrences")->capture_default_str();
  mine->add_option("--top", o->top, "Print at most N (0: all)");
  add_json(mine, o->json);
  ctx.actions[mine] = [&ctx, o] {
    const auto hyps = slurp(ctx, o->hyps);
    const auto refs = slurp(ctx, o->refs);
    auto subs = eval::mine_substitutions(hyps, refs, o->min_count, ctx.workers());
    if (o->top > 0 && subs.size() > o->top) subs.resize(o->top);
    std::string table = fmt::format("{:>8}  {:<24}  {}\n", "count", "hyp", "ref");
    nlohmann::json rec = nlohmann::json::array();
    for (const auto& s : subs) {
      table += fmt::format("{:>8}  {:<24}  {}\n", s.count, s.hyp, s.ref);
      rec.push_back({{"hyp", s.hyp}, {"ref", s.ref}, {"count", s.count}});
    }
    emit(ctx, o->json, table, rec);
    ctx.note(fmt::format("mine-subs: {} substitutions with count >= {}", subs.size(),
                         o->min_count));
  };

  auto* poly = ev->add_subcommand("polysemy", "Accuracy on ambiguous source words");
  poly->add_option("--entries", o->entries, "word TAB accepted,forms")->required();
  poly->add_option("--srcs", o->srcs, "Source sentences")->required();
  poly->add_option("--hyps", o->hyps, "Translations")->required();
  add_json(poly, o->json);
  ctx.actions[poly] = [&ctx, o] {
    const auto entries = eval::load_polysemy_entries(o->entries);
    const auto srcs = slurp(ctx, o->srcs);
    const auto hyps = slurp(ctx, o->hyps);
    const auto rep = eval::polysemous_accuracy(srcs, hyps, entries);
    std::string table = fmt::format("{:<20}  {:>8}  {:>8}  {:>7}\n", "word", "source", "correct",
                                    "acc%");
    nlohmann::json words = nlohmann::json::array();
    for (const auto& e : rep.entries) {
      table += fmt::format("{:<20}  {:>8}  {:>8}  {:>7.1f}\n", e.source_word, e.n_source,
                           e.n_correct, e.accuracy());
      words.push_back({{"word", e.source_word},
                       {"n_source", e.n_source},
                       {"n_correct", e.n_correct},
                       {"accuracy", e.accuracy()}});
    }
    table += fmt::format("{:<20}  {:>8}  {:>8}  {:>7.1f}\n", "total", rep.total_source,
                         rep.total_correct, rep.percent());
    nlohmann::json rec{{"words", words},
                       {"total_source", rep.total_source},
                       {"total_correct", rep.total_correct},
                       {"percent", rep.percent()}};
    emit(ctx, o->json, table, rec);
  };

  auto* rank = ev->add_subcommand("ranking", "Win/tie/loss, signed-rank tests and agreement");
  rank->add_option("--judgments", o->judgments, "judge TAB sentence TAB ranking TAB gold TAB expected")
      ->required();
  rank->add_option("--gold-policy", o->gold_policy, "all | any-submission | none")
      ->capture_default_str();
  rank->add_option("--systems", o->systems, "Systems to compare (default: all, first-seen order)");
  rank->add_flag("--fleiss", o->fleiss, "Also report Fleiss' kappa");
  add_json(rank, o->json);
  ctx.actions[rank] = [&ctx, o] {
    const auto policy = eval::parse_gold_policy(o->gold_policy);
    const auto all = eval::load_judgments(o->judgments);
    const auto kept = eval::filter_judgments_by_gold(all, policy);
    const auto systems = o->systems.empty() ? eval::collect_systems(kept) : o->systems;
    auto table = eval::pairwise_table(kept, systems);
    eval::add_significance(table, kept);
    const auto agreement = eval::average_pairwise_kappa(kept);
    std::optional<eval::KappaResult> fleiss;
    if (o->fleiss) fleiss = eval::fleiss_kappa(kept);

    std::string out = fmt::format("judgments: {} read, {} kept (gold policy {})\n", all.size(),
                                  kept.size(), eval::to_string(policy));
    out += fmt::format("{:<12} {:<12} {:>6} {:>6} {:>6} {:>10}\n", "A", "B", "win", "tie",
                       "loss", "p");
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : table) {
      const double pv = p.test ? p.test->p_value : 1.0;
      out += fmt::format("{:<12} {:<12} {:>6} {:>6} {:>6} {:>10.4g}{}\n", p.a, p.b, p.wins,
                         p.ties, p.losses, pv, pv <= 0.01 ? " **" : (pv <= 0.05 ? " *" : ""));
      nlohmann::json j{{"a", p.a}, {"b", p.b}, {"wins", p.wins}, {"ties", p.ties},
                       {"losses", p.losses}};
      if (p.test) j["wilcoxon"] = wilcoxon_json(*p.test);
      pairs.push_back(std::move(j));
    }
    nlohmann::json rec{
        {"gold_policy", eval::to_string(policy)},
        {"judgments_read", all.size()},
        {"judgments_kept", kept.size()},
        {"systems", systems},
        {"unit", "one judgment (judge x sentence) per observation; sign of the rank difference"},
        {"test", fmt::format("two-sided Wilcoxon signed-rank, zeros dropped, midranks; exact null "
                             "for n <= {}, else normal with tie and continuity correction",
                             eval::kWilcoxonExactMax)},
        {"significance", {{"*", 0.05}, {"**", 0.01}}},
        {"pairs", pairs}};
    if (agreement) {
      out += fmt::format("kappa (pairwise Cohen): mean {:.3f} min {:.3f} max {:.3f} over {} judge "
                         "pairs\n",
                         agreement->mean, agreement->min, agreement->max, agreement->judge_pairs);
      rec["kappa"] = {{"mean", agreement->mean},
                      {"min", agreement->min},
                      {"max", agreement->max},
                      {"judge_pairs", agreement->judge_pairs},
                      {"degenerate_pairs", agreement->degenerate_pairs}};
    } else {
      out += "kappa: no two judges share an item\n";
    }
    out += "* p <= 0.05, ** p <= 0.01\n";
    if (fleiss) {
      out += fmt::format("kappa (Fleiss): {:.3f} over {} items\n", fleiss->kappa, fleiss->n);
      rec["fleiss"] = {{"kappa", fleiss->kappa}, {"n", fleiss->n}};
    }
    emit(ctx, o->json, out, rec);
  };
}

}  // namespace ugcmt::cli
