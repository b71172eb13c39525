#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "context.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/corpusops/compose.hpp"
#include "ugcmt/corpusops/filter.hpp"
#include "ugcmt/corpusops/tags.hpp"

namespace ugcmt::cli {

namespace {

struct CorpusOptions {
  std::string src;
  std::string tgt;
  std::string out_src;
  std::string out_tgt;
  std::string rejects;
  std::uint64_t max_words = 175;
  double max_ratio = 1.5;
  bool dedup = false;
  std::string langid_cmd;
  std::string src_lang = "fr";
  std::string tgt_lang = "en";
  std::string input = "-";
  std::string output = "-";
  std::string name;
  std::string tags_out;
  std::string manifest;
  std::uint64_t epoch = 1;
  bool no_shuffle = false;
  std::string src_suffix = ".src";
  std::string tgt_suffix = ".tgt";
  std::string reviews;
};

}  // namespace

void add_corpus_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<CorpusOptions>();

  auto* filter = app.add_subcommand("filter", "Length, ratio, language and duplicate filters");
  filter->add_option("--src", o->src, "Source side")->required();
  filter->add_option("--tgt", o->tgt, "Target side")->required();
  filter->add_option("--out-src", o->out_src, "Kept source lines")->required();
  filter->add_option("--out-tgt", o->out_tgt, "Kept target lines")->required();
  filter->add_option("--max-words", o->max_words, "Drop sides longer than this many words")
      ->capture_default_str();
  filter->add_option("--max-ratio", o->max_ratio, "Drop pairs whose word-count ratio exceeds this")
      ->default_str("1.5");
  filter->add_flag("--dedup", o->dedup, "Drop repeated (src, tgt) pairs");
  filter->add_option("--langid-cmd", o->langid_cmd,
                     "Command answering one language code per input line");
  filter->add_option("--src-lang", o->src_lang, "Expected source language")->capture_default_str();
  filter->add_option("--tgt-lang", o->tgt_lang, "Expected target language")->capture_default_str();
  filter->add_option("--rejects", o->rejects, "Write 'line<TAB>reason' for dropped pairs");
  ctx.actions[filter] = [&ctx, o] {
    ctx.check_distinct({o->src, o->tgt}, {o->out_src, o->out_tgt, o->rejects});
    corpusops::FilterConfig cfg;
    cfg.max_words = o->max_words;
    cfg.max_ratio = o->max_ratio;
    cfg.dedup = o->dedup;
    if (!o->langid_cmd.empty()) {
      cfg.langid = std::make_shared<corpusops::CommandLanguageIdentifier>(o->langid_cmd);
      cfg.src_lang = o->src_lang;
      cfg.tgt_lang = o->tgt_lang;
    }
    cfg.validate();
    ParallelReader reader(o->src, o->tgt);
    ParallelWriter writer(o->out_src, o->out_tgt);
    std::optional<LineWriter> rejects;
    if (!o->rejects.empty()) rejects.emplace(std::filesystem::path(o->rejects));
    corpusops::Deduplicator dedup;
    corpusops::FilterStats stats;
    while (auto pair = reader.next()) {
      ++stats.read;
      auto d = corpusops::filter_pair(*pair, cfg);
      if (d.keep && cfg.dedup && !dedup.insert(*pair)) {
        d = {false, corpusops::DropReason::kDuplicate};
      }
      if (d.keep) {
        ++stats.kept;
        writer.write(*pair);
      } else {
        ++stats.dropped[static_cast<std::size_t>(d.reason)];
        if (rejects) {
          rejects->write(fmt::format("{}\t{}", pair->line_no, corpusops::to_string(d.reason)));
        }
      }
    }
    nlohmann::json dropped;
    for (auto r : {corpusops::DropReason::kEmpty, corpusops::DropReason::kLength,
                   corpusops::DropReason::kRatio, corpusops::DropReason::kLanguage,
                   corpusops::DropReason::kDuplicate}) {
      dropped[std::string(corpusops::to_string(r))] = stats.dropped[static_cast<std::size_t>(r)];
    }
    log::info("filter", {{"read", stats.read}, {"kept", stats.kept}, {"dropped", dropped}});
    ctx.note(fmt::format("filter: kept {} of {} pairs; dropped {}", stats.kept, stats.read,
                         dropped.dump()));
  };

  auto* tag = app.add_subcommand("tag", "Corpus tags on the source side");
  tag->require_subcommand(1);
  auto* add = tag->add_subcommand("add", "Prefix every line with <NAME>");
  add_io(add, o->input, o->output);
  add->add_option("--name", o->name, "Tag name, e.g. PE or BT")->required();
  ctx.actions[add] = [&ctx, o] {
    ctx.check_distinct({o->input}, {o->output});
    const corpusops::CorpusTag t(o->name);
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    const auto n = map_lines(in, out, ctx.workers(), [&](const std::string& line, std::size_t i) {
      try {
        return corpusops::add_tag(line, t);
      } catch (const DataError& e) {
        throw DataError(fmt::format("line {}: {}", i + 1, e.what()));
      }
    });
    ctx.note(fmt::format("tag add <{}>: {} lines", o->name, n));
  };
  auto* strip = tag->add_subcommand("strip", "Remove a leading tag");
  add_io(strip, o->input, o->output);
  strip->add_option("--tags-out", o->tags_out, "Write the removed tag name per line ('-' if none)");
  ctx.actions[strip] = [&ctx, o] {
    ctx.check_distinct({o->input}, {o->output, o->tags_out});
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    std::optional<LineWriter> tags;
    if (!o->tags_out.empty()) tags.emplace(std::filesystem::path(o->tags_out));
    std::uint64_t n = 0;
    std::uint64_t tagged = 0;
    while (auto line = in.next()) {
      auto [text, t] = corpusops::strip_tag(*line);
      out.write(text);
      if (tags) tags->write(t ? t->name() : "-");
      tagged += t.has_value();
      ++n;
    }
    ctx.note(fmt::format("tag strip: {} lines, {} tagged", n, tagged));
  };

  auto* compose = app.add_subcommand("compose", "Assemble a training corpus from a manifest");
  compose->add_option("--manifest", o->manifest, "Manifest: path tag|- oversample resample")
      ->required();
  compose->add_option("--epoch", o->epoch, "Epoch (selects resampled files)")
      ->capture_default_str();
  compose->add_option("--out-src", o->out_src, "Composed source side")->required();
  compose->add_option("--out-tgt", o->out_tgt, "Composed target side")->required();
  compose->add_flag("--no-shuffle", o->no_shuffle, "Concatenate in manifest order");
  compose->add_option("--src-suffix", o->src_suffix, "Source file suffix")->capture_default_str();
  compose->add_option("--tgt-suffix", o->tgt_suffix, "Target file suffix")->capture_default_str();
  ctx.randomized.push_back(compose);
  ctx.actions[compose] = [&ctx, o] {
    const auto manifest = corpusops::CompositionManifest::load(o->manifest);
    corpusops::ComposeOptions opts;
    opts.src_suffix = o->src_suffix;
    opts.tgt_suffix = o->tgt_suffix;
    opts.shuffle = !o->no_shuffle;
    std::vector<std::string> inputs{o->manifest};
    for (const auto& s : corpusops::resolve_sources(manifest, o->epoch, opts)) {
      inputs.push_back(s.src.string());
      inputs.push_back(s.tgt.string());
    }
    ctx.check_distinct(inputs, {o->out_src, o->out_tgt});
    ParallelWriter writer(o->out_src, o->out_tgt);
    const auto n = corpusops::compose(
        manifest, o->epoch, ctx.seed, [&](const SentencePair& p) { writer.write(p); }, opts);
    ctx.note(fmt::format("compose{}: {} pairs (epoch {}, seed {}{})",
                         manifest.scheme_name.empty() ? "" : " '" + manifest.scheme_name + "'", n,
                         o->epoch, ctx.seed, opts.shuffle ? "" : ", unshuffled"));
  };

  auto* reviews = app.add_subcommand("reviews", "Validate review records and print counts");
  reviews->add_option("file", o->reviews, "One JSON record per line")->required();
  ctx.actions[reviews] = [&ctx, o] {
    ReviewReader reader(o->reviews, ctx.strict);
    std::uint64_t sentences = 0;
    while (auto r = reader.next()) sentences += r->sentences.size();
    *ctx.out << fmt::format("records\t{}\nsentences\t{}\nskipped\t{}\n", reader.records_read(),
                            sentences, reader.records_skipped());
  };
}

}  // namespace ugcmt::cli
