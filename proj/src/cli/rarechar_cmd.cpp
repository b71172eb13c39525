#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "context.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/rarechar.hpp"

namespace ugcmt::cli {

namespace {

struct RareOptions {
  std::vector<std::string> inputs;
  std::string input = "-";
  std::string output = "-";
  std::string census_path;
  std::string sidecar;
  std::uint64_t min_count = rarechar::kDefaultMinCount;
};

rarechar::CharCensus read_census(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open census '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return rarechar::parse_census(ss.str());
}

}  // namespace

void add_rarechar_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<RareOptions>();
  auto* group = app.add_subcommand("rarechar", "Rare-character placeholders");
  group->require_subcommand(1);

  auto* census = group->add_subcommand("census", "Character frequencies over corpus files");
  census->add_option("files", o->inputs, "Corpus files (both sides)")->required();
  census->add_option("-o,--output", o->output, "Census TSV")->capture_default_str();
  ctx.actions[census] = [&ctx, o] {
    ctx.check_distinct(o->inputs, {o->output});
    std::vector<rarechar::CharCensus> parts(o->inputs.size());
    parallel_for(o->inputs.size(), ctx.workers(), [&](std::size_t k) {
      LineReader r{std::filesystem::path(o->inputs[k])};
      while (auto line = r.next()) parts[k].add(*line);
    });
    rarechar::CharCensus total;
    for (const auto& p : parts) total.merge(p);
    auto out = ctx.writer(o->output);
    const auto tsv = rarechar::format_census(total);
    std::istringstream lines(tsv);
    for (std::string l; std::getline(lines, l);) out.write(l);
    ctx.note(fmt::format("rarechar census: {} characters, {} distinct", total.total,
                         total.counts.size()));
  };

  auto* mask = group->add_subcommand("mask", "Replace rare characters with <x>");
  add_io(mask, o->input, o->output);
  mask->add_option("--census", o->census_path, "Census from 'rarechar census'")->required();
  mask->add_option("--min-count", o->min_count, "Keep characters seen at least this often")
      ->capture_default_str();
  mask->add_option("--sidecar", o->sidecar, "Removed characters, one line per sentence")
      ->required();
  ctx.actions[mask] = [&ctx, o] {
    ctx.check_distinct({o->input, o->census_path}, {o->output, o->sidecar});
    const auto charset = rarechar::build_charset(read_census(o->census_path), o->min_count);
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    LineWriter side{std::filesystem::path(o->sidecar)};
    std::vector<std::string> batch;
    std::vector<rarechar::PlaceholderRecord> recs;
    std::uint64_t n = 0;
    std::uint64_t masked = 0;
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
      recs.assign(batch.size(), {});
      parallel_for(batch.size(), ctx.workers(),
                   [&](std::size_t i) { recs[i] = rarechar::mask(batch[i], charset); });
      for (const auto& r : recs) {
        out.write(r.masked);
        side.write(rarechar::format_sidecar(r.saved));
        masked += r.saved.size();
      }
      n += batch.size();
    }
    in.finish();
    ctx.note(fmt::format("rarechar mask: {} lines, {} characters replaced", n, masked));
  };

  auto* restore = group->add_subcommand("restore", "Put saved characters back");
  add_io(restore, o->input, o->output);
  restore->add_option("--sidecar", o->sidecar, "Sidecar written by 'rarechar mask'")
      ->required();
  ctx.actions[restore] = [&ctx, o] {
    ctx.check_distinct({o->input, o->sidecar}, {o->output});
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    LineReader side{std::filesystem::path(o->sidecar)};
    side.set_normalize(false);
    std::uint64_t n = 0;
    std::uint64_t mismatched = 0;
    while (auto line = in.next()) {
      auto saved_line = side.next();
      if (!saved_line) {
        throw DataError(fmt::format("sidecar '{}' ends before line {}", o->sidecar, n + 1));
      }
      const auto res = rarechar::restore(*line, rarechar::parse_sidecar(*saved_line));
      mismatched += (res.missing + res.surplus) > 0;
      out.write(res.text);
      ++n;
    }
    if (side.next()) throw DataError(fmt::format("sidecar '{}' has extra lines", o->sidecar));
    ctx.note(fmt::format("rarechar restore: {} lines, {} with placeholder mismatches", n,
                         mismatched));
  };
}

}  // namespace ugcmt::cli
