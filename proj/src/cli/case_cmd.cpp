#include <fmt/format.h>

#include "context.hpp"
#include "ugcmt/casing.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::cli {

namespace {

struct CaseOptions {
  std::string input = "-";
  std::string output = "-";
  std::string scheme = "inline";
  std::string tags_path;
  std::string marker = "▁";
  double p_upper = 0.05;
  double p_title = 0.10;
  double p_lower = 0.20;
  std::string mode;
};

casing::CaseTag parse_mode(const std::string& mode) {
  if (mode == "upper") return casing::CaseTag::kUpper;
  if (mode == "lower") return casing::CaseTag::kLower;
  if (mode == "title") return casing::CaseTag::kTitle;
  throw UsageError(fmt::format("unknown case mode '{}'", mode));
}

void encode(Context& ctx, const CaseOptions& o) {
  ctx.check_distinct({o.input}, {o.output, o.tags_path});
  auto in = ctx.reader(o.input);
  auto out = ctx.writer(o.output);
  casing::SegmentOptions seg;
  seg.marker = o.marker;
  std::size_t n = 0;
  if (o.scheme == "inline") {
    n = map_lines(in, out, ctx.workers(), [&](const std::string& line, std::size_t) {
      return casing::encode_inline_text(line, seg);
    });
  } else if (o.scheme == "lower") {
    n = map_lines(in, out, ctx.workers(),
                  [](const std::string& line, std::size_t) { return text::lower(line); });
  } else {
    if (o.tags_path.empty()) throw UsageError("--scheme factored needs --tags-out");
    auto tags = ctx.writer(o.tags_path);
    // Two outputs per line, so batch by hand.
    std::vector<std::string> batch;
    std::vector<std::pair<std::string, std::string>> res;
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
        res[i] = casing::encode_factored_text(batch[i], seg);
      });
      for (const auto& [forms, t] : res) {
        out.write(forms);
        tags.write(t);
      }
      n += batch.size();
    }
    in.finish();
  }
  ctx.note(fmt::format("case encode ({}): {} lines", o.scheme, n));
}

void decode(Context& ctx, const CaseOptions& o) {
  ctx.check_distinct({o.input, o.tags_path}, {o.output});
  auto in = ctx.reader(o.input);
  auto out = ctx.writer(o.output);
  std::size_t n = 0;
  if (o.scheme == "inline") {
    n = map_lines(in, out, ctx.workers(), [&](const std::string& line, std::size_t) {
      return casing::decode_inline_text(line, o.marker);
    });
  } else if (o.scheme == "lower") {
    throw UsageError("lowercasing cannot be decoded");
  } else {
    if (o.tags_path.empty()) throw UsageError("--scheme factored needs --tags-in");
    auto tags = ctx.reader(o.tags_path);
    while (auto forms = in.next()) {
      auto t = tags.next();
      if (!t) throw DataError(fmt::format("tag stream ends before line {}", n + 1));
      out.write(casing::decode_factored_text(*forms, *t, o.marker));
      ++n;
    }
    if (tags.next()) throw DataError("tag stream is longer than the form stream");
  }
  ctx.note(fmt::format("case decode ({}): {} lines", o.scheme, n));
}

}  // namespace

void add_case_commands(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<CaseOptions>();
  auto* group = app.add_subcommand("case", "Casing transforms");
  group->require_subcommand(1);

  const std::vector<std::string> schemes = {"inline", "factored", "lower"};
  auto* enc = group->add_subcommand("encode", "Lowercase text and carry case as tags");
  add_io(enc, o->input, o->output);
  enc->add_option("--scheme", o->scheme, "inline, factored or lower")
      ->check(CLI::IsMember(schemes))
      ->capture_default_str();
  enc->add_option("--tags-out", o->tags_path, "Tag stream for --scheme factored");
  enc->add_option("--marker", o->marker, "Word-boundary marker on non-initial words")
      ->capture_default_str();
  ctx.actions[enc] = [&ctx, o] { encode(ctx, *o); };

  auto* dec = group->add_subcommand("decode", "Restore case from tags");
  add_io(dec, o->input, o->output);
  dec->add_option("--scheme", o->scheme, "inline or factored")
      ->check(CLI::IsMember(schemes))
      ->capture_default_str();
  dec->add_option("--tags-in", o->tags_path, "Tag stream for --scheme factored");
  dec->add_option("--marker", o->marker, "Word-boundary marker")->capture_default_str();
  ctx.actions[dec] = [&ctx, o] { decode(ctx, *o); };

  auto* noise = group->add_subcommand("noise", "Randomly re-case source words");
  add_io(noise, o->input, o->output);
  noise->add_option("--p-upper", o->p_upper, "Probability of UPPER")->default_str("0.05");
  noise->add_option("--p-title", o->p_title, "Probability of Title")->default_str("0.10");
  noise->add_option("--p-lower", o->p_lower, "Probability of lower")->default_str("0.20");
  ctx.randomized.push_back(noise);
  ctx.actions[noise] = [&ctx, o] {
    ctx.check_distinct({o->input}, {o->output});
    casing::CaseNoiseProfile profile{o->p_upper, o->p_title, o->p_lower, ctx.seed};
    profile.validate();
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    const auto n = map_lines(in, out, ctx.workers(), [&](const std::string& line, std::size_t i) {
      return casing::apply_case_noise(line, profile, i);
    });
    ctx.note(fmt::format("case noise: {} lines (seed {})", n, ctx.seed));
  };

  auto* variant = group->add_subcommand("variant", "Rewrite whole sentences to one case");
  add_io(variant, o->input, o->output);
  variant->add_option("--mode", o->mode, "upper, lower or title")
      ->required()
      ->check(CLI::IsMember({"upper", "lower", "title"}));
  ctx.actions[variant] = [&ctx, o] {
    ctx.check_distinct({o->input}, {o->output});
    const auto mode = parse_mode(o->mode);
    auto in = ctx.reader(o->input);
    auto out = ctx.writer(o->output);
    const auto n = map_lines(in, out, ctx.workers(), [&](const std::string& line, std::size_t) {
      return casing::apply_case_mode(line, mode);
    });
    ctx.note(fmt::format("case variant ({}): {} lines", o->mode, n));
  };
}

}  // namespace ugcmt::cli
