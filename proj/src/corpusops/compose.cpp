#include "ugcmt/corpusops/compose.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/rng.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::corpusops {

void CompositionManifest::validate() const {
  if (parts.empty()) throw ConfigError("composition manifest has no parts");
  for (const auto& p : parts) {
    if (p.oversample == 0) {
      throw ConfigError(fmt::format("part '{}': oversample must be at least 1", p.path));
    }
    if (p.resample_per_epoch && p.oversample != 1) {
      throw ConfigError(
          fmt::format("part '{}': oversampling and per-epoch resampling are exclusive", p.path));
    }
  }
}

namespace {

bool parse_flag(std::string_view s, std::size_t line_no) {
  if (s == "1" || s == "yes" || s == "true") return true;
  if (s == "0" || s == "no" || s == "false") return false;
  throw ConfigError(fmt::format("manifest line {}: bad resample flag '{}'", line_no, s));
}

}  // namespace

CompositionManifest CompositionManifest::parse(std::string_view text,
                                               const std::filesystem::path& base_dir) {
  CompositionManifest m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields[0].front() == '#') {
      const auto pos = line.find("name:");
      if (pos != std::string::npos && fields[0] == "#" && fields.size() > 1 &&
          fields[1] == "name:") {
        auto name = std::string_view(line).substr(pos + 5);
        while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
        m.scheme_name = std::string(name);
      }
      continue;
    }
    if (fields.size() > 4) {
      throw ConfigError(fmt::format("manifest line {}: expected at most 4 fields", line_no));
    }
    ManifestPart part;
    std::filesystem::path p{std::string(fields[0])};
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    part.path = p.string();
    if (fields.size() > 1 && fields[1] != "-") part.tag = CorpusTag(std::string(fields[1]));
    if (fields.size() > 2) {
      try {
        const long k = std::stol(std::string(fields[2]));
        if (k < 1) throw std::out_of_range("k");
        part.oversample = static_cast<unsigned>(k);
      } catch (const std::exception&) {
        throw ConfigError(
            fmt::format("manifest line {}: bad oversample '{}'", line_no, fields[2]));
      }
    }
    if (fields.size() > 3) part.resample_per_epoch = parse_flag(fields[3], line_no);
    m.parts.push_back(std::move(part));
  }
  m.validate();
  return m;
}

CompositionManifest CompositionManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open manifest '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.parent_path());
}

std::string CompositionManifest::format() const {
  std::string out;
  if (!scheme_name.empty()) out += fmt::format("# name: {}\n", scheme_name);
  for (const auto& p : parts) {
    out += fmt::format("{} {} {} {}\n", p.path, p.tag ? p.tag->name() : "-", p.oversample,
                       p.resample_per_epoch ? 1 : 0);
  }
  return out;
}

std::vector<ComposeSource> resolve_sources(const CompositionManifest& manifest,
                                           std::uint64_t epoch, const ComposeOptions& options) {
  manifest.validate();
  std::vector<ComposeSource> out;
  auto add = [&](const std::string& stem, const std::optional<CorpusTag>& tag) {
    ComposeSource s{stem + options.src_suffix, stem + options.tgt_suffix, tag};
    for (const auto* f : {&s.src, &s.tgt}) {
      if (!std::filesystem::exists(*f)) {
        throw DataError(fmt::format("composition input '{}' does not exist", f->string()));
      }
    }
    out.push_back(std::move(s));
  };
  for (const auto& part : manifest.parts) {
    if (part.resample_per_epoch) {
      add(fmt::format("{}.epoch{}", part.path, epoch), part.tag);
      continue;
    }
    for (unsigned i = 1; i <= part.oversample; ++i) {
      std::string stem = part.path;
      if (const auto at = stem.find("{i}"); at != std::string::npos) {
        stem.replace(at, 3, std::to_string(i));
      }
      add(stem, part.tag);
    }
  }
  return out;
}

namespace {

struct Slot {
  std::uint32_t source;
  std::uint64_t src_offset;
  std::uint64_t tgt_offset;
};

SentencePair finish_pair(std::string src, std::string tgt, const ComposeSource& s,
                         std::uint64_t line_no) {
  SentencePair p;
  p.src = s.tag ? add_tag(src, *s.tag) : std::move(src);
  p.tgt = std::move(tgt);
  if (s.tag) p.corpus_label = s.tag->name();
  p.line_no = line_no;
  return p;
}

[[noreturn]] void mismatch(const ComposeSource& s, std::uint64_t a, std::uint64_t b) {
  throw DataError(fmt::format("line-count mismatch: '{}' has {} lines, '{}' has {} lines",
                              s.src.string(), a, s.tgt.string(), b));
}

}  // namespace

std::uint64_t compose(const CompositionManifest& manifest, std::uint64_t epoch,
                      std::uint64_t seed, const std::function<void(const SentencePair&)>& sink,
                      const ComposeOptions& options) {
  const auto sources = resolve_sources(manifest, epoch, options);
  std::uint64_t emitted = 0;

  if (!options.shuffle) {
    for (const auto& s : sources) {
      ParallelReader reader(s.src, s.tgt);
      while (auto pair = reader.next()) {
        sink(finish_pair(std::move(pair->src), std::move(*pair->tgt), s, ++emitted));
      }
    }
    return emitted;
  }

  std::vector<Slot> index;
  for (std::uint32_t k = 0; k < sources.size(); ++k) {
    LineReader src(sources[k].src);
    LineReader tgt(sources[k].tgt);
    for (;;) {
      const auto so = src.offset();
      const auto to = tgt.offset();
      auto a = src.next();
      auto b = tgt.next();
      if (!a && !b) break;
      if (!a || !b) {
        mismatch(sources[k], count_lines(sources[k].src), count_lines(sources[k].tgt));
      }
      index.push_back({k, so, to});
    }
  }

  const CounterRng rng(seed);
  for (std::size_t i = index.size(); i > 1; --i) {
    const auto j = rng.below(i, rng_stream::kShuffle, epoch, i);
    std::swap(index[i - 1], index[j]);
  }

  std::vector<LineReader> src_readers;
  std::vector<LineReader> tgt_readers;
  for (const auto& s : sources) {
    // Normalization was already reported while indexing.
    src_readers.emplace_back(s.src).suppress_report();
    tgt_readers.emplace_back(s.tgt).suppress_report();
  }
  for (const auto& slot : index) {
    auto& rs = src_readers[slot.source];
    auto& rt = tgt_readers[slot.source];
    if (rs.offset() != slot.src_offset) rs.seek(slot.src_offset);
    if (rt.offset() != slot.tgt_offset) rt.seek(slot.tgt_offset);
    auto a = rs.next();
    auto b = rt.next();
    if (!a || !b) throw DataError("composition input changed while it was being read");
    sink(finish_pair(std::move(*a), std::move(*b), sources[slot.source], ++emitted));
  }
  return emitted;
}

std::vector<SentencePair> compose_corpus(const CompositionManifest& manifest,
                                         std::uint64_t epoch, std::uint64_t seed,
                                         const ComposeOptions& options) {
  std::vector<SentencePair> out;
  compose(manifest, epoch, seed, [&](const SentencePair& p) { out.push_back(p); }, options);
  return out;
}

}  // namespace ugcmt::corpusops
