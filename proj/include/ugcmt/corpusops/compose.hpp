#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugcmt/core/corpus.hpp"
#include "ugcmt/corpusops/tags.hpp"

namespace ugcmt::corpusops {

/// One corpus in a composition. `path` is a stem: the pair is read from
/// path + src suffix and path + tgt suffix. With oversample k the part is
/// read k times; a "{i}" in the path is replaced by the pass number 1..k so
/// each pass can read a different sampled translation. A resampled part
/// reads path + ".epoch" + N for epoch N.
struct ManifestPart {
  std::string path;
  std::optional<CorpusTag> tag;
  unsigned oversample = 1;
  bool resample_per_epoch = false;
};

struct CompositionManifest {
  std::vector<ManifestPart> parts;
  std::string scheme_name;

  /// Throws ConfigError on no parts, oversample 0, or a part that both
  /// oversamples and resamples.
  void validate() const;

  /// One part per line: path, tag or "-", oversample, resample (0/1).
  /// Trailing fields may be omitted. '#' starts a comment line; a comment
  /// of the form "# name: TEXT" sets scheme_name. Relative paths are
  /// resolved against `base_dir`.
  static CompositionManifest parse(std::string_view text,
                                   const std::filesystem::path& base_dir = {});
  static CompositionManifest load(const std::filesystem::path& path);
  std::string format() const;
};

struct ComposeOptions {
  std::string src_suffix = ".src";
  std::string tgt_suffix = ".tgt";
  bool shuffle = true;
};

struct ComposeSource {
  std::filesystem::path src;
  std::filesystem::path tgt;
  std::optional<CorpusTag> tag;
};

/// Expands parts into the concrete files read for `epoch`. Throws DataError
/// naming the first missing file.
std::vector<ComposeSource> resolve_sources(const CompositionManifest& manifest,
                                           std::uint64_t epoch,
                                           const ComposeOptions& options = {});

/// Streams the composed corpus to `sink`; returns the pair count. The
/// shuffle is a permutation of a line-offset index keyed by (seed, epoch),
/// so only offsets are held in memory.
std::uint64_t compose(const CompositionManifest& manifest, std::uint64_t epoch,
                      std::uint64_t seed, const std::function<void(const SentencePair&)>& sink,
                      const ComposeOptions& options = {});

std::vector<SentencePair> compose_corpus(const CompositionManifest& manifest,
                                         std::uint64_t epoch, std::uint64_t seed,
                                         const ComposeOptions& options = {});

}  // namespace ugcmt::corpusops
