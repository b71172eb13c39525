#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt::corpusops {

/// text -> language code.
class LanguageIdentifier {
 public:
  virtual ~LanguageIdentifier() = default;
  virtual std::string identify(std::string_view text) = 0;
};

class CallbackLanguageIdentifier final : public LanguageIdentifier {
 public:
  explicit CallbackLanguageIdentifier(std::function<std::string(std::string_view)> fn)
      : fn_(std::move(fn)) {}
  std::string identify(std::string_view text) override { return fn_(text); }

 private:
  std::function<std::string(std::string_view)> fn_;
};

/// Runs `/bin/sh -c command` once as a coprocess. Each query writes one line
/// to its stdin and reads one line (the language code) from its stdout, so
/// the command must answer line by line and flush. Calls are serialized.
class CommandLanguageIdentifier final : public LanguageIdentifier {
 public:
  explicit CommandLanguageIdentifier(std::string command);
  ~CommandLanguageIdentifier() override;
  CommandLanguageIdentifier(const CommandLanguageIdentifier&) = delete;
  CommandLanguageIdentifier& operator=(const CommandLanguageIdentifier&) = delete;

  std::string identify(std::string_view text) override;

 private:
  std::string command_;
  std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
};

struct FilterConfig {
  std::uint64_t max_words = 175;
  double max_ratio = 1.5;
  bool dedup = false;
  std::shared_ptr<LanguageIdentifier> langid;
  std::string src_lang;
  std::string tgt_lang;

  /// Throws ConfigError unless max_words >= 1 and max_ratio > 1.
  void validate() const;
};

enum class DropReason { kNone, kEmpty, kLength, kRatio, kLanguage, kDuplicate };

std::string_view to_string(DropReason reason);

struct FilterDecision {
  bool keep = true;
  DropReason reason = DropReason::kNone;
};

/// Checks in order: empty side, word cap, word-count ratio, language. A
/// pair without a target is judged on its source alone.
FilterDecision filter_pair(const SentencePair& pair, const FilterConfig& config);

/// Exact-pair deduplication keyed by a 128-bit hash of (src, tgt).
class Deduplicator {
 public:
  /// True the first time a pair is seen.
  bool insert(const SentencePair& pair);
  std::size_t size() const { return seen_.size(); }

 private:
  struct Key {
    std::uint64_t hi;
    std::uint64_t lo;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return k.hi ^ (k.lo * 31); }
  };
  std::unordered_set<Key, KeyHash> seen_;
};

std::vector<SentencePair> dedup(std::span<const SentencePair> corpus);

struct FilterStats {
  std::uint64_t read = 0;
  std::uint64_t kept = 0;
  std::array<std::uint64_t, 6> dropped{};
};

/// filter_pair on every pair, then dedup of survivors when configured.
std::vector<SentencePair> filter_corpus(std::span<const SentencePair> corpus,
                                        const FilterConfig& config,
                                        FilterStats* stats = nullptr);

}  // namespace ugcmt::corpusops
