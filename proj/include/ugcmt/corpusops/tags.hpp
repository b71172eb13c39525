#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt::corpusops {

/// Sub-corpus tag such as PE, BT or TED; written as "<NAME>".
class CorpusTag {
 public:
  /// Throws ConfigError unless the name matches [A-Z][A-Za-z0-9_-]*.
  explicit CorpusTag(std::string name);

  const std::string& name() const { return name_; }
  std::string surface() const { return "<" + name_ + ">"; }

  friend bool operator==(const CorpusTag&, const CorpusTag&) = default;

 private:
  std::string name_;
};

/// Tag name if `token` is a whole tag token, else nullopt.
std::optional<CorpusTag> parse_tag_token(std::string_view token);

/// Tag at the start of `src` (followed by a space or the end), if any.
std::optional<CorpusTag> leading_tag(std::string_view src);

/// "<NAME> " + src. Throws DataError when src already starts with a tag.
SentencePair add_tag(SentencePair pair, const CorpusTag& tag);
std::string add_tag(std::string_view src, const CorpusTag& tag);

/// Removes the leading tag token and the space after it.
std::pair<SentencePair, std::optional<CorpusTag>> strip_tag(SentencePair pair);
std::pair<std::string, std::optional<CorpusTag>> strip_tag(std::string_view src);

}  // namespace ugcmt::corpusops
