#include "ugcmt/corpusops/tags.hpp"

#include <fmt/format.h>

#include "ugcmt/core/error.hpp"

namespace ugcmt::corpusops {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty() || name[0] < 'A' || name[0] > 'Z') return false;
  for (char c : name.substr(1)) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

CorpusTag::CorpusTag(std::string name) : name_(std::move(name)) {
  if (!valid_name(name_)) {
    throw ConfigError(fmt::format("invalid corpus tag name '{}'", name_));
  }
}

std::optional<CorpusTag> parse_tag_token(std::string_view token) {
  if (token.size() < 3 || token.front() != '<' || token.back() != '>') return std::nullopt;
  const auto name = token.substr(1, token.size() - 2);
  if (!valid_name(name)) return std::nullopt;
  return CorpusTag(std::string(name));
}

std::optional<CorpusTag> leading_tag(std::string_view src) {
  const auto sp = src.find(' ');
  return parse_tag_token(src.substr(0, sp));
}

std::string add_tag(std::string_view src, const CorpusTag& tag) {
  if (auto existing = leading_tag(src)) {
    throw DataError(fmt::format("source already carries tag <{}>; refusing to add <{}>",
                                existing->name(), tag.name()));
  }
  std::string out = tag.surface();
  out.push_back(' ');
  out.append(src);
  return out;
}

SentencePair add_tag(SentencePair pair, const CorpusTag& tag) {
  pair.src = add_tag(pair.src, tag);
  return pair;
}

std::pair<std::string, std::optional<CorpusTag>> strip_tag(std::string_view src) {
  auto tag = leading_tag(src);
  if (!tag) return {std::string(src), std::nullopt};
  const auto len = tag->surface().size();
  const auto rest = src.size() > len ? src.substr(len + 1) : std::string_view();
  return {std::string(rest), std::move(tag)};
}

std::pair<SentencePair, std::optional<CorpusTag>> strip_tag(SentencePair pair) {
  auto [src, tag] = strip_tag(pair.src);
  pair.src = std::move(src);
  return {std::move(pair), std::move(tag)};
}

}  // namespace ugcmt::corpusops
