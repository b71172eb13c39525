#include "ugcmt/eval/polysemy.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::eval {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    auto piece = s.substr(pos, next == std::string_view::npos ? s.npos : next - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool contains_any(std::string_view text, std::string_view alternatives) {
  for (const auto& form : split(alternatives, '|')) {
    if (contains_word(text, form)) return true;
  }
  return false;
}

}  // namespace

std::vector<PolysemyEntry> parse_polysemy_entries(std::string_view text) {
  std::vector<PolysemyEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw ConfigError(fmt::format("polysemy entries line {}: expected word, tab, forms",
                                    line_no));
    }
    PolysemyEntry e;
    e.source_word = fields[0];
    e.accepted = split(fields[1], ',');
    if (fields.size() == 3) e.rejected_hint = split(fields[2], ',');
    if (e.accepted.empty()) {
      throw ConfigError(fmt::format("polysemy entries line {}: no accepted forms", line_no));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PolysemyEntry> load_polysemy_entries(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open polysemy entries '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_polysemy_entries(ss.str());
}

bool contains_word(std::string_view text, std::string_view phrase) {
  const auto hay = text::to_u32(text::full_lower(text));
  const auto needle = text::to_u32(text::full_lower(phrase));
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::u32string::npos;
       pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || !text::is_alnum(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || !text::is_alnum(hay[end]);
    if (left && right) return true;
  }
  return false;
}

PolysemyReport polysemous_accuracy(std::span<const std::string> srcs,
                                   std::span<const std::string> hyps,
                                   std::span<const PolysemyEntry> entries) {
  if (srcs.size() != hyps.size()) {
    throw DataError(fmt::format("sources have {} lines, hypotheses have {} lines", srcs.size(),
                                hyps.size()));
  }
  PolysemyReport report;
  for (const auto& e : entries) {
    if (e.accepted.empty()) {
      throw ConfigError(fmt::format("polysemy entry '{}' has no accepted forms", e.source_word));
    }
    PolysemyCount c{e.source_word, 0, 0};
    for (std::size_t i = 0; i < srcs.size(); ++i) {
      if (!contains_any(srcs[i], e.source_word)) continue;
      ++c.n_source;
      for (const auto& form : e.accepted) {
        if (contains_any(hyps[i], form)) {
          ++c.n_correct;
          break;
        }
      }
    }
    report.total_source += c.n_source;
    report.total_correct += c.n_correct;
    report.entries.push_back(std::move(c));
  }
  return report;
}

}  // namespace ugcmt::eval
