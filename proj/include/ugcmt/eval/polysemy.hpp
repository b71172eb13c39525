#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugcmt::eval {

/// Each source word and accepted form may list inflections separated by
/// '|' ("menu|menus"); any of them counts as a match.
struct PolysemyEntry {
  std::string source_word;
  std::vector<std::string> accepted;
  std::vector<std::string> rejected_hint;
};

/// "word TAB form,form,... [TAB hint,hint,...]" per line; '#' comments.
std::vector<PolysemyEntry> parse_polysemy_entries(std::string_view text);
std::vector<PolysemyEntry> load_polysemy_entries(const std::filesystem::path& path);

/// Case-insensitive search for `phrase` bounded by non-alphanumeric
/// characters or the ends of `text`.
bool contains_word(std::string_view text, std::string_view phrase);

struct PolysemyCount {
  std::string source_word;
  std::uint64_t n_source = 0;
  std::uint64_t n_correct = 0;

  double accuracy() const {
    return n_source == 0 ? 0.0 : 100.0 * static_cast<double>(n_correct) / static_cast<double>(n_source);
  }
};

struct PolysemyReport {
  std::vector<PolysemyCount> entries;
  std::uint64_t total_source = 0;
  std::uint64_t total_correct = 0;

  double percent() const {
    return total_source == 0 ? 0.0
                             : 100.0 * static_cast<double>(total_correct) /
                                   static_cast<double>(total_source);
  }
};

/// Throws DataError on unequal lengths and ConfigError on an entry without
/// accepted forms.
PolysemyReport polysemous_accuracy(std::span<const std::string> srcs,
                                   std::span<const std::string> hyps,
                                   std::span<const PolysemyEntry> entries);

}  // namespace ugcmt::eval
