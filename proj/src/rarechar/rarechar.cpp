#include "ugcmt/rarechar.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::rarechar {
namespace {

bool always_retained(char32_t c) {
  return c == U'<' || c == U'x' || c == U'>' || c == U'\\' || text::is_space(c);
}

bool is_space_byte(char c) { return c == ' '; }

// Matches "<" + k backslashes + "x>" at `pos`; returns k or -1.
int escaped_placeholder_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || s[pos] != '<') return -1;
  std::size_t i = pos + 1;
  int k = 0;
  while (i < s.size() && s[i] == '\\') {
    ++i;
    ++k;
  }
  if (i + 1 < s.size() && s[i] == 'x' && s[i + 1] == '>') return k;
  return -1;
}

}  // namespace

void CharCensus::add(std::string_view utf8) {
  for (char32_t c : text::to_u32(utf8)) {
    ++counts[c];
    ++total;
  }
}

void CharCensus::merge(const CharCensus& other) {
  for (const auto& [c, n] : other.counts) counts[c] += n;
  total += other.total;
}

std::vector<std::pair<char32_t, std::uint64_t>> CharCensus::sorted() const {
  std::vector<std::pair<char32_t, std::uint64_t>> v(counts.begin(), counts.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return v;
}

CharCensus census(std::span<const SentencePair> corpus) {
  CharCensus c;
  for (const auto& p : corpus) {
    c.add(p.src);
    if (p.tgt) c.add(*p.tgt);
  }
  return c;
}

std::string format_census(const CharCensus& census) {
  std::string out;
  for (const auto& [c, n] : census.sorted()) {
    // Whitespace and control characters are written as U+XXXX so the file
    // stays one entry per line.
    if (c < 0x20 || text::is_space(c)) {
      out += fmt::format("U+{:04X}\t{}\n", static_cast<std::uint32_t>(c), n);
    } else {
      std::string ch;
      text::append_utf8(ch, c);
      out += fmt::format("{}\t{}\n", ch, n);
    }
  }
  return out;
}

CharCensus parse_census(std::string_view tsv) {
  CharCensus c;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < tsv.size()) {
    auto end = tsv.find('\n', pos);
    if (end == std::string_view::npos) end = tsv.size();
    const auto line = tsv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      throw DataError(fmt::format("census line {}: expected char<TAB>count", line_no));
    }
    const auto key = line.substr(0, tab);
    char32_t ch;
    if (key.size() > 2 && key.substr(0, 2) == "U+") {
      ch = static_cast<char32_t>(std::stoul(std::string(key.substr(2)), nullptr, 16));
    } else {
      const auto cps = text::to_u32(key);
      if (cps.size() != 1) {
        throw DataError(fmt::format("census line {}: key is not one character", line_no));
      }
      ch = cps[0];
    }
    const auto n = std::stoull(std::string(line.substr(tab + 1)));
    c.counts[ch] += n;
    c.total += n;
  }
  return c;
}

bool Charset::contains(char32_t c) const {
  return always_retained(c) || chars_.count(c) > 0;
}

Charset build_charset(const CharCensus& census, std::uint64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  std::unordered_set<char32_t> keep;
  for (const auto& [c, n] : census.counts) {
    if (n >= min_count) keep.insert(c);
  }
  return Charset(std::move(keep));
}

PlaceholderRecord mask(std::string_view sentence, const Charset& charset) {
  PlaceholderRecord rec;
  std::string& out = rec.masked;
  out.reserve(sentence.size() + 8);
  const std::u32string cps = text::to_u32(sentence);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (charset.contains(c)) {
      // Escape literal placeholders: "<" + k backslashes + "x>" gains one.
      if (c == U'<') {
        std::size_t j = i + 1;
        while (j < cps.size() && cps[j] == U'\\') ++j;
        if (j + 1 < cps.size() && cps[j] == U'x' && cps[j + 1] == U'>') {
          out += "<\\";
          continue;
        }
      }
      text::append_utf8(out, c);
      continue;
    }
    SavedChar s{c, false, false};
    const bool after_space = i > 0 && text::is_space(cps[i - 1]);
    if (!out.empty() && !after_space && !is_space_byte(out.back())) {
      out.push_back(' ');
      s.space_left = true;
    }
    out += kPlaceholder;
    if (i + 1 < cps.size() && !text::is_space(cps[i + 1])) {
      out.push_back(' ');
      s.space_right = true;
    }
    rec.saved.push_back(s);
  }
  return rec;
}

std::size_t count_placeholders(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(kPlaceholder); pos != std::string_view::npos;
       pos = text.find(kPlaceholder, pos + kPlaceholder.size())) {
    ++n;
  }
  return n;
}

RestoreResult restore(std::string_view output, std::span<const SavedChar> saved) {
  RestoreResult r;
  std::string& out = r.text;
  out.reserve(output.size());
  std::size_t used = 0;
  std::size_t i = 0;
  bool skip_space = false;
  while (i < output.size()) {
    const int k = escaped_placeholder_at(output, i);
    if (k < 0) {
      if (skip_space) {
        skip_space = false;
        if (output[i] == ' ') {
          ++i;
          continue;
        }
      }
      out.push_back(output[i++]);
      continue;
    }
    skip_space = false;
    if (k > 0) {
      // Escaped literal: drop one backslash.
      out += '<';
      out.append(static_cast<std::size_t>(k - 1), '\\');
      out += "x>";
      i += 3 + static_cast<std::size_t>(k);
      continue;
    }
    i += kPlaceholder.size();
    if (used < saved.size()) {
      const SavedChar& s = saved[used++];
      if (s.space_left && !out.empty() && out.back() == ' ') out.pop_back();
      text::append_utf8(out, s.ch);
      skip_space = s.space_right;
    } else {
      ++r.surplus;
      // Deleting the placeholder must not leave a double space behind.
      if (!out.empty() && out.back() == ' ' && i < output.size() && output[i] == ' ') {
        ++i;
      } else if (out.empty() && i < output.size() && output[i] == ' ') {
        ++i;
      }
    }
  }
  if (r.surplus > 0 && !out.empty() && out.back() == ' ' && !output.empty() &&
      output.back() != ' ') {
    out.pop_back();
  }
  r.missing = saved.size() - used;
  if (r.missing > 0 || r.surplus > 0) {
    log::warn("placeholder_mismatch", {{"saved", saved.size()},
                                       {"placeholders", used + r.surplus},
                                       {"dropped_chars", r.missing},
                                       {"deleted_placeholders", r.surplus}});
  }
  return r;
}

std::string format_sidecar(std::span<const SavedChar> saved) {
  std::string out;
  for (std::size_t i = 0; i < saved.size(); ++i) {
    if (i) out.push_back('\t');
    text::append_utf8(out, saved[i].ch);
    if (saved[i].space_left || saved[i].space_right) {
      out.push_back(' ');
      if (saved[i].space_left) out.push_back('L');
      if (saved[i].space_right) out.push_back('R');
    }
  }
  return out;
}

std::vector<SavedChar> parse_sidecar(std::string_view line) {
  std::vector<SavedChar> out;
  if (line.empty()) return out;
  std::size_t pos = 0;
  for (;;) {
    const auto tab = line.find('\t', pos);
    const auto field = line.substr(pos, tab == std::string_view::npos ? line.npos : tab - pos);
    const auto sp = field.find(' ');
    const auto cps = text::to_u32(field.substr(0, sp));
    if (cps.size() != 1) {
      throw DataError(fmt::format("sidecar entry '{}' is not one character", field));
    }
    SavedChar s{cps[0], false, false};
    if (sp != std::string_view::npos) {
      const auto flags = field.substr(sp + 1);
      s.space_left = flags.find('L') != std::string_view::npos;
      s.space_right = flags.find('R') != std::string_view::npos;
    }
    out.push_back(s);
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

}  // namespace ugcmt::rarechar
