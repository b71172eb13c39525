#include "ugcmt/lexnoise/error_dictionary.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <mutex>
#include <unordered_map>

#include "ugcmt/core/corpus.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/core/text.hpp"
#include "ugcmt/lexnoise/tokens.hpp"

namespace ugcmt::lexnoise {

void ErrorDictionary::add(std::string_view correct, std::string_view variant,
                          std::uint64_t count) {
  if (count == 0 || correct == variant) return;
  auto it = entries_.find(correct);
  if (it == entries_.end()) it = entries_.emplace(std::string(correct), Entry{}).first;
  auto& e = it->second;
  e.total += count;
  for (auto& v : e.variants) {
    if (v.text == variant) {
      v.count += count;
      return;
    }
  }
  e.variants.push_back({std::string(variant), count});
}

void ErrorDictionary::merge(const ErrorDictionary& other) {
  for (const auto& [correct, entry] : other.entries_) {
    for (const auto& v : entry.variants) add(correct, v.text, v.count);
  }
}

void ErrorDictionary::finalize() {
  for (auto& [_, e] : entries_) {
    std::sort(e.variants.begin(), e.variants.end(), [](const Variant& a, const Variant& b) {
      return a.count != b.count ? a.count > b.count : a.text < b.text;
    });
  }
}

const ErrorDictionary::Entry* ErrorDictionary::find(std::string_view correct) const {
  auto it = entries_.find(correct);
  return it == entries_.end() ? nullptr : &it->second;
}

const Variant& ErrorDictionary::pick(const Entry& entry, std::uint64_t r) {
  for (const auto& v : entry.variants) {
    if (r < v.count) return v;
    r -= v.count;
  }
  return entry.variants.back();
}

std::string ErrorDictionary::format() const {
  std::string out;
  for (const auto& [correct, e] : entries_) {
    out += correct;
    out += '\t';
    for (std::size_t i = 0; i < e.variants.size(); ++i) {
      if (i) out += ';';
      out += fmt::format("{}:{}", e.variants[i].text, e.variants[i].count);
    }
    out += '\n';
  }
  return out;
}

ErrorDictionary ErrorDictionary::parse(std::string_view text) {
  ErrorDictionary d;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError(fmt::format("dictionary line {}: missing tab", line_no));
    }
    const auto correct = line.substr(0, tab);
    auto rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto item = rest.substr(0, semi);
      const auto colon = item.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw DataError(fmt::format("dictionary line {}: bad variant '{}'", line_no, item));
      }
      std::uint64_t count = 0;
      try {
        count = std::stoull(std::string(item.substr(colon + 1)));
      } catch (const std::exception&) {
        throw DataError(fmt::format("dictionary line {}: bad count in '{}'", line_no, item));
      }
      if (count == 0) {
        throw DataError(fmt::format("dictionary line {}: zero count in '{}'", line_no, item));
      }
      d.add(correct, item.substr(0, colon), count);
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
  }
  d.finalize();
  return d;
}

void ErrorDictionary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << format();
}

ErrorDictionary ErrorDictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(data);
}

const PhoneticTable& builtin_phonetic_table() {
  static const PhoneticTable table = {
      {"sa", "ça"},    {"ses", "c'est"}, {"cé", "c'est"}, {"ces", "c'est"},
      {"a", "à"},      {"é", "et"},      {"mé", "mais"},  {"peut", "peu"},
      {"ou", "où"},    {"la", "là"},     {"son", "sont"}, {"sont", "son"},
      {"on", "ont"},   {"ont", "on"},    {"ce", "se"},    {"se", "ce"},
      {"ai", "es"},    {"tous", "tout"},
  };
  return table;
}

namespace {

bool countable(std::string_view core) {
  return core.find_first_of(";:\t") == std::string_view::npos;
}

}  // namespace

ErrorDictionary build_error_dictionary(std::span<const std::string> corpus,
                                       const Lexicon& lexicon,
                                       const DictionaryBuildOptions& options) {
  if (lexicon.empty()) throw ConfigError("lexicon is empty");
  std::unordered_multimap<std::string, std::string> phonetic;
  if (options.phonetic) {
    for (const auto& [variant, correct] : *options.phonetic) phonetic.emplace(variant, correct);
  }

  const unsigned threads = resolve_threads(options.threads);
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(threads, corpus.size()));
  std::vector<ErrorDictionary> partial(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    const std::size_t begin = corpus.size() * s / shards;
    const std::size_t end = corpus.size() * (s + 1) / shards;
    std::unordered_map<std::string, std::string> memo;  // OOV -> correct ("" if none)
    for (std::size_t i = begin; i < end; ++i) {
      const std::string& sentence = corpus[i];
      for (const auto& tok : tokenize_words(sentence)) {
        if (!tok.has_letter) continue;
        const auto core = tok.core(sentence);
        if (!countable(core)) continue;
        std::string lowered = text::lower(core);
        if (lexicon.contains(lowered)) continue;
        auto hit = memo.find(lowered);
        if (hit == memo.end()) {
          std::string best;
          const auto cands = lexicon.search(text::to_u32(lowered), options.max_dist);
          if (!cands.empty()) {
            best = cands.front().word;
            auto range = phonetic.equal_range(lowered);
            for (auto it = range.first; it != range.second && best == cands.front().word; ++it) {
              for (const auto& c : cands) {
                if (c.word == it->second) {
                  best = c.word;
                  break;
                }
              }
            }
          }
          hit = memo.emplace(lowered, std::move(best)).first;
        }
        if (!hit->second.empty()) partial[s].add(hit->second, lowered);
      }
    }
  });
  ErrorDictionary out;
  for (const auto& p : partial) out.merge(p);
  out.finalize();
  return out;
}

}  // namespace ugcmt::lexnoise
