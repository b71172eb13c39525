#include "ugcmt/lexnoise/rules.hpp"

#include <unicode/locid.h>
#include <unicode/regex.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <utility>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::lexnoise {

std::string_view to_string(RuleId id) {
  switch (id) {
    case RuleId::kVerbEnding:
      return "VERB_ENDING";
    case RuleId::kPunctSpacing:
      return "PUNCT_SPACING";
    case RuleId::kCaseMangling:
      return "CASE_MANGLING";
    case RuleId::kSms:
      return "SMS";
    case RuleId::kPhonetic:
      return "PHONETIC";
  }
  return "?";
}

RuleId parse_rule_id(std::string_view name) {
  for (auto id : {RuleId::kVerbEnding, RuleId::kPunctSpacing, RuleId::kCaseMangling,
                  RuleId::kSms, RuleId::kPhonetic}) {
    if (name == to_string(id)) return id;
  }
  throw ConfigError(fmt::format("unknown rule id '{}'", name));
}

namespace {

// correct form -> abbreviation
constexpr std::pair<const char*, const char*> kSmsTable[] = {
    {"beaucoup", "bcp"},  {"quand", "qd"},         {"que", "k"},
    {"quoi", "koi"},      {"pourquoi", "pk"},      {"toujours", "tjrs"},
    {"quelque", "qq"},    {"rendez-vous", "rdv"},  {"s'il te plaît", "stp"},
    {"s'il vous plaît", "svp"}, {"aujourd'hui", "auj"}, {"bonjour", "bjr"},
    {"avec", "avc"},      {"dans", "ds"},          {"vraiment", "vrmt"},
    {"tout", "tt"},       {"j'ai", "g"},           {"je suis", "chui"},
};

// correct form -> phonetic misspelling
constexpr std::pair<const char*, const char*> kPhoneticTable[] = {
    {"ça", "sa"},   {"c'est", "ses"}, {"ces", "ses"}, {"mais", "mé"},
    {"où", "ou"},   {"là", "la"},     {"peu", "peut"}, {"sont", "son"},
    {"ont", "on"},  {"se", "ce"},     {"à", "a"},
};

}  // namespace

std::vector<RegexNoiseRule> default_rules(double p) {
  std::vector<RegexNoiseRule> rules = {
      {RuleId::kVerbEnding, R"((\p{L}{2,})er(?=[\s.,!?;:]|$))", "$1é", p},
      {RuleId::kVerbEnding, R"((\p{L}{2,})é(?=[\s.,!?;:]|$))", "$1er", p},
      {RuleId::kPunctSpacing, R"(\s+([.,!?]))", "$1", p},
      {RuleId::kPunctSpacing, R"(([.,!?])\s+(?=\p{L}))", "$1", p},
      {RuleId::kPunctSpacing, R"((?<=\p{L})([.,!?]))", " $1", p},
      {RuleId::kCaseMangling, R"((?<!\p{L})(\p{Ll}{3,})(?!\p{L}))", "$r{1}", p},
  };
  for (const auto& [word, abbr] : kSmsTable) {
    rules.push_back({RuleId::kSms, fmt::format(R"((?i)\b{}\b)", word), abbr, p});
  }
  for (const auto& [word, spelled] : kPhoneticTable) {
    rules.push_back({RuleId::kPhonetic, fmt::format(R"((?i)(?<!\p{{L}}){}(?!\p{{L}}))", word),
                     spelled, p});
  }
  return rules;
}

std::vector<RegexNoiseRule> parse_rules(std::string_view text) {
  std::vector<RegexNoiseRule> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> f;
    std::size_t p = 0;
    for (;;) {
      const auto tab = line.find('\t', p);
      f.push_back(line.substr(p, tab == std::string_view::npos ? line.npos : tab - p));
      if (tab == std::string_view::npos) break;
      p = tab + 1;
    }
    if (f.size() != 4) {
      throw ConfigError(fmt::format("rules line {}: expected 4 tab-separated fields, got {}",
                                    line_no, f.size()));
    }
    RegexNoiseRule r;
    r.id = parse_rule_id(f[0]);
    r.pattern = std::string(f[1]);
    r.replacement = std::string(f[2]);
    try {
      r.probability = std::stod(std::string(f[3]));
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("rules line {}: bad probability '{}'", line_no, f[3]));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RegexNoiseRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open rules file '{}'", path.string()));
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_rules(data);
}

std::string format_rules(const std::vector<RegexNoiseRule>& rules) {
  std::string out;
  for (const auto& r : rules) {
    out += fmt::format("{}\t{}\t{}\t{}\n", to_string(r.id), r.pattern, r.replacement,
                       r.probability);
  }
  return out;
}

// ------------------------------------------------------------------ RuleSet

namespace {

struct Segment {
  enum Kind { kLiteral, kGroup, kUpperGroup, kRandomCap } kind;
  icu::UnicodeString literal;
  int group = 0;
};

std::vector<Segment> parse_template(std::string_view tmpl, int max_group) {
  std::vector<Segment> segs;
  std::string lit;
  auto flush = [&] {
    if (!lit.empty()) {
      segs.push_back({Segment::kLiteral, icu::UnicodeString::fromUTF8(lit), 0});
      lit.clear();
    }
  };
  auto check_group = [&](int g) {
    if (g > max_group) {
      throw ConfigError(fmt::format("replacement '{}' refers to group {} but the pattern "
                                    "has {}",
                                    tmpl, g, max_group));
    }
  };
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '\\' && i + 1 < tmpl.size()) {
      lit.push_back(tmpl[++i]);
    } else if (c == '$' && i + 1 < tmpl.size() && tmpl[i + 1] >= '0' && tmpl[i + 1] <= '9') {
      flush();
      const int g = tmpl[++i] - '0';
      check_group(g);
      segs.push_back({Segment::kGroup, {}, g});
    } else if (c == '$' && (tmpl.substr(i, 3) == "$u{" || tmpl.substr(i, 3) == "$r{")) {
      const auto close = tmpl.find('}', i);
      if (close == std::string_view::npos) {
        throw ConfigError(fmt::format("unterminated $u{{ in '{}'", tmpl));
      }
      flush();
      const int g = std::stoi(std::string(tmpl.substr(i + 3, close - i - 3)));
      check_group(g);
      segs.push_back({tmpl[i + 1] == 'u' ? Segment::kUpperGroup : Segment::kRandomCap, {}, g});
      i = close;
    } else {
      lit.push_back(c);
    }
  }
  flush();
  return segs;
}

}  // namespace

struct RuleSet::Compiled {
  std::unique_ptr<icu::RegexPattern> pattern;
  std::vector<Segment> replacement;
};

RuleSet::RuleSet() = default;
RuleSet::~RuleSet() = default;
RuleSet::RuleSet(RuleSet&&) noexcept = default;
RuleSet& RuleSet::operator=(RuleSet&&) noexcept = default;

RuleSet::RuleSet(std::vector<RegexNoiseRule> rules) : rules_(std::move(rules)) {
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& r : rules_) {
    if (!(r.probability >= 0.0 && r.probability <= 1.0)) {
      throw ConfigError(fmt::format("rule {} probability {} outside [0,1]", r.pattern,
                                    r.probability));
    }
    UErrorCode status = U_ZERO_ERROR;
    UParseError perr;
    auto c = std::make_unique<Compiled>();
    c->pattern.reset(icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(r.pattern), perr,
                                                status));
    if (U_FAILURE(status)) {
      throw ConfigError(fmt::format("rule pattern '{}' does not compile: {}", r.pattern,
                                    u_errorName(status)));
    }
    std::unique_ptr<icu::RegexMatcher> probe(c->pattern->matcher(status));
    const int groups = U_SUCCESS(status) ? probe->groupCount() : 0;
    c->replacement = parse_template(r.replacement, groups);
    compiled_.push_back(std::move(c));
  }
}

bool RuleSet::inert() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const auto& r) { return r.probability <= 0.0; });
}

RuleSet RuleSet::with_probabilities_zeroed() const {
  auto copy = rules_;
  for (auto& r : copy) r.probability = 0.0;
  return RuleSet(std::move(copy));
}

std::string RuleSet::apply(std::string_view sentence, const CounterRng& rng,
                           std::uint64_t pair_index) const {
  if (inert()) return std::string(sentence);
  icu::UnicodeString cur = icu::UnicodeString::fromUTF8(
      icu::StringPiece(sentence.data(), static_cast<int32_t>(sentence.size())));
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    const double p = rules_[k].probability;
    if (p <= 0.0) continue;
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::RegexMatcher> m(compiled_[k]->pattern->matcher(cur, status));
    if (U_FAILURE(status)) continue;
    icu::UnicodeString out;
    int32_t last = 0;
    std::uint64_t ordinal = 0;
    bool changed = false;
    while (m->find(status) && U_SUCCESS(status)) {
      const double u = rng.uniform(rng_stream::kRegexRule, pair_index, k, ordinal++);
      if (u >= p) continue;
      const int32_t s = m->start(status);
      const int32_t e = m->end(status);
      out.append(cur, last, s - last);
      for (const auto& seg : compiled_[k]->replacement) {
        switch (seg.kind) {
          case Segment::kLiteral:
            out.append(seg.literal);
            break;
          case Segment::kGroup:
            out.append(m->group(seg.group, status));
            break;
          case Segment::kRandomCap: {
            icu::UnicodeString g = m->group(seg.group, status);
            std::vector<int32_t> slots;
            int32_t idx = 0;
            for (int n = 0; idx < g.length(); ++n) {
              if (n > 0 && u_islower(g.char32At(idx))) slots.push_back(idx);
              idx = g.moveIndex32(idx, 1);
            }
            if (!slots.empty()) {
              const auto pick = rng.below(slots.size(), rng_stream::kRegexRule, pair_index, k,
                                          ordinal | (1ULL << 63));
              const int32_t at = slots[pick];
              const UChar32 ch = g.char32At(at);
              icu::UnicodeString up(u_toupper(ch));
              g.replace(at, U16_LENGTH(ch), up);
            }
            out.append(g);
            break;
          }
          case Segment::kUpperGroup: {
            icu::UnicodeString g = m->group(seg.group, status);
            g.toUpper(icu::Locale::getRoot());
            out.append(g);
            break;
          }
        }
      }
      last = e;
      changed = true;
    }
    if (changed) {
      out.append(cur, last, cur.length() - last);
      cur = std::move(out);
    }
  }
  std::string result;
  cur.toUTF8String(result);
  return result;
}

std::string apply_regex_rules(std::string_view sentence, const RuleSet& rules,
                              const CounterRng& rng, std::uint64_t pair_index) {
  return rules.apply(sentence, rng, pair_index);
}

}  // namespace ugcmt::lexnoise
