#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ugcmt/core/rng.hpp"

namespace ugcmt::lexnoise {

/// Manual error categories; rules apply in this order.
enum class RuleId { kVerbEnding, kPunctSpacing, kCaseMangling, kSms, kPhonetic };

std::string_view to_string(RuleId id);
RuleId parse_rule_id(std::string_view name);

/// Replacement templates: "$N" inserts group N, "$u{N}" inserts group N
/// uppercased, "$r{N}" inserts group N with one random non-initial
/// lowercase letter uppercased, "\$" and "\\" are literal.
struct RegexNoiseRule {
  RuleId id = RuleId::kVerbEnding;
  std::string pattern;
  std::string replacement;
  double probability = 0.0;
};

inline constexpr double kDefaultRuleProbability = 0.02;

/// Built-in rule set: both verb-ending directions, punctuation spacing,
/// interior capitals, an SMS abbreviation table and a phonetic table.
std::vector<RegexNoiseRule> default_rules(double probability = kDefaultRuleProbability);

/// Rules file: rule_id TAB pattern TAB replacement TAB probability. Blank
/// lines and lines starting with '#' are ignored.
std::vector<RegexNoiseRule> parse_rules(std::string_view text);
std::vector<RegexNoiseRule> load_rules(const std::filesystem::path& path);
std::string format_rules(const std::vector<RegexNoiseRule>& rules);

/// Compiled, immutable rule list; safe to share between threads.
class RuleSet {
 public:
  RuleSet();
  /// Throws ConfigError on a pattern that does not compile or a probability
  /// outside [0,1]. Rules are stably sorted by RuleId.
  explicit RuleSet(std::vector<RegexNoiseRule> rules);
  ~RuleSet();
  RuleSet(RuleSet&&) noexcept;
  RuleSet& operator=(RuleSet&&) noexcept;

  const std::vector<RegexNoiseRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  /// True when no rule can fire.
  bool inert() const;

  /// Each match of each rule is independently rewritten with the rule's
  /// probability; draws are keyed by (seed, pair index, rule index, match
  /// ordinal).
  std::string apply(std::string_view sentence, const CounterRng& rng,
                    std::uint64_t pair_index) const;

  RuleSet with_probabilities_zeroed() const;

 private:
  struct Compiled;
  std::vector<RegexNoiseRule> rules_;
  std::vector<std::unique_ptr<Compiled>> compiled_;
};

std::string apply_regex_rules(std::string_view sentence, const RuleSet& rules,
                              const CounterRng& rng, std::uint64_t pair_index);

}  // namespace ugcmt::lexnoise
