#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ugcmt::eval {

/// kDeletion drops a hypothesis word, kInsertion adds a reference word.
enum class AlignKind { kMatch, kSubstitution, kDeletion, kInsertion };

std::string_view to_string(AlignKind kind);

struct AlignStep {
  AlignKind kind;
  std::optional<std::string> hyp;
  std::optional<std::string> ref;

  friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

/// Minimal unit-cost word alignment without block shifts. Ties prefer a
/// diagonal step, then deletion.
std::vector<AlignStep> edit_alignment(std::span<const std::string> hyp,
                                      std::span<const std::string> ref);

std::size_t alignment_cost(const std::vector<AlignStep>& steps);

struct Substitution {
  std::string hyp;
  std::string ref;
  std::uint64_t count = 0;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

/// Substitutions over 13a tokens, lowercased, with count >= min_count,
/// sorted by count (descending), then hyp word, then ref word.
std::vector<Substitution> mine_substitutions(std::span<const std::string> hyps,
                                             std::span<const std::string> refs,
                                             std::uint64_t min_count = 1,
                                             unsigned threads = 1);

}  // namespace ugcmt::eval
