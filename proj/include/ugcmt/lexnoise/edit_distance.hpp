#pragma once

// Extended edit distance between an observed (possibly noisy) word and a
// correct word. Operations are named by what happened to the correct word:
// DELETION means a letter of the correct word is missing from the observed
// one ("apelle" for "appelle").
//
// Costs: deletion, insertion, substitution and adjacent swap cost 1. A
// substitution between characters with the same canonical base letter is
// reported as DIACRITIC_SUB (still cost 1). Extra copies of a character that
// extend a run in the observed word ("merciiiii") collapse at cost 1 per run,
// provided the run is at most `max_run` long.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ugcmt::lexnoise {

enum class EditKind { kDeletion, kInsertion, kDiacriticSub, kSwap, kSubstitution, kRepetition };

std::string_view to_string(EditKind kind);

struct EditOperation {
  EditKind kind;
  std::size_t position;  // code-point index in the observed word

  friend bool operator==(const EditOperation&, const EditOperation&) = default;
};

struct EditOptions {
  bool repetition = true;
  std::size_t max_run = 10;
};

struct EditResult {
  unsigned distance = 0;
  std::vector<EditOperation> ops;  // left to right
};

EditResult edit_distance(std::u32string_view observed, std::u32string_view correct,
                         const EditOptions& options = {});
EditResult edit_distance(std::string_view observed, std::string_view correct,
                         const EditOptions& options = {});

std::vector<EditKind> kinds(const std::vector<EditOperation>& ops);

namespace detail {

/// Per-position run information of the observed word: start index of the
/// run that position i belongs to, and that run's full length.
struct RunInfo {
  std::vector<std::size_t> start;
  std::vector<std::size_t> length;
};
RunInfo run_info(std::u32string_view s);

}  // namespace detail

}  // namespace ugcmt::lexnoise
