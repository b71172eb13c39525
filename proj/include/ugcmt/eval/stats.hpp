#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ugcmt::eval {

inline constexpr std::size_t kWilcoxonExactMax = 25;

struct WilcoxonResult {
  double p_value = 1.0;
  /// Sum of ranks of positive differences.
  double r_plus = 0.0;
  double r_minus = 0.0;
  std::size_t n = 0;  // nonzero differences
  bool exact = false;
  /// No nonzero differences: p is 1 by convention.
  bool degenerate = false;
};

/// Two-sided signed-rank test. Zero differences are dropped and tied
/// magnitudes get midranks. Up to kWilcoxonExactMax nonzero differences the
/// p-value comes from the exact null distribution of R+ given those ranks;
/// beyond that, from the normal approximation with tie-corrected variance
/// and a continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences);

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  std::size_t n = 0;
  /// p_e == 1: kappa is reported as 1.
  bool degenerate = false;
};

/// Cohen's kappa between two label sequences of equal, nonzero length.
KappaResult cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

/// Fleiss' kappa; `ratings[i]` holds the labels given to item i. Items with
/// fewer than two ratings are ignored.
KappaResult fleiss_kappa(std::span<const std::vector<std::string>> ratings);

}  // namespace ugcmt::eval
