#pragma once

#include <span>
#include <vector>

namespace ugcmt::corpusops {

inline constexpr double kDefaultTemperature = 1.0 / 0.9;

/// Softmax of z / T with max subtraction. Throws ConfigError when T <= 0 or
/// not finite, when z is empty, or when an entry is not finite.
std::vector<double> temperature_distribution(std::span<const double> z,
                                             double temperature = kDefaultTemperature);

}  // namespace ugcmt::corpusops
