#include "ugcmt/corpusops/temperature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "ugcmt/core/error.hpp"

namespace ugcmt::corpusops {

std::vector<double> temperature_distribution(std::span<const double> z, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError(fmt::format("temperature must be positive and finite, got {}", temperature));
  }
  if (z.empty()) throw ConfigError("temperature_distribution of an empty vector");
  for (double v : z) {
    if (!std::isfinite(v)) throw ConfigError("logits must be finite");
  }
  const double zmax = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = std::exp((z[i] - zmax) / temperature);
  // Sorted summation keeps the normalizer independent of input order.
  std::vector<double> sorted(p);
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace ugcmt::corpusops
