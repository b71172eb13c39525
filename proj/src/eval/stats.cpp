#include "ugcmt/eval/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ugcmt/core/error.hpp"

namespace ugcmt::eval {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences) {
  WilcoxonResult res;
  std::vector<double> d;
  for (double x : differences) {
    if (!std::isfinite(x)) throw DataError("wilcoxon: differences must be finite");
    if (x != 0.0) d.push_back(x);
  }
  const std::size_t n = d.size();
  res.n = n;
  if (n == 0) {
    res.degenerate = true;
    return res;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
  // Doubled midranks are integers.
  std::vector<long> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    const long r2 = static_cast<long>(i + 1 + j + 1);  // 2 * average of ranks i+1..j+1
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  long rp2 = 0;
  long total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (d[i] > 0) rp2 += rank2[i];
  }
  res.r_plus = rp2 / 2.0;
  res.r_minus = (total2 - rp2) / 2.0;

  if (n <= kWilcoxonExactMax) {
    res.exact = true;
    // Null: each rank carries a positive sign with probability 1/2.
    std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
    ways[0] = 1.0;
    long reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (long s = reach; s >= 0; --s) {
        if (ways[s] != 0.0) ways[s + rank2[i]] += ways[s];
      }
      reach += rank2[i];
    }
    const double all = std::ldexp(1.0, static_cast<int>(n));
    double le = 0.0;
    double ge = 0.0;
    for (long s = 0; s <= total2; ++s) {
      if (s <= rp2) le += ways[s];
      if (s >= rp2) ge += ways[s];
    }
    res.p_value = std::min(1.0, 2.0 * std::min(le, ge) / all);
    return res;
  }

  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = (nn * (nn + 1.0) * (2.0 * nn + 1.0) - tie_term / 2.0) / 24.0;
  const double se = std::sqrt(var);
  double z = (res.r_plus - mean) / se;
  if (z > 0) {
    z -= 0.5 / se;
  } else if (z < 0) {
    z += 0.5 / se;
  }
  res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
  return res;
}

KappaResult cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw DataError(fmt::format("kappa: label sequences have lengths {} and {}", a.size(),
                                b.size()));
  }
  if (a.empty()) throw DataError("kappa: no shared items");
  KappaResult res;
  res.n = a.size();
  std::map<std::string, std::pair<double, double>> marg;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    marg[a[i]].first += 1.0;
    marg[b[i]].second += 1.0;
  }
  const double n = static_cast<double>(res.n);
  res.observed = static_cast<double>(agree) / n;
  for (const auto& [label, m] : marg) res.expected += (m.first / n) * (m.second / n);
  if (res.expected >= 1.0) {
    res.degenerate = true;
    res.kappa = 1.0;
    return res;
  }
  res.kappa = (res.observed - res.expected) / (1.0 - res.expected);
  return res;
}

KappaResult fleiss_kappa(std::span<const std::vector<std::string>> ratings) {
  KappaResult res;
  std::map<std::string, double> label_totals;
  double p_sum = 0.0;
  double all = 0.0;
  for (const auto& item : ratings) {
    if (item.size() < 2) continue;
    std::map<std::string, double> c;
    for (const auto& l : item) c[l] += 1.0;
    const double m = static_cast<double>(item.size());
    double agree = 0.0;
    for (const auto& [l, k] : c) {
      agree += k * (k - 1.0);
      label_totals[l] += k;
    }
    p_sum += agree / (m * (m - 1.0));
    all += m;
    ++res.n;
  }
  if (res.n == 0) throw DataError("fleiss kappa: no item has two or more ratings");
  res.observed = p_sum / static_cast<double>(res.n);
  for (const auto& [l, k] : label_totals) res.expected += (k / all) * (k / all);
  if (res.expected >= 1.0) {
    res.degenerate = true;
    res.kappa = 1.0;
    return res;
  }
  res.kappa = (res.observed - res.expected) / (1.0 - res.expected);
  return res;
}

}  // namespace ugcmt::eval
