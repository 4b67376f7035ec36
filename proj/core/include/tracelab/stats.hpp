#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tracelab/error.hpp"

namespace tracelab {

template <class Label>
using FiniteDist = std::map<Label, double>;

template <class Label>
void check_distribution(const FiniteDist<Label>& p) {
  double total = 0.0;
  for (const auto& [label, mass] : p) {
    if (!(mass >= 0.0)) fail(ErrorCode::NotADistribution, "negative mass");
    total += mass;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::NotADistribution, "masses do not sum to 1");
}

template <class Label>
double tv_exact(const FiniteDist<Label>& p, const FiniteDist<Label>& q) {
  check_distribution(p);
  check_distribution(q);
  double l1 = 0.0;
  for (const auto& [label, mass] : p) {
    const auto it = q.find(label);
    l1 += std::abs(mass - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [label, mass] : q)
    if (!p.count(label)) l1 += mass;
  return 0.5 * l1;
}

struct TvEstimate {
  double value = 0.0;
  // Bounded-difference standard deviation: sqrt(1/(4 n_a) + 1/(4 n_b)).
  double sd = 0.0;
  std::size_t classes = 0;
};

// Plug-in TV between the empirical laws of two samples.
template <class Label>
TvEstimate tv_empirical(std::span<const Label> a, std::span<const Label> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptySample, "tv_empirical needs two nonempty samples");
  std::map<Label, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& x : a) ++counts[x].first;
  for (const auto& x : b) ++counts[x].second;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double l1 = 0.0;
  for (const auto& [label, c] : counts) l1 += std::abs(c.first / na - c.second / nb);
  return {0.5 * l1, std::sqrt(0.25 / na + 0.25 / nb), counts.size()};
}

// Plug-in TV between an empirical law and an exact one.
template <class Label>
TvEstimate tv_empirical_vs(std::span<const Label> a, const FiniteDist<Label>& q) {
  if (a.empty()) fail(ErrorCode::EmptySample, "tv_empirical_vs needs a nonempty sample");
  check_distribution(q);
  std::map<Label, std::uint64_t> counts;
  for (const auto& x : a) ++counts[x];
  const double na = static_cast<double>(a.size());
  double l1 = 0.0;
  double covered = 0.0;
  for (const auto& [label, c] : counts) {
    const auto it = q.find(label);
    const double qm = it == q.end() ? 0.0 : it->second;
    covered += qm;
    l1 += std::abs(c / na - qm);
  }
  l1 += std::max(0.0, 1.0 - covered);
  return {0.5 * l1, std::sqrt(0.25 / na), counts.size()};
}

struct GofResult {
  double statistic = 0.0;
  int df = 0;
  double critical = 0.0;
  double p_value = 1.0;
  bool pass = true;
};

double chi_square_quantile(double level, int df);

// Pearson chi-square goodness of fit; cells are pooled left to right until
// each pooled cell has expected count >= min_expected.
GofResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                         double level = 0.99, double min_expected = 5.0);

// Tests i.i.d. counts against Poisson(rate).
GofResult poisson_count_test(std::span<const std::uint64_t> counts, double rate, double level = 0.99);

// Kolmogorov-Smirnov statistic of a sample against a continuous cdf that may
// carry an atom at the left end (cdf(x) is evaluated as P(X <= x)).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Asymptotic one-sample KS critical value.
double ks_critical(std::size_t n, double level = 0.99);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  double se() const { return n > 0 ? sd / std::sqrt(static_cast<double>(n)) : 0.0; }
  std::size_t n = 0;
};

MeanSd mean_sd(std::span<const double> xs);

double median(std::vector<double> xs);

}  // namespace tracelab
