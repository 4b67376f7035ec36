#include "tracelab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>

namespace tracelab {

double chi_square_quantile(double level, int df) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::InvalidLevel, "level must lie in (0,1)");
  if (df <= 0) return 0.0;
  boost::math::chi_squared dist(df);
  return boost::math::quantile(dist, level);
}

GofResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                         double level, double min_expected) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::InvalidLevel, "level must lie in (0,1)");
  if (observed.size() != probs.size()) fail(ErrorCode::InvalidArgument, "observed/probs size mismatch");
  if (observed.empty()) fail(ErrorCode::EmptySample, "no cells");
  double n = 0.0;
  for (auto c : observed) n += static_cast<double>(c);
  if (n == 0.0) fail(ErrorCode::EmptySample, "no observations");

  std::vector<double> obs_cells, exp_cells;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o += static_cast<double>(observed[i]);
    e += n * probs[i];
    if (e >= min_expected) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_cells.empty()) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
    } else {
      obs_cells.back() += o;
      exp_cells.back() += e;
    }
  }

  GofResult r;
  for (std::size_t i = 0; i < obs_cells.size(); ++i) {
    if (exp_cells[i] <= 0.0) {
      if (obs_cells[i] > 0.0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double d = obs_cells[i] - exp_cells[i];
    r.statistic += d * d / exp_cells[i];
  }
  r.df = static_cast<int>(obs_cells.size()) - 1;
  if (r.df <= 0) {
    r.critical = 0.0;
    r.p_value = 1.0;
    r.pass = true;
    return r;
  }
  r.critical = chi_square_quantile(level, r.df);
  boost::math::chi_squared dist(r.df);
  r.p_value = std::isfinite(r.statistic) ? boost::math::cdf(boost::math::complement(dist, r.statistic)) : 0.0;
  r.pass = r.statistic <= r.critical;
  return r;
}

GofResult poisson_count_test(std::span<const std::uint64_t> counts, double rate, double level) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::InvalidLevel, "level must lie in (0,1)");
  if (counts.empty()) fail(ErrorCode::EmptySample, "no counts");
  if (!(rate >= 0.0)) fail(ErrorCode::InvalidArgument, "rate must be nonnegative");
  const std::uint64_t kmax = *std::max_element(counts.begin(), counts.end());
  if (rate == 0.0) {
    GofResult r;
    r.pass = kmax == 0;
    r.p_value = r.pass ? 1.0 : 0.0;
    r.statistic = r.pass ? 0.0 : std::numeric_limits<double>::infinity();
    return r;
  }
  std::size_t cells = static_cast<std::size_t>(std::max<double>(static_cast<double>(kmax), rate + 10.0 * std::sqrt(rate) + 10.0)) + 1;
  std::vector<std::uint64_t> obs(cells + 1, 0);
  for (auto c : counts) ++obs[std::min<std::size_t>(c, cells)];
  std::vector<double> probs(cells + 1, 0.0);
  double pk = std::exp(-rate);
  double acc = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    probs[k] = pk;
    acc += pk;
    pk *= rate / static_cast<double>(k + 1);
  }
  probs[cells] = std::max(0.0, 1.0 - acc);
  return chi_square_gof(obs, probs, level);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) fail(ErrorCode::EmptySample, "no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(static_cast<double>(j) / n - f));
    // Left limit; ties are treated as an atom of the model whose left limit
    // is not compared.
    if (j - i == 1) d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    i = j;
  }
  return d;
}

double ks_critical(std::size_t n, double level) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::InvalidLevel, "level must lie in (0,1)");
  const double alpha = 1.0 - level;
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

MeanSd mean_sd(std::span<const double> xs) {
  MeanSd r;
  r.n = xs.size();
  if (xs.empty()) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

double median(std::vector<double> xs) {
  if (xs.empty()) fail(ErrorCode::EmptySample, "median of empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace tracelab
