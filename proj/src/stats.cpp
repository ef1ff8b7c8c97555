#include "nhc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "nhc/error.hpp"

namespace nhc {
namespace {

void require_same_length(std::span<const double> x, std::span<const double> y, std::size_t min_len) {
  if (x.size() != y.size()) throw Error("length mismatch");
  if (x.size() < min_len) {
    throw Error("need at least " + std::to_string(min_len) + " observations");
  }
}

// Pearson on centred data; throws "constant input" when either side has
// zero spread.
double pearson_unchecked(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  long double sxy = 0.0L;
  long double sxx = 0.0L;
  long double syy = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0L || syy == 0.0L) throw Error("constant input");
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

double t_test_p(double rho, std::size_t n) {
  if (std::abs(rho) >= 1.0) return 0.0;
  const double df = static_cast<double>(n) - 2.0;
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double permutation_p(std::span<const double> rx, std::span<const double> ry, double rho) {
  std::vector<double> perm(ry.begin(), ry.end());
  std::sort(perm.begin(), perm.end());
  std::size_t total = 0;
  std::size_t extreme = 0;
  const double threshold = std::abs(rho) - 1e-12;
  // Each distinct arrangement of a multiset arises from the same number of
  // label permutations, so counting distinct arrangements is exact.
  do {
    ++total;
    if (std::abs(pearson_unchecked(rx, perm)) >= threshold) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

double mean(std::span<const double> x) {
  if (x.empty()) throw Error("mean of empty sample");
  long double s = 0.0L;
  for (const double v : x) s += v;
  return static_cast<double>(s / static_cast<long double>(x.size()));
}

double stddev(std::span<const double> x) {
  if (x.size() < 2) throw Error("standard deviation needs two observations");
  const double m = mean(x);
  long double s = 0.0L;
  for (const double v : x) s += (v - m) * (v - m);
  return static_cast<double>(std::sqrt(s / static_cast<long double>(x.size() - 1)));
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, 2);
  return pearson_unchecked(x, y);
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, 3);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  Correlation c;
  c.rho = pearson_unchecked(rx, ry);
  c.p_value = x.size() < 10 ? permutation_p(rx, ry, c.rho) : t_test_p(c.rho, x.size());
  return c;
}

double ols_slope(std::span<const double> y, std::span<const double> x) {
  require_same_length(x, y, 2);
  const double mx = mean(x);
  const double my = mean(y);
  long double sxy = 0.0L;
  long double sxx = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0L) throw Error("degenerate design: predictor is constant");
  return static_cast<double>(sxy / sxx);
}

std::vector<double> ols_residuals(std::span<const double> y, std::span<const double> x) {
  const double slope = ols_slope(y, x);
  const double intercept = mean(y) - slope * mean(x);
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - (intercept + slope * x[i]);
  return r;
}

Correlation residual_correlation(std::span<const double> hc, std::span<const double> density,
                                 std::span<const double> n_nodes) {
  require_same_length(hc, density, 4);
  require_same_length(hc, n_nodes, 4);
  auto resid = ols_residuals(density, n_nodes);
  // Residuals of an exact linear fit are rounding noise, not signal.
  long double scale = 0.0L;
  for (const double d : density) scale = std::max<long double>(scale, std::abs(d));
  const bool all_zero = std::all_of(resid.begin(), resid.end(), [&](double r) {
    return std::abs(r) <= 1e-12 * static_cast<double>(scale);
  });
  if (all_zero) throw Error("constant input: density is an exact linear function of size");
  return spearman(resid, hc);
}

RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("rank-sum test needs two non-empty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];

  // Tie correction: sum of (t^3 - t) over tie groups.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }

  RankSumResult r;
  r.u = rank_sum_a - na * (na + 1.0) / 2.0;
  const double mu = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (var <= 0.0) {
    r.z = 0.0;
    r.p_value = 1.0;
    return r;
  }
  // Continuity correction toward the mean.
  const double diff = r.u - mu;
  const double corrected = diff == 0.0 ? 0.0 : diff - std::copysign(0.5, diff);
  r.z = corrected / std::sqrt(var);
  const boost::math::normal std_normal;
  r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(std_normal, std::abs(r.z))));
  return r;
}

}  // namespace nhc
