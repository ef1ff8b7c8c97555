#pragma once

#include <span>
#include <vector>

namespace nhc {

struct Correlation {
  double rho = 0.0;
  double p_value = 1.0;
};

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 divisor).
double stddev(std::span<const double> x);

/// 1-based ranks; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation. Throws on length mismatch or a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation (Pearson on average ranks). Two-sided p-value
/// from the t approximation with n - 2 degrees of freedom; below ten
/// samples the exact permutation distribution is enumerated instead.
Correlation spearman(std::span<const double> x, std::span<const double> y);

/// Residuals of the ordinary least squares fit y ~ a + b x.
std::vector<double> ols_residuals(std::span<const double> y, std::span<const double> x);

/// Regress density on network size, then correlate the residuals with hc.
Correlation residual_correlation(std::span<const double> hc, std::span<const double> density,
                                 std::span<const double> n_nodes);

struct RankSumResult {
  double u = 0.0;        ///< Mann-Whitney U of the first sample
  double z = 0.0;        ///< normal score, positive when `a` tends to exceed `b`
  double p_value = 1.0;  ///< two-sided
};

/// Wilcoxon rank-sum / Mann-Whitney test with normal approximation and tie
/// correction.
RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> y, std::span<const double> x);

}  // namespace nhc
