#include "nhc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "nhc/error.hpp"

namespace nhc {

BinomialDistribution::BinomialDistribution(std::size_t trials, double p)
    : trials_(trials), p_(p), pmf_(trials + 1, 0.0), cdf_(trials + 1, 0.0) {
  if (trials < 1) throw Error("binomial needs at least one trial");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("binomial p must lie in [0, 1]");
  if (p == 0.0) {
    pmf_.front() = 1.0;
  } else if (p == 1.0) {
    pmf_.back() = 1.0;
  } else {
    const double nt = static_cast<double>(trials);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double log_nfact = std::lgamma(nt + 1.0);
    for (std::size_t x = 0; x <= trials; ++x) {
      const double xd = static_cast<double>(x);
      const double lp = log_nfact - std::lgamma(xd + 1.0) - std::lgamma(nt - xd + 1.0) +
                        xd * log_p + (nt - xd) * log_q;
      pmf_[x] = std::exp(lp);
    }
  }
  // Compensated running sum keeps the upper tail of the cdf accurate.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t x = 0; x <= trials; ++x) {
    const double y = pmf_[x] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    cdf_[x] = std::min(sum, 1.0);
  }
  cdf_.back() = 1.0;
}

double BinomialDistribution::density(double x) const {
  if (x < 0.0 || x > static_cast<double>(trials_) || x != std::floor(x)) return 0.0;
  return pmf_[static_cast<std::size_t>(x)];
}

double BinomialDistribution::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= static_cast<double>(trials_)) return 1.0;
  return cdf_[static_cast<std::size_t>(std::floor(x))];
}

double BinomialDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw Error("quantile level must lie in [0, 1]");
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<double>(it == cdf_.end() ? trials_ : it - cdf_.begin());
}

UniformDistribution::UniformDistribution(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(hi > lo)) throw Error("uniform distribution needs lo < hi");
}

double UniformDistribution::density(double x) const {
  return (x >= lo_ && x <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
}

double UniformDistribution::cdf(double x) const {
  return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double UniformDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw Error("quantile level must lie in [0, 1]");
  return lo_ + u * (hi_ - lo_);
}

BinomialDistribution binom(std::size_t trials, double p) { return {trials, p}; }

namespace {

double density_at_level(std::size_t i, std::size_t k, const DegreeDistribution& dist) {
  const double u = static_cast<double>(i) / static_cast<double>(k + 1);
  return dist.density(dist.quantile(u));
}

}  // namespace

double order_stat_sigma(std::size_t i, std::size_t k, const DegreeDistribution& dist) {
  if (i < 1 || i > k) throw Error("order statistic index must satisfy 1 <= i <= k");
  const double f = density_at_level(i, k, dist);
  if (f < kVanishingDensity) throw Error("pmf vanishes at quantile");
  const double id = static_cast<double>(i);
  const double kd = static_cast<double>(k);
  return std::sqrt(id * (kd - id + 1.0) / ((kd + 1.0) * (kd + 1.0) * (kd + 2.0))) / f;
}

DegreeApprox nhc_k_approx(std::size_t n, double p, std::size_t k, const DegreeDistribution& dist) {
  if (k < 1) throw Error("degree class k must be >= 1");
  DegreeApprox out;
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double f = density_at_level(i, k, dist);
    if (f < kVanishingDensity) {
      ++out.dropped_terms;
      continue;
    }
    sum += std::sqrt(static_cast<double>(i) * static_cast<double>(k - i + 1)) / f;
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  out.value = 2.0 * sum / (p * (1.0 - p) * (nd - 1.0) * nd * (kd + 1.0) * std::sqrt(kd + 2.0));
  return out;
}

std::pair<std::size_t, std::size_t> degree_bounds(std::size_t n, const DegreeDistribution& dist,
                                                  QuantileBounds bounds) {
  const double nd = static_cast<double>(n);
  const double lo_level = bounds == QuantileBounds::er ? 1.0 / nd : 1.0 / (nd + 1.0);
  const double hi_level = bounds == QuantileBounds::er ? (nd - 1.0) / nd : nd / (nd + 1.0);
  const double a = std::floor(dist.quantile(lo_level));
  const double b = std::ceil(dist.quantile(hi_level));
  return {std::max<std::size_t>(1, static_cast<std::size_t>(std::max(a, 0.0))),
          static_cast<std::size_t>(std::max(b, 0.0))};
}

TheoryApprox nhc_global_approx(std::size_t n, double p, const DegreeDistribution& dist,
                               QuantileBounds bounds) {
  if (n < 3) throw Error("approximation needs n >= 3");
  if (!(p > 0.0 && p < 1.0)) throw Error("approximation needs p in (0, 1)");
  TheoryApprox out;
  std::tie(out.a, out.b) = degree_bounds(n, dist, bounds);
  if (out.b <= out.a) {
    throw Error("degenerate degree range [" + std::to_string(out.a) + ", " +
                std::to_string(out.b) + "]");
  }
  double total = 0.0;
  for (std::size_t k = out.a; k <= out.b; ++k) {
    const auto term = nhc_k_approx(n, p, k, dist);
    out.per_degree.emplace(k, term.value);
    out.dropped_terms += term.dropped_terms;
    total += term.value;
  }
  out.r_hat = total / static_cast<double>(out.b - out.a);
  return out;
}

TheoryApprox nhc_global_approx(std::size_t n, double p, QuantileBounds bounds) {
  if (n < 3) throw Error("approximation needs n >= 3");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("edge probability must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return {};
  return nhc_global_approx(n, p, binom(n - 1, p), bounds);
}

double corollary_bound(std::size_t n, double p) {
  if (n < 3) throw Error("bound needs n >= 3");
  if (!(p > 0.0 && p < 1.0)) throw Error("bound needs p in (0, 1)");
  const std::size_t b = degree_bounds(n, binom(n - 1, p), QuantileBounds::er).second;
  const double nd = static_cast<double>(n);
  return std::sqrt(std::numbers::pi) * static_cast<double>(b) /
         (nd * std::sqrt(2.0 * p * (1.0 - p) * (nd - 1.0)));
}

double normal_density_at_quantile(std::size_t n, double p, double x) {
  const double var = static_cast<double>(n - 1) * p * (1.0 - p);
  return 4.0 * x * (1.0 - x) / std::sqrt(2.0 * std::numbers::pi * var);
}

double normal_chain_approx(std::size_t n, double p) {
  if (n < 3) throw Error("approximation needs n >= 3");
  if (!(p > 0.0 && p < 1.0)) throw Error("approximation needs p in (0, 1)");
  const auto [a, b] = degree_bounds(n, binom(n - 1, p), QuantileBounds::er);
  if (b <= a) throw Error("degenerate degree range");
  double total = 0.0;
  for (std::size_t k = a; k <= b; ++k) {
    const double kd = static_cast<double>(k);
    for (std::size_t i = 1; i <= k; ++i) {
      const double id = static_cast<double>(i);
      total += (kd + 1.0) / std::sqrt(id * (kd - id + 1.0) * (kd + 2.0));
    }
  }
  const double nd = static_cast<double>(n);
  return std::sqrt(std::numbers::pi) * total /
         (nd * static_cast<double>(b - a) * std::sqrt(2.0 * p * (1.0 - p) * (nd - 1.0)));
}

}  // namespace nhc
