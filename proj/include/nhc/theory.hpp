#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace nhc {

/// A univariate law from which node degrees are assumed to be drawn. For
/// discrete laws `density` is the pmf and quantile(u) = min{x : F(x) >= u}.
class DegreeDistribution {
 public:
  virtual ~DegreeDistribution() = default;
  virtual double density(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double quantile(double u) const = 0;
  virtual double support_min() const = 0;
  virtual double support_max() const = 0;
  virtual bool discrete() const = 0;
};

/// B(trials, p) with pmf and cdf tabulated once over the whole support.
class BinomialDistribution final : public DegreeDistribution {
 public:
  BinomialDistribution(std::size_t trials, double p);

  double density(double x) const override;
  double cdf(double x) const override;
  double quantile(double u) const override;
  double support_min() const override { return 0.0; }
  double support_max() const override { return static_cast<double>(trials_); }
  bool discrete() const override { return true; }

  double pmf(std::size_t x) const { return x <= trials_ ? pmf_[x] : 0.0; }
  std::size_t trials() const { return trials_; }
  double p() const { return p_; }

 private:
  std::size_t trials_;
  double p_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

/// Continuous U[lo, hi]; the reference law for checking the order-statistic
/// approximation.
class UniformDistribution final : public DegreeDistribution {
 public:
  UniformDistribution(double lo = 0.0, double hi = 1.0);

  double density(double x) const override;
  double cdf(double x) const override;
  double quantile(double u) const override;
  double support_min() const override { return lo_; }
  double support_max() const override { return hi_; }
  bool discrete() const override { return false; }

 private:
  double lo_;
  double hi_;
};

BinomialDistribution binom(std::size_t trials, double p);

/// Approximate sd of the i-th order statistic of k draws:
///   sqrt(i (k-i+1) / ((k+1)^2 (k+2))) / f(F^-1(i/(k+1))).
/// Throws when f vanishes at the quantile.
double order_stat_sigma(std::size_t i, std::size_t k, const DegreeDistribution& dist);

/// Terms whose density at the quantile is below this are dropped from the
/// approximation sums.
inline constexpr double kVanishingDensity = 1e-300;

struct DegreeApprox {
  double value = 0.0;
  std::size_t dropped_terms = 0;
};

/// Expected normalised complexity of degree class k for a graph with n nodes
/// and density p whose degrees follow `dist`.
DegreeApprox nhc_k_approx(std::size_t n, double p, std::size_t k, const DegreeDistribution& dist);

/// Which quantile levels fix the summation range [a, b].
enum class QuantileBounds {
  er,      ///< a = floor(F^-1(1/n)),     b = ceil(F^-1((n-1)/n))
  general  ///< a = floor(F^-1(1/(n+1))), b = ceil(F^-1(n/(n+1)))
};

struct TheoryApprox {
  std::map<std::size_t, double> per_degree;
  double r_hat = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t dropped_terms = 0;
};

/// Degree range [a, b] for n nodes under `dist`; a is clamped to >= 1.
std::pair<std::size_t, std::size_t> degree_bounds(std::size_t n, const DegreeDistribution& dist,
                                                  QuantileBounds bounds);

/// Global approximation averaged over k = a..b. The sum has b - a + 1 terms
/// and is divided by (b - a), exactly as the closed form is stated.
TheoryApprox nhc_global_approx(std::size_t n, double p, const DegreeDistribution& dist,
                               QuantileBounds bounds = QuantileBounds::er);

/// Erdos-Renyi specialisation: degrees ~ B(n-1, p). p = 0 and p = 1 give
/// regular graphs and return 0 without evaluating the sum.
TheoryApprox nhc_global_approx(std::size_t n, double p, QuantileBounds bounds = QuantileBounds::er);

/// Upper bound on the ER approximation that decays like n^{-3/2} b:
///   sqrt(pi) b / (n sqrt(2 p (1-p) (n-1))).
double corollary_bound(std::size_t n, double p);

// Normal-approximation route used only for diagnostics.

/// De Moivre-Laplace pmf at the normal quantile, with the inverse error
/// function replaced by sqrt(-ln(4x(1-x))):
///   4x(1-x) / sqrt(2 pi (n-1) p (1-p)).
double normal_density_at_quantile(std::size_t n, double p, double x);

/// The ER approximation after substituting normal_density_at_quantile:
///   sqrt(pi) sum_k sum_i (k+1)/sqrt(i(k-i+1)(k+2)) / (n (b-a) sqrt(2p(1-p)(n-1))).
double normal_chain_approx(std::size_t n, double p);

}  // namespace nhc
