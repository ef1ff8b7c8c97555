#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "nhc/graph.hpp"

namespace nhc {

/// Divisor used for column variances: ell (population) or ell - 1 (sample).
enum class SdConvention { population, sample };

struct ComplexityOptions {
  SdConvention sd = SdConvention::population;
};

struct DegreeComplexity {
  double r = 0.0;       // un-normalised, mean column variance
  double r_hat = 0.0;   // sum of column sds over (1 - d) m
  std::size_t rows = 0; // number of nodes with this degree
};

struct ComplexityReport {
  double r = 0.0;
  double r_hat = 0.0;
  std::map<Degree, DegreeComplexity> per_degree;
  std::size_t d2_size = 0;
  double density = 0.0;
  std::size_t edge_count = 0;
};

/// Standard deviation of each column of `s`. Throws when s.rows < 2.
std::vector<double> column_sigmas(const NdsMatrix& s, ComplexityOptions opts = {});

/// Un-normalised hierarchical complexity of one degree class. `k` must be
/// held by at least two nodes.
double hc_k(const Graph& g, Degree k, ComplexityOptions opts = {});

/// Mean of hc_k over the degree classes with at least two members; 0 when
/// there are none.
double hc_global(const Graph& g, ComplexityOptions opts = {});

/// Normalised complexity of one degree class:
///   sum_j sigma_j / ((1 - d) m).
/// Throws for complete graphs, where the normaliser vanishes.
double nhc_k(const Graph& g, Degree k, ComplexityOptions opts = {});

/// Mean of nhc_k over the degree classes with at least two members. Regular
/// and complete graphs, and graphs with no repeated degree, give 0.
double nhc_global(const Graph& g, ComplexityOptions opts = {});

/// The two sqrt(k) normalisations used only to compare against nhc_global:
///   sqrt_m == false: sum_j sigma_j / (sqrt(k) (1 - d) m)
///   sqrt_m == true:  sum_j sigma_j / (sqrt(k) (1 - d) sqrt(m))
/// averaged over the same degree classes.
double nhc_alt_sqrtk(const Graph& g, bool sqrt_m, ComplexityOptions opts = {});

struct NormalisationVariants {
  double r_hat = 0.0;              // sum_j sigma_j / ((1 - d) m)
  double r_hat_sqrtk = 0.0;        // nhc_alt_sqrtk(g, false)
  double r_hat_sqrtk_sqrtm = 0.0;  // nhc_alt_sqrtk(g, true)
};

/// The proposed normalisation and both sqrt(k) alternatives from a single
/// pass over the degree classes.
NormalisationVariants normalisation_variants(const Graph& g, ComplexityOptions opts = {});

/// All of the above in one pass over the graph.
ComplexityReport complexity_report(const Graph& g, ComplexityOptions opts = {});

/// Per-degree column statistics shared by every measure above.
struct DegreeColumnStats {
  Degree degree = 0;
  std::size_t rows = 0;
  long double sum_variance = 0.0L;
  long double sum_sigma = 0.0L;
};

/// Column statistics for every degree class with >= 2 members, ascending k.
std::vector<DegreeColumnStats> degree_column_stats(const Graph& g, ComplexityOptions opts = {});

}  // namespace nhc
