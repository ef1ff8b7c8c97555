#include "nhc/complexity.hpp"

#include <cmath>
#include <string>

#include "nhc/error.hpp"
#include "nhc/log.hpp"

namespace nhc {
namespace {

__extension__ using Wide = unsigned __int128;

// Column sums are accumulated exactly in integers; the variance numerator
// ell * sum(x^2) - (sum x)^2 is exact, so results do not depend on the order
// in which rows are visited.
long double column_variance(std::uint64_t sum, std::uint64_t sum_sq, std::size_t rows,
                            SdConvention sd) {
  const Wide numer = static_cast<Wide>(rows) * sum_sq - static_cast<Wide>(sum) * sum;
  const long double denom = sd == SdConvention::population
                                ? static_cast<long double>(rows) * rows
                                : static_cast<long double>(rows) * (rows - 1);
  return static_cast<long double>(numer) / denom;
}

struct ColumnAccumulator {
  std::vector<std::uint64_t> sum;
  std::vector<std::uint64_t> sum_sq;

  explicit ColumnAccumulator(Degree k) : sum(k, 0), sum_sq(k, 0) {}

  void add(std::span<const Degree> row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      sum[j] += row[j];
      sum_sq[j] += static_cast<std::uint64_t>(row[j]) * row[j];
    }
  }

  DegreeColumnStats finish(Degree k, std::size_t rows, SdConvention sd) const {
    DegreeColumnStats out;
    out.degree = k;
    out.rows = rows;
    for (std::size_t j = 0; j < sum.size(); ++j) {
      const long double var = column_variance(sum[j], sum_sq[j], rows, sd);
      out.sum_variance += var;
      out.sum_sigma += std::sqrt(var);
    }
    return out;
  }
};

DegreeColumnStats stats_for_class(const Graph& g, Degree k, std::span<const NodeId> members,
                                  SdConvention sd) {
  ColumnAccumulator acc(k);
  std::vector<Degree> row(k);
  for (const NodeId i : members) {
    nds_into(g, i, row);
    acc.add(row);
  }
  return acc.finish(k, members.size(), sd);
}

DegreeColumnStats class_stats_checked(const Graph& g, Degree k, ComplexityOptions opts) {
  std::vector<NodeId> members;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == k) members.push_back(i);
  }
  if (k == 0 || members.size() < 2) {
    throw Error("degree " + std::to_string(k) + " is not held by at least two nodes");
  }
  return stats_for_class(g, k, members, opts.sd);
}

long double normaliser(const Graph& g) {
  return (1.0L - static_cast<long double>(g.density())) * static_cast<long double>(g.edge_count());
}

bool is_complete(const Graph& g) {
  const std::size_t n = g.node_count();
  return n >= 2 && g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

std::vector<double> column_sigmas(const NdsMatrix& s, ComplexityOptions opts) {
  if (s.rows < 2) throw Error("variance undefined below two rows");
  ColumnAccumulator acc(s.degree);
  for (std::size_t r = 0; r < s.rows; ++r) acc.add(s.row(r));
  std::vector<double> out(s.degree);
  for (std::size_t j = 0; j < s.degree; ++j) {
    out[j] = static_cast<double>(
        std::sqrt(column_variance(acc.sum[j], acc.sum_sq[j], s.rows, opts.sd)));
  }
  return out;
}

std::vector<DegreeColumnStats> degree_column_stats(const Graph& g, ComplexityOptions opts) {
  const auto classes = nodes_by_degree(g);
  std::vector<DegreeColumnStats> out;
  for (Degree k = 1; k < classes.size(); ++k) {
    if (classes[k].size() < 2) continue;
    out.push_back(stats_for_class(g, k, classes[k], opts.sd));
  }
  return out;
}

double hc_k(const Graph& g, Degree k, ComplexityOptions opts) {
  const auto st = class_stats_checked(g, k, opts);
  return static_cast<double>(st.sum_variance / k);
}

double nhc_k(const Graph& g, Degree k, ComplexityOptions opts) {
  const auto st = class_stats_checked(g, k, opts);
  if (is_complete(g)) throw Error("normalisation singular: graph is complete (d = 1)");
  return static_cast<double>(st.sum_sigma / normaliser(g));
}

double hc_global(const Graph& g, ComplexityOptions opts) {
  return complexity_report(g, opts).r;
}

double nhc_global(const Graph& g, ComplexityOptions opts) {
  return complexity_report(g, opts).r_hat;
}

NormalisationVariants normalisation_variants(const Graph& g, ComplexityOptions opts) {
  NormalisationVariants out;
  if (is_complete(g)) return out;
  const auto stats = degree_column_stats(g, opts);
  if (stats.empty()) return out;
  const long double m = static_cast<long double>(g.edge_count());
  const long double one_minus_d = 1.0L - static_cast<long double>(g.density());
  long double plain = 0.0L;
  long double scaled = 0.0L;
  for (const auto& st : stats) {
    plain += st.sum_sigma;
    scaled += st.sum_sigma / std::sqrt(static_cast<long double>(st.degree));
  }
  const auto count = static_cast<long double>(stats.size());
  out.r_hat = static_cast<double>(plain / count / (one_minus_d * m));
  out.r_hat_sqrtk = static_cast<double>(scaled / count / (one_minus_d * m));
  out.r_hat_sqrtk_sqrtm = static_cast<double>(scaled / count / (one_minus_d * std::sqrt(m)));
  return out;
}

double nhc_alt_sqrtk(const Graph& g, bool sqrt_m, ComplexityOptions opts) {
  const auto v = normalisation_variants(g, opts);
  return sqrt_m ? v.r_hat_sqrtk_sqrtm : v.r_hat_sqrtk;
}

ComplexityReport complexity_report(const Graph& g, ComplexityOptions opts) {
  ComplexityReport rep;
  rep.density = g.density();
  rep.edge_count = g.edge_count();
  const auto stats = degree_column_stats(g, opts);
  rep.d2_size = stats.size();
  if (stats.empty()) return rep;

  const bool complete = is_complete(g);
  const long double norm = normaliser(g);
  long double sum_r = 0.0L;
  long double sum_r_hat = 0.0L;
  for (const auto& st : stats) {
    DegreeComplexity dc;
    dc.rows = st.rows;
    const long double r_k = st.sum_variance / st.degree;
    // A complete graph is regular: every column is constant.
    const long double r_hat_k = complete ? 0.0L : st.sum_sigma / norm;
    dc.r = static_cast<double>(r_k);
    dc.r_hat = static_cast<double>(r_hat_k);
    rep.per_degree.emplace(st.degree, dc);
    sum_r += r_k;
    sum_r_hat += r_hat_k;
  }
  const auto count = static_cast<long double>(stats.size());
  rep.r = static_cast<double>(sum_r / count);
  rep.r_hat = static_cast<double>(sum_r_hat / count);
  if (rep.r_hat > 1.0) {
    warn("normalised hierarchical complexity " + std::to_string(rep.r_hat) +
         " exceeds the conjectured upper bound of 1");
  }
  return rep;
}

}  // namespace nhc
