// nhc: command-line front end for the hierarchical complexity library.
//
//   nhc analyze <edgelist> [--format json|csv] [--sample-sd]
//   nhc generate [<modelspec.json>] [--family er --n 100 --p 0.1 ...] [--out file]
//   nhc theory <n> <p> [--bounds er|general]
//   nhc sweep fig2|fig3|fig4|fig5 [--manifest file] [--out dir]
//   nhc rank <dir> [--correlations]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhc/error.hpp"
#include "nhc/experiments.hpp"
#include "nhc/io.hpp"
#include "nhc/stats.hpp"

namespace {

using nlohmann::json;

int cmd_analyze(const std::string& path, const std::string& format, bool sample_sd) {
  nhc::ComplexityOptions opts;
  if (sample_sd) opts.sd = nhc::SdConvention::sample;
  const auto rec = nhc::analyze_file(path, opts);
  if (format == "csv") {
    nhc::write_records_csv(std::cout, {rec});
  } else {
    std::cout << nhc::to_json(rec).dump(2) << '\n';
  }
  return 0;
}

int cmd_generate(const std::string& spec_path, nhc::ModelSpec spec, bool have_flags,
                 const std::string& out_path) {
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw nhc::Error("cannot open model spec '" + spec_path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw nhc::Error("model spec '" + spec_path + "': " + e.what());
    }
    spec = nhc::model_spec_from_json(j);
  } else if (!have_flags) {
    throw nhc::Error("generate needs a model spec file or --family/--n flags");
  }
  const auto g = nhc::generate(spec);
  if (g.edge_count() == 0) std::cerr << "warning: generated graph has no edges\n";
  if (out_path.empty() || out_path == "-") {
    nhc::write_edgelist(std::cout, g);
  } else {
    nhc::write_edgelist(out_path, g);
  }
  return 0;
}

int cmd_theory(std::size_t n, double p, const std::string& bounds) {
  const auto kind = bounds == "general" ? nhc::QuantileBounds::general : nhc::QuantileBounds::er;
  const auto approx = nhc::nhc_global_approx(n, p, kind);
  std::cout << "# n=" << n << " p=" << p << " a=" << approx.a << " b=" << approx.b
            << " R_hat=" << approx.r_hat << " dropped_terms=" << approx.dropped_terms << '\n';
  std::cout << "k,R_hat_k\n";
  std::cout.precision(12);
  for (const auto& [k, v] : approx.per_degree) std::cout << k << ',' << v << '\n';
  return 0;
}

int cmd_sweep(const std::string& figure, const std::string& manifest_path, const std::string& out_dir) {
  nhc::RunManifest m = manifest_path.empty() ? nhc::default_manifest(figure)
                                             : nhc::load_manifest(manifest_path);
  if (m.experiment != figure) {
    throw nhc::Error("manifest is for '" + m.experiment + "' but '" + figure + "' was requested");
  }
  if (!out_dir.empty()) m.output_dir = out_dir;
  for (const auto& p : nhc::run_experiment(m)) std::cout << p.string() << '\n';
  return 0;
}

int cmd_rank(const std::string& dir, bool correlations) {
  const auto recs = nhc::analyze_directory(dir);
  nhc::write_ranking_csv(std::cout, recs);
  if (correlations) {
    const auto c = nhc::density_correlations(recs);
    std::cout << "# spearman(R_hat, d): rho=" << c.hc_vs_density.rho
              << " p=" << c.hc_vs_density.p_value << '\n';
    std::cout << "# spearman(R_hat, residual(d ~ n)): rho=" << c.residual.rho
              << " p=" << c.residual.p_value << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalised hierarchical complexity of networks"};
  app.require_subcommand(1);

  std::string analyze_path;
  std::string analyze_format = "json";
  bool sample_sd = false;
  auto* analyze = app.add_subcommand("analyze", "Complexity record for an edge list");
  analyze->add_option("edgelist", analyze_path)->required();
  analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"json", "csv"}));
  analyze->add_flag("--sample-sd", sample_sd, "Use the n-1 divisor for column deviations");

  std::string spec_path;
  std::string family = "er";
  std::string out_path;
  nhc::ModelSpec spec;
  std::optional<double> p_opt;
  std::optional<double> density_opt;
  auto* generate = app.add_subcommand("generate", "Sample a random graph as an edge list");
  generate->add_option("modelspec", spec_path, "JSON model spec");
  auto* family_opt = generate->add_option("--family", family)->check(
      CLI::IsMember({"er", "rgg", "rhgg", "rhg", "ER", "RGG", "RHGG", "RHG"}));
  auto* n_opt = generate->add_option("--n", spec.n);
  generate->add_option("--p", p_opt, "Edge probability (ER)");
  generate->add_option("--density", density_opt, "Target density (geometric families)");
  generate->add_option("--q,--dims", spec.dims);
  generate->add_option("--mu", spec.mu);
  generate->add_option("--sigma-h", spec.sigma_h);
  generate->add_option("--seed", spec.seed);
  generate->add_option("--out,-o", out_path);

  std::size_t theory_n = 0;
  double theory_p = 0.0;
  std::string bounds = "er";
  auto* theory = app.add_subcommand("theory", "Order-statistics approximation for ER(n, p)");
  theory->add_option("n", theory_n)->required();
  theory->add_option("p", theory_p)->required();
  theory->add_option("--bounds", bounds)->check(CLI::IsMember({"er", "general"}));

  std::string figure;
  std::string manifest_path;
  std::string out_dir;
  auto* sweep = app.add_subcommand("sweep", "Run a figure experiment and write CSV");
  sweep->add_option("figure", figure)->required()->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
  sweep->add_option("--manifest", manifest_path);
  sweep->add_option("--out", out_dir);

  std::string rank_dir;
  bool correlations = false;
  auto* rank = app.add_subcommand("rank", "Rank every edge list in a directory by R and R_hat");
  rank->add_option("dir", rank_dir)->required();
  rank->add_flag("--correlations", correlations, "Also report density correlations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(analyze_path, analyze_format, sample_sd);
    if (*generate) {
      spec.family = nhc::parse_family(family);
      if (p_opt) spec.target = *p_opt;
      if (density_opt) spec.target = *density_opt;
      const bool have_flags = family_opt->count() > 0 || n_opt->count() > 0;
      return cmd_generate(spec_path, spec, have_flags, out_path);
    }
    if (*theory) return cmd_theory(theory_n, theory_p, bounds);
    if (*sweep) return cmd_sweep(figure, manifest_path, out_dir);
    if (*rank) return cmd_rank(rank_dir, correlations);
  } catch (const nhc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
