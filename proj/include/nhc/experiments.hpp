#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nhc/attachment.hpp"
#include "nhc/complexity.hpp"
#include "nhc/generators.hpp"
#include "nhc/stats.hpp"
#include "nhc/theory.hpp"

namespace nhc {

// ---------------------------------------------------------------------------
// Run manifests

/// Everything needed to reproduce one experiment. Fields irrelevant to the
/// chosen experiment are ignored.
struct RunManifest {
  std::string experiment = "fig2";  // fig2 | fig3 | fig4 | fig5
  std::uint64_t seed = 1;
  std::size_t realisations = 100;
  std::filesystem::path output_dir = ".";

  // fig2: n ~ U{n_range}, d ~ U(density_range], one row per family x measure.
  std::vector<Family> families{Family::er, Family::rgg, Family::rhg, Family::rhgg};
  std::pair<std::size_t, std::size_t> n_range{50, 5000};
  std::pair<double, double> density_range{0.0, 1.0};
  unsigned dims = 3;
  double mu = 0.0;
  double sigma_h = 0.2;

  // fig3: (n, p) grid, Monte-Carlo seeds per point.
  std::vector<std::pair<std::size_t, double>> theory_points{{500, 0.002}, {2000, 0.005}, {5000, 0.002}};
  std::size_t mc_seeds = 20;
  QuantileBounds bounds = QuantileBounds::er;

  // fig4: RHGGs with sigma_h ~ U[sigma_range], d ~ U(density_range].
  std::size_t n = 1000;
  std::pair<double, double> sigma_range{0.0, 1.0};

  // fig5: attachment sweeps on edge lists in `inputs`, or on `realisations`
  // generated RHGG(n, base_density) bases when `inputs` is empty.
  std::vector<std::filesystem::path> inputs;
  double base_density = 0.01;
  std::vector<Mechanism> mechanisms{std::begin(kAllMechanisms), std::end(kAllMechanisms)};
  std::vector<double> fractions = default_fractions();
  GrowthMode growth = GrowthMode::relative;
};

RunManifest default_manifest(const std::string& experiment);
RunManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& m);
RunManifest load_manifest(const std::filesystem::path& path);

/// Model spec from JSON: family, n, p | density, dims, mu, sigma_h, seed,
/// degree_sequence. Validated before returning.
ModelSpec model_spec_from_json(const nlohmann::json& j);

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string manifest_hash(const RunManifest& m);

/// Seed of realisation `index` in stream `stream` of a manifest seed.
std::uint64_t realisation_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Worker count from NHC_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, count) across worker_count() threads. Callers
/// write results into index-addressed slots so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Figure drivers

struct Fig2Row {
  Family family;
  std::size_t realisation;
  std::size_t n;
  double density;  // achieved
  std::string measure;  // R_hat | R_hat_sqrtk | R_hat_sqrtk_sqrtm
  double value;
};

std::vector<Fig2Row> run_fig2(const RunManifest& m);
void write_fig2_csv(std::ostream& out, const std::vector<Fig2Row>& rows);

struct Fig3Row {
  std::size_t n;
  double p;
  double approx;
  double mc_mean;
  double mc_sd;
  double rel_error;  // |approx - mc_mean| / mc_mean
  std::size_t a;
  std::size_t b;
};

/// Monte-Carlo mean of nhc_global over `seeds` ER(n, p) draws.
std::pair<double, double> er_monte_carlo(std::size_t n, double p, std::size_t seeds,
                                         std::uint64_t master_seed);
std::vector<Fig3Row> run_fig3(const RunManifest& m);
void write_fig3_csv(std::ostream& out, const std::vector<Fig3Row>& rows);

struct Fig4Row {
  std::size_t realisation;
  double sigma_h;
  double density;
  double r_hat;
};

struct Fig4ProfileRow {
  std::size_t realisation;
  Degree k;
  double r_hat_k;
};

struct Fig4Result {
  std::vector<Fig4Row> rows;
  std::vector<Fig4ProfileRow> profile;
};

Fig4Result run_fig4(const RunManifest& m);
void write_fig4_csv(std::ostream& out, const std::vector<Fig4Row>& rows);
void write_fig4_profile_csv(std::ostream& out, const std::vector<Fig4ProfileRow>& rows);

struct Fig5Result {
  std::vector<SweepTrace> traces;  // base-major, mechanism-minor
};

Fig5Result run_fig5(const RunManifest& m);
/// Per-network traces: base, mechanism, fraction, m, R_hat.
void write_sweep_csv(std::ostream& out, const std::vector<SweepTrace>& traces);
/// Raw R_hat averaged over bases per mechanism and fraction.
void write_sweep_mean_csv(std::ostream& out, const std::vector<SweepTrace>& traces);

/// Runs the experiment named in the manifest and writes its CSV files plus a
/// JSON sidecar (manifest and hash) into m.output_dir. Returns written paths.
std::vector<std::filesystem::path> run_experiment(const RunManifest& m);

// ---------------------------------------------------------------------------
// Real networks

struct NetworkRecord {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  double d = 0.0;
  double r = 0.0;
  double r_hat = 0.0;
  std::size_t components = 0;
  std::filesystem::path source_path;
};

NetworkRecord analyze_file(const std::filesystem::path& path, ComplexityOptions opts = {});
nlohmann::json to_json(const NetworkRecord& rec);
void write_records_csv(std::ostream& out, const std::vector<NetworkRecord>& recs);

/// Every regular file in `dir` (sorted by name) analysed as an edge list.
std::vector<NetworkRecord> analyze_directory(const std::filesystem::path& dir,
                                             ComplexityOptions opts = {});

/// Two independent rankings side by side: by R descending and by R_hat
/// descending, ties broken by name.
void write_ranking_csv(std::ostream& out, std::vector<NetworkRecord> recs);

struct DensityCorrelations {
  Correlation hc_vs_density;
  Correlation residual;  // hc vs residual of density ~ n
};

DensityCorrelations density_correlations(const std::vector<NetworkRecord>& recs);

}  // namespace nhc
