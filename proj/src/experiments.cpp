#include "nhc/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "nhc/error.hpp"
#include "nhc/io.hpp"
#include "nhc/rng.hpp"
#include "nhc/stats.hpp"

namespace nhc {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Streams used to derive per-realisation seeds; fixed so that adding a new
// experiment never perturbs the others.
constexpr std::uint64_t kParamStream = 0x5041524d;  // n, d, sigma_h draws
constexpr std::uint64_t kBaseStream = 0x42415345;   // fig5 base graphs
constexpr std::uint64_t kSweepStream = 0x53574550;  // fig5 sweeps
constexpr std::uint64_t kErStream = 0x45520000;     // fig3 Monte Carlo

std::size_t draw_n(std::mt19937_64& rng, std::pair<std::size_t, std::size_t> range) {
  return range.first + uniform_below(rng, range.second - range.first + 1);
}

// Uniform on (lo, hi]: a zero-density draw would produce an empty graph.
double draw_open_low(std::mt19937_64& rng, std::pair<double, double> range) {
  return range.second - uniform01(rng) * (range.second - range.first);
}

template <class T>
std::pair<T, T> read_pair(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(std::string("manifest: '") + key + "' must be a two-element array");
  }
  return {j[0].get<T>(), j[1].get<T>()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifests

RunManifest default_manifest(const std::string& experiment) {
  RunManifest m;
  m.experiment = experiment;
  if (experiment == "fig2") {
    m.realisations = 100;
  } else if (experiment == "fig3") {
    m.realisations = 0;
  } else if (experiment == "fig4") {
    m.realisations = 200;
    m.n = 1000;
  } else if (experiment == "fig5") {
    m.realisations = 5;
    m.n = 1000;
  } else {
    throw Error("unknown experiment '" + experiment + "' (expected fig2, fig3, fig4 or fig5)");
  }
  return m;
}

RunManifest manifest_from_json(const json& j) {
  if (!j.is_object()) throw Error("manifest must be a JSON object");
  if (!j.contains("experiment")) throw Error("manifest: missing 'experiment'");
  RunManifest m = default_manifest(j.at("experiment").get<std::string>());
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") {
        continue;
      } else if (key == "seed") {
        m.seed = v.get<std::uint64_t>();
      } else if (key == "realisations") {
        m.realisations = v.get<std::size_t>();
      } else if (key == "output_dir") {
        m.output_dir = v.get<std::string>();
      } else if (key == "families") {
        m.families.clear();
        for (const auto& f : v) m.families.push_back(parse_family(f.get<std::string>()));
      } else if (key == "n_range") {
        m.n_range = read_pair<std::size_t>(v, "n_range");
      } else if (key == "density_range") {
        m.density_range = read_pair<double>(v, "density_range");
      } else if (key == "dims") {
        m.dims = v.get<unsigned>();
      } else if (key == "mu") {
        m.mu = v.get<double>();
      } else if (key == "sigma_h") {
        m.sigma_h = v.get<double>();
      } else if (key == "theory_points") {
        m.theory_points.clear();
        for (const auto& pt : v) {
          const auto [n, p] = read_pair<double>(pt, "theory_points");
          m.theory_points.emplace_back(static_cast<std::size_t>(n), p);
        }
      } else if (key == "mc_seeds") {
        m.mc_seeds = v.get<std::size_t>();
      } else if (key == "bounds") {
        const auto s = v.get<std::string>();
        if (s == "er") {
          m.bounds = QuantileBounds::er;
        } else if (s == "general") {
          m.bounds = QuantileBounds::general;
        } else {
          throw Error("manifest: bounds must be 'er' or 'general'");
        }
      } else if (key == "n") {
        m.n = v.get<std::size_t>();
      } else if (key == "sigma_range") {
        m.sigma_range = read_pair<double>(v, "sigma_range");
      } else if (key == "inputs") {
        m.inputs.clear();
        for (const auto& p : v) m.inputs.emplace_back(p.get<std::string>());
      } else if (key == "base_density") {
        m.base_density = v.get<double>();
      } else if (key == "mechanisms") {
        m.mechanisms.clear();
        for (const auto& s : v) m.mechanisms.push_back(parse_mechanism(s.get<std::string>()));
      } else if (key == "fractions") {
        m.fractions = v.get<std::vector<double>>();
      } else if (key == "growth") {
        const auto s = v.get<std::string>();
        if (s == "relative") {
          m.growth = GrowthMode::relative;
        } else if (s == "absolute") {
          m.growth = GrowthMode::absolute;
        } else {
          throw Error("manifest: growth must be 'relative' or 'absolute'");
        }
      } else {
        throw Error("manifest: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("manifest: ") + e.what());
  }
  if (m.n_range.first < 2 || m.n_range.first > m.n_range.second) {
    throw Error("manifest: n_range must satisfy 2 <= lo <= hi");
  }
  if (m.density_range.first < 0.0 || m.density_range.second > 1.0 ||
      m.density_range.first >= m.density_range.second) {
    throw Error("manifest: density_range must satisfy 0 <= lo < hi <= 1");
  }
  return m;
}

json to_json(const RunManifest& m) {
  json j;
  j["experiment"] = m.experiment;
  j["seed"] = m.seed;
  j["realisations"] = m.realisations;
  j["output_dir"] = m.output_dir.string();
  json fams = json::array();
  for (const auto f : m.families) fams.push_back(std::string(to_string(f)));
  j["families"] = fams;
  j["n_range"] = {m.n_range.first, m.n_range.second};
  j["density_range"] = {m.density_range.first, m.density_range.second};
  j["dims"] = m.dims;
  j["mu"] = m.mu;
  j["sigma_h"] = m.sigma_h;
  json pts = json::array();
  for (const auto& [n, p] : m.theory_points) pts.push_back({n, p});
  j["theory_points"] = pts;
  j["mc_seeds"] = m.mc_seeds;
  j["bounds"] = m.bounds == QuantileBounds::er ? "er" : "general";
  j["n"] = m.n;
  j["sigma_range"] = {m.sigma_range.first, m.sigma_range.second};
  json inputs = json::array();
  for (const auto& p : m.inputs) inputs.push_back(p.string());
  j["inputs"] = inputs;
  j["base_density"] = m.base_density;
  json mechs = json::array();
  for (const auto mech : m.mechanisms) mechs.push_back(std::string(to_string(mech)));
  j["mechanisms"] = mechs;
  j["fractions"] = m.fractions;
  j["growth"] = m.growth == GrowthMode::relative ? "relative" : "absolute";
  return j;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("manifest '" + path.string() + "': " + e.what());
  }
  return manifest_from_json(j);
}

ModelSpec model_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error("model spec must be a JSON object");
  ModelSpec spec;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "family") {
        spec.family = parse_family(v.get<std::string>());
      } else if (key == "n") {
        spec.n = v.get<std::size_t>();
      } else if (key == "p" || key == "density" || key == "target") {
        spec.target = v.get<double>();
      } else if (key == "dims" || key == "q") {
        spec.dims = v.get<unsigned>();
      } else if (key == "mu") {
        spec.mu = v.get<double>();
      } else if (key == "sigma_h") {
        spec.sigma_h = v.get<double>();
      } else if (key == "seed") {
        spec.seed = v.get<std::uint64_t>();
      } else if (key == "degree_sequence") {
        spec.degree_sequence = v.get<std::vector<Degree>>();
      } else {
        throw Error("model spec: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("model spec: ") + e.what());
  }
  if (spec.family == Family::rhg && spec.n == 0) spec.n = spec.degree_sequence.size();
  validate(spec);
  return spec;
}

std::string manifest_hash(const RunManifest& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_json(m).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::uint64_t realisation_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

std::size_t worker_count() {
  if (const char* env = std::getenv("NHC_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// fig2: model sweep with alternative normalisations

std::vector<Fig2Row> run_fig2(const RunManifest& m) {
  struct Params {
    std::size_t n;
    double d;
  };
  std::vector<Params> params(m.realisations);
  for (std::size_t r = 0; r < m.realisations; ++r) {
    // Shared across families so that realisation r is a paired comparison.
    auto rng = make_stream(realisation_seed(m.seed, kParamStream, r));
    params[r].n = draw_n(rng, m.n_range);
    params[r].d = draw_open_low(rng, m.density_range);
  }

  const std::size_t jobs = m.families.size() * m.realisations;
  std::vector<std::array<Fig2Row, 3>> slots(jobs);
  parallel_for(jobs, [&](std::size_t job) {
    const std::size_t fi = job / m.realisations;
    const std::size_t r = job % m.realisations;
    ModelSpec spec;
    spec.family = m.families[fi];
    spec.n = params[r].n;
    spec.target = params[r].d;
    spec.dims = m.dims;
    spec.mu = m.mu;
    spec.sigma_h = m.sigma_h;
    spec.seed = realisation_seed(m.seed, static_cast<std::uint64_t>(spec.family), r);
    const Graph g = generate(spec);
    const auto v = normalisation_variants(g);
    const double d = g.density();
    slots[job] = {Fig2Row{spec.family, r, spec.n, d, "R_hat", v.r_hat},
                  Fig2Row{spec.family, r, spec.n, d, "R_hat_sqrtk", v.r_hat_sqrtk},
                  Fig2Row{spec.family, r, spec.n, d, "R_hat_sqrtk_sqrtm", v.r_hat_sqrtk_sqrtm}};
  });
  std::vector<Fig2Row> rows;
  rows.reserve(jobs * 3);
  for (const auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

void write_fig2_csv(std::ostream& out, const std::vector<Fig2Row>& rows) {
  out << "family,realisation,n,d,measure,value\n";
  for (const auto& r : rows) {
    out << to_string(r.family) << ',' << r.realisation << ',' << r.n << ',' << fmt(r.density)
        << ',' << r.measure << ',' << fmt(r.value) << '\n';
  }
}

// ---------------------------------------------------------------------------
// fig3: theory against simulation for ER graphs

std::pair<double, double> er_monte_carlo(std::size_t n, double p, std::size_t seeds,
                                         std::uint64_t master_seed) {
  std::vector<double> values(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    values[s] = nhc_global(gen_er(n, p, realisation_seed(master_seed, kErStream + n, s)));
  });
  return {mean(values), seeds > 1 ? stddev(values) : 0.0};
}

std::vector<Fig3Row> run_fig3(const RunManifest& m) {
  std::vector<Fig3Row> rows;
  for (const auto& [n, p] : m.theory_points) {
    Fig3Row row{};
    row.n = n;
    row.p = p;
    const auto approx = nhc_global_approx(n, p, m.bounds);
    row.approx = approx.r_hat;
    row.a = approx.a;
    row.b = approx.b;
    std::tie(row.mc_mean, row.mc_sd) = er_monte_carlo(n, p, m.mc_seeds, m.seed);
    row.rel_error = std::abs(row.approx - row.mc_mean) / row.mc_mean;
    rows.push_back(row);
  }
  return rows;
}

void write_fig3_csv(std::ostream& out, const std::vector<Fig3Row>& rows) {
  out << "n,p,approx,mc_mean,mc_sd,rel_error,a,b\n";
  for (const auto& r : rows) {
    out << r.n << ',' << fmt(r.p) << ',' << fmt(r.approx) << ',' << fmt(r.mc_mean) << ','
        << fmt(r.mc_sd) << ',' << fmt(r.rel_error) << ',' << r.a << ',' << r.b << '\n';
  }
}

// ---------------------------------------------------------------------------
// fig4: heterogeneity sweep

Fig4Result run_fig4(const RunManifest& m) {
  std::vector<Fig4Row> rows(m.realisations);
  std::vector<std::vector<Fig4ProfileRow>> profiles(m.realisations);
  parallel_for(m.realisations, [&](std::size_t r) {
    auto rng = make_stream(realisation_seed(m.seed, kParamStream, r));
    const double sigma = m.sigma_range.first + uniform01(rng) * (m.sigma_range.second - m.sigma_range.first);
    const double d = draw_open_low(rng, m.density_range);
    const Graph g = gen_rhgg(m.n, d, m.dims, m.mu, sigma,
                             realisation_seed(m.seed, static_cast<std::uint64_t>(Family::rhgg), r));
    const auto rep = complexity_report(g);
    rows[r] = {r, sigma, g.density(), rep.r_hat};
    for (const auto& [k, dc] : rep.per_degree) profiles[r].push_back({r, k, dc.r_hat});
  });
  Fig4Result out;
  out.rows = std::move(rows);
  for (auto& p : profiles) out.profile.insert(out.profile.end(), p.begin(), p.end());
  return out;
}

void write_fig4_csv(std::ostream& out, const std::vector<Fig4Row>& rows) {
  out << "realisation,sigma_h,d,R_hat\n";
  for (const auto& r : rows) {
    out << r.realisation << ',' << fmt(r.sigma_h) << ',' << fmt(r.density) << ',' << fmt(r.r_hat)
        << '\n';
  }
}

void write_fig4_profile_csv(std::ostream& out, const std::vector<Fig4ProfileRow>& rows) {
  out << "realisation,k,R_hat_k\n";
  for (const auto& r : rows) out << r.realisation << ',' << r.k << ',' << fmt(r.r_hat_k) << '\n';
}

// ---------------------------------------------------------------------------
// fig5: attachment sweeps

Fig5Result run_fig5(const RunManifest& m) {
  std::vector<std::pair<std::string, Graph>> bases;
  if (!m.inputs.empty()) {
    for (const auto& path : m.inputs) {
      bases.emplace_back(path.stem().string(), read_edgelist(path).graph);
    }
  } else {
    for (std::size_t b = 0; b < m.realisations; ++b) {
      bases.emplace_back("rhgg_" + std::to_string(b),
                         gen_rhgg(m.n, m.base_density, m.dims, m.mu, m.sigma_h,
                                  realisation_seed(m.seed, kBaseStream, b)));
    }
  }
  const std::size_t jobs = bases.size() * m.mechanisms.size();
  Fig5Result out;
  out.traces.resize(jobs);
  parallel_for(jobs, [&](std::size_t job) {
    const std::size_t b = job / m.mechanisms.size();
    const std::size_t mi = job % m.mechanisms.size();
    const auto mech = m.mechanisms[mi];
    out.traces[job] = density_sweep(bases[b].second, mech, m.fractions,
                                    realisation_seed(m.seed, kSweepStream + static_cast<std::uint64_t>(mech), b),
                                    m.growth, bases[b].first);
  });
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepTrace>& traces) {
  out << "base,mechanism,fraction,m,R_hat\n";
  for (const auto& t : traces) {
    for (const auto& s : t.steps) {
      out << t.base_id << ',' << to_string(t.mechanism) << ',' << fmt(s.fraction) << ','
          << s.edges << ',' << fmt(s.r_hat) << '\n';
    }
  }
}

void write_sweep_mean_csv(std::ostream& out, const std::vector<SweepTrace>& traces) {
  // mechanism -> fraction -> values
  std::map<std::string, std::map<double, std::vector<double>>> acc;
  for (const auto& t : traces) {
    for (const auto& s : t.steps) acc[std::string(to_string(t.mechanism))][s.fraction].push_back(s.r_hat);
  }
  out << "mechanism,fraction,mean_R_hat,bases\n";
  for (const auto& [mech, by_fraction] : acc) {
    for (const auto& [f, vals] : by_fraction) {
      out << mech << ',' << fmt(f) << ',' << fmt(mean(vals)) << ',' << vals.size() << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<std::filesystem::path> run_experiment(const RunManifest& m) {
  std::filesystem::create_directories(m.output_dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    const auto path = m.output_dir / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    written.push_back(path);
    return out;
  };
  if (m.experiment == "fig2") {
    auto out = open("fig2.csv");
    write_fig2_csv(out, run_fig2(m));
  } else if (m.experiment == "fig3") {
    auto out = open("fig3.csv");
    write_fig3_csv(out, run_fig3(m));
  } else if (m.experiment == "fig4") {
    const auto res = run_fig4(m);
    auto rows = open("fig4.csv");
    write_fig4_csv(rows, res.rows);
    auto profile = open("fig4_profile.csv");
    write_fig4_profile_csv(profile, res.profile);
  } else if (m.experiment == "fig5") {
    const auto res = run_fig5(m);
    auto traces = open("fig5_traces.csv");
    write_sweep_csv(traces, res.traces);
    auto means = open("fig5_mean.csv");
    write_sweep_mean_csv(means, res.traces);
  } else {
    throw Error("unknown experiment '" + m.experiment + "'");
  }
  json sidecar;
  sidecar["manifest"] = to_json(m);
  sidecar["manifest_hash"] = manifest_hash(m);
  json outputs = json::array();
  for (const auto& p : written) outputs.push_back(p.filename().string());
  sidecar["outputs"] = outputs;
  auto side = open(m.experiment + ".json");
  side << sidecar.dump(2) << '\n';
  return written;
}

// ---------------------------------------------------------------------------
// Real networks

NetworkRecord analyze_file(const std::filesystem::path& path, ComplexityOptions opts) {
  const auto lg = read_edgelist(path);
  const auto rep = complexity_report(lg.graph, opts);
  NetworkRecord rec;
  rec.name = path.stem().string();
  rec.n = lg.graph.node_count();
  rec.m = lg.graph.edge_count();
  rec.d = lg.graph.density();
  rec.r = rep.r;
  rec.r_hat = rep.r_hat;
  rec.components = lg.graph.component_count();
  rec.source_path = path;
  return rec;
}

json to_json(const NetworkRecord& rec) {
  return json{{"name", rec.name},   {"n", rec.n},         {"m", rec.m},
              {"d", rec.d},         {"R", rec.r},         {"R_hat", rec.r_hat},
              {"components", rec.components}, {"source_path", rec.source_path.string()}};
}

void write_records_csv(std::ostream& out, const std::vector<NetworkRecord>& recs) {
  out << "name,n,m,d,R,R_hat,components,source_path\n";
  for (const auto& r : recs) {
    out << r.name << ',' << r.n << ',' << r.m << ',' << fmt(r.d) << ',' << fmt(r.r) << ','
        << fmt(r.r_hat) << ',' << r.components << ',' << r.source_path.string() << '\n';
  }
}

std::vector<NetworkRecord> analyze_directory(const std::filesystem::path& dir, ComplexityOptions opts) {
  if (!std::filesystem::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no edge lists in '" + dir.string() + "'");
  std::vector<NetworkRecord> recs(files.size());
  parallel_for(files.size(), [&](std::size_t i) { recs[i] = analyze_file(files[i], opts); });
  return recs;
}

void write_ranking_csv(std::ostream& out, std::vector<NetworkRecord> recs) {
  auto by_r = recs;
  std::sort(by_r.begin(), by_r.end(), [](const auto& a, const auto& b) {
    return a.r != b.r ? a.r > b.r : a.name < b.name;
  });
  std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    return a.r_hat != b.r_hat ? a.r_hat > b.r_hat : a.name < b.name;
  });
  out << "rank,R,network_by_R,R_hat,network_by_R_hat\n";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    out << i + 1 << ',' << fmt(by_r[i].r) << ',' << by_r[i].name << ',' << fmt(recs[i].r_hat) << ','
        << recs[i].name << '\n';
  }
}

DensityCorrelations density_correlations(const std::vector<NetworkRecord>& recs) {
  std::vector<double> hc;
  std::vector<double> d;
  std::vector<double> n;
  for (const auto& r : recs) {
    hc.push_back(r.r_hat);
    d.push_back(r.d);
    n.push_back(static_cast<double>(r.n));
  }
  return {spearman(hc, d), residual_correlation(hc, d, n)};
}

}  // namespace nhc
