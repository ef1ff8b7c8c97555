#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "nhc/error.hpp"
#include "nhc/experiments.hpp"
#include "nhc/io.hpp"

using namespace nhc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunManifest small_fig2() {
  auto m = default_manifest("fig2");
  m.realisations = 10;
  m.n_range = {30, 200};
  return m;
}

}  // namespace

TEST_CASE("manifest defaults and JSON round trip") {
  CHECK(default_manifest("fig2").realisations == 100);
  CHECK(default_manifest("fig2").n_range.second == 5000);
  CHECK(default_manifest("fig4").realisations == 200);
  CHECK(default_manifest("fig5").realisations == 5);
  CHECK_THROWS_AS(default_manifest("fig9"), Error);

  auto m = default_manifest("fig5");
  m.seed = 42;
  m.mechanisms = {Mechanism::combined};
  m.growth = GrowthMode::absolute;
  m.fractions = {0.0, 0.01};
  const auto back = manifest_from_json(to_json(m));
  CHECK(to_json(back) == to_json(m));
  CHECK(manifest_hash(back) == manifest_hash(m));
  m.seed = 43;
  CHECK(manifest_hash(back) != manifest_hash(m));

  CHECK_THROWS_AS(manifest_from_json(json{{"experiment", "fig2"}, {"sede", 1}}), Error);
  CHECK_THROWS_AS(manifest_from_json(json{{"seed", 1}}), Error);
  CHECK_THROWS_AS(manifest_from_json(json{{"experiment", "fig2"}, {"n_range", {1}}}), Error);
  const auto tp = manifest_from_json(json{{"experiment", "fig3"}, {"theory_points", {{100, 0.1}}}});
  CHECK(tp.theory_points == std::vector<std::pair<std::size_t, double>>{{100, 0.1}});
}

TEST_CASE("model spec from JSON") {
  const auto s = model_spec_from_json(json{{"family", "rhgg"}, {"n", 50}, {"density", 0.1}, {"seed", 3}});
  CHECK(s.family == Family::rhgg);
  CHECK(s.n == 50);
  CHECK(s.target == 0.1);
  CHECK_THROWS_AS(model_spec_from_json(json{{"family", "er"}, {"n", 50}, {"p", 2.0}}), Error);
  CHECK_THROWS_AS(model_spec_from_json(json{{"family", "er"}, {"n", 50}, {"bogus", 1}}), Error);
}

TEST_CASE("parallel results do not depend on the worker count") {
  auto run = [](const char* workers) {
    setenv("NHC_WORKERS", workers, 1);
    std::stringstream ss;
    write_fig2_csv(ss, run_fig2(small_fig2()));
    unsetenv("NHC_WORKERS");
    return ss.str();
  };
  CHECK(run("1") == run("3"));
  CHECK(worker_count() >= 1);

  std::vector<int> hits(100, 0);
  setenv("NHC_WORKERS", "4", 1);
  parallel_for(100, [&](std::size_t i) { ++hits[i]; });
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw Error("boom"); }), Error);
  unsetenv("NHC_WORKERS");
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("fig2 rows") {
  auto m = small_fig2();
  const auto rows = run_fig2(m);
  CHECK(rows.size() == 4 * 10 * 3);
  for (const auto& r : rows) {
    CHECK(r.n >= 30);
    CHECK(r.n <= 200);
    CHECK(r.value >= 0.0);
  }
  // Families share (n, d) per realisation.
  CHECK(rows[0].n == rows[30].n);
}

TEST_CASE("fig2: RHGG more complex than ER; sqrt(k) variants drift with n") {
  auto m = default_manifest("fig2");
  m.realisations = 40;
  m.n_range = {50, 800};
  m.density_range = {0.01, 0.3};
  m.families = {Family::er, Family::rhgg};
  const auto rows = run_fig2(m);
  std::map<std::string, std::vector<double>> logv;
  std::vector<double> er, rhgg, logn;
  for (const auto& r : rows) {
    if (r.measure == "R_hat") (r.family == Family::er ? er : rhgg).push_back(r.value);
    if (r.family != Family::rhgg) continue;
    logv[r.measure].push_back(std::log(r.value));
    if (r.measure == "R_hat") logn.push_back(std::log(double(r.n)));
  }
  CHECK(mean(rhgg) > mean(er));
  // sqrt(m) / sqrt(k) grows like sqrt(n) at any fixed density, so the
  // log-log slope against n rises by about one half.
  const double base = ols_slope(logv["R_hat"], logn);
  const double alt = ols_slope(logv["R_hat_sqrtk_sqrtm"], logn);
  CHECK(alt - base > 0.3);
}

TEST_CASE("fig3, fig4 and fig5 drivers") {
  auto m3 = default_manifest("fig3");
  m3.theory_points = {{400, 0.02}};
  m3.mc_seeds = 3;
  const auto f3 = run_fig3(m3);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].approx > 0);
  CHECK(f3[0].rel_error == doctest::Approx(std::abs(f3[0].approx - f3[0].mc_mean) / f3[0].mc_mean));

  auto m4 = default_manifest("fig4");
  m4.realisations = 6;
  m4.n = 150;
  const auto f4 = run_fig4(m4);
  CHECK(f4.rows.size() == 6);
  for (const auto& r : f4.rows) {
    CHECK(r.sigma_h >= 0.0);
    CHECK(r.sigma_h <= 1.0);
  }
  CHECK_FALSE(f4.profile.empty());

  auto m5 = default_manifest("fig5");
  m5.realisations = 2;
  m5.n = 120;
  m5.base_density = 0.05;
  m5.fractions = {0.0, 0.1};
  const auto f5 = run_fig5(m5);
  CHECK(f5.traces.size() == 2 * 4);
  std::stringstream ss;
  write_sweep_mean_csv(ss, f5.traces);
  CHECK(ss.str().find("combined,0.1,") != std::string::npos);
}

TEST_CASE("run_experiment is byte-reproducible") {
  const auto dir = fs::temp_directory_path() / "nhc_exp_test";
  fs::remove_all(dir);
  auto m = small_fig2();
  m.output_dir = dir / "a";
  const auto a = run_experiment(m);
  m.output_dir = dir / "b";
  run_experiment(m);
  CHECK(a.size() == 2);
  CHECK(slurp(dir / "a" / "fig2.csv") == slurp(dir / "b" / "fig2.csv"));
  const auto side = json::parse(slurp(dir / "a" / "fig2.json"));
  CHECK(side["manifest_hash"].get<std::string>().size() == 16);
  fs::remove_all(dir);
}

TEST_CASE("network records and ranking") {
  const fs::path fixtures = NHC_FIXTURE_DIR;
  const auto rec = analyze_file(fixtures / "sixnode.txt");
  CHECK(rec.name == "sixnode");
  CHECK(rec.d == doctest::Approx(0.4));
  CHECK(std::abs(rec.r_hat - 0.18519) < 1e-5);
  CHECK(to_json(rec)["R_hat"].get<double>() == rec.r_hat);

  const auto dir = fs::temp_directory_path() / "nhc_rank_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_edgelist(dir / "b_cycle.txt", testutil::cycle(10));
  write_edgelist(dir / "a_cycle.txt", testutil::cycle(12));
  write_edgelist(dir / "six.txt", testutil::sixnode());
  write_edgelist(dir / "path.txt", testutil::path(7));
  const auto recs = analyze_directory(dir);
  CHECK(recs.size() == 4);
  CHECK(recs[0].name == "a_cycle");
  std::stringstream ss;
  write_ranking_csv(ss, recs);
  std::string header, first, second, third;
  std::getline(ss, header);
  std::getline(ss, first);
  std::getline(ss, second);
  std::getline(ss, third);
  CHECK(header == "rank,R,network_by_R,R_hat,network_by_R_hat");
  CHECK(first.find("six") != std::string::npos);
  // Ties at zero are ordered by name.
  CHECK(third.rfind(",a_cycle") != std::string::npos);
  fs::remove_all(dir);
  CHECK_THROWS_AS(analyze_directory(dir), Error);
}
