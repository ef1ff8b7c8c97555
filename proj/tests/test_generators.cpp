#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nhc/complexity.hpp"
#include "nhc/error.hpp"
#include "nhc/generators.hpp"
#include "nhc/stats.hpp"

using namespace nhc;

namespace {

double mean_clustering(const Graph& g) {
  double total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    if (nb.size() < 2) continue;
    std::size_t tri = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) tri += g.has_edge(nb[a], nb[b]);
    total += 2.0 * tri / (double(nb.size()) * (nb.size() - 1));
  }
  return total / g.node_count();
}

double degree_variance(const Graph& g) {
  std::vector<double> d(g.degrees().begin(), g.degrees().end());
  const double s = stddev(d);
  return s * s;
}

std::vector<Degree> sorted_degrees(const Graph& g) {
  auto d = degree_sequence(g);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("rhgg") == Family::rhgg);
  CHECK(parse_family("ER") == Family::er);
  CHECK(to_string(Family::rhg) == "RHG");
  CHECK_THROWS_AS(parse_family("ba"), Error);
}

TEST_CASE("ER edge cases and concentration") {
  CHECK(gen_er(50, 0.0, 1).edge_count() == 0);
  CHECK(gen_er(50, 1.0, 1).edge_count() == 50 * 49 / 2);
  const auto g = gen_er(2000, 0.01, 5);
  const double mean_deg = 2.0 * g.edge_count() / 2000.0;
  // sd of the mean degree is sqrt(2 var(m)) / n with m ~ Bin(N, p)
  const double sd = 2.0 * std::sqrt(2000.0 * 1999 / 2 * 0.01 * 0.99) / 2000.0;
  CHECK(std::abs(mean_deg - 19.99) < 3 * sd);
  CHECK(gen_er(300, 0.05, 9) == gen_er(300, 0.05, 9));
  CHECK_FALSE(gen_er(300, 0.05, 9) == gen_er(300, 0.05, 10));
}

TEST_CASE("geometric families hit the edge count exactly") {
  CHECK(gen_rgg(3, 1.0, 3, 1) == testutil::complete(3));
  for (std::size_t n : {2, 17, 100, 401}) {
    for (double d : {0.001, 0.05, 0.37, 1.0}) {
      CHECK(gen_rgg(n, d, 3, 2).edge_count() == target_edge_count(n, d));
      CHECK(gen_rhgg(n, d, 2, 0.0, 0.5, 2).edge_count() == target_edge_count(n, d));
    }
  }
  CHECK(target_edge_count(1000, 0.05) == 24975);
}

TEST_CASE("sigma_h = 0 reproduces the RGG") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    CHECK(gen_rhgg(300, 0.04, 3, 0.7, 0.0, s) == gen_rgg(300, 0.04, 3, s));
  }
}

TEST_CASE("RGG is more clustered than ER, RHGG more heterogeneous than RGG") {
  double c_rgg = 0, c_er = 0, v_rhgg = 0, v_rgg = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rgg = gen_rgg(1000, 0.05, 3, s);
    c_rgg += mean_clustering(rgg);
    c_er += mean_clustering(gen_er(1000, 0.05, s));
    v_rgg += degree_variance(rgg);
    v_rhgg += degree_variance(gen_rhgg(1000, 0.05, 3, 0.0, 0.2, s));
  }
  CHECK(c_rgg > c_er);
  CHECK(v_rhgg > v_rgg);
}

TEST_CASE("configuration model") {
  CHECK(gen_config(std::vector<Degree>{1, 1}, 1) == testutil::make(2, {{0, 1}}));
  CHECK(gen_config(std::vector<Degree>{2, 2, 2}, 1) == testutil::complete(3));
  CHECK_THROWS_AS(gen_config(std::vector<Degree>{3, 1}, 1), Error);
  CHECK_THROWS_AS(gen_config(std::vector<Degree>{1, 1, 1}, 1), Error);
  CHECK_THROWS_AS(gen_config(std::vector<Degree>{3, 3, 1, 1}, 1), Error);

  const auto src = gen_rhgg(1000, 0.05, 3, 0.0, 0.2, 4);
  const auto cm = gen_config(degree_sequence(src), 8);
  CHECK(degree_sequence(cm) == degree_sequence(src));
  CHECK(nhc_global(cm) != nhc_global(src));

  // dense sequences go through the complement
  const auto dense = gen_er(120, 0.8, 2);
  CHECK(degree_sequence(gen_config(degree_sequence(dense), 3)) == degree_sequence(dense));
}

TEST_CASE("Erdos-Gallai") {
  CHECK(is_graphical(std::vector<Degree>{2, 2, 2}));
  CHECK(is_graphical(std::vector<Degree>{}));
  CHECK_FALSE(is_graphical(std::vector<Degree>{3, 3, 1, 1}));
  CHECK_FALSE(is_graphical(std::vector<Degree>{1, 1, 1}));
  CHECK_FALSE(is_graphical(std::vector<Degree>{4, 1, 1, 1}));
  CHECK(is_graphical(degree_sequence(gen_er(200, 0.1, 1))));
}

TEST_CASE("generate dispatches and validates") {
  ModelSpec spec;
  spec.family = Family::rhg;
  spec.n = 300;
  spec.target = 0.05;
  spec.seed = 6;
  const auto g = generate(spec);
  auto rhgg_spec = spec;
  rhgg_spec.family = Family::rhgg;
  CHECK(sorted_degrees(g) == sorted_degrees(generate(rhgg_spec)));
  CHECK(generate(spec) == g);

  spec.degree_sequence = {2, 2, 2};
  spec.n = 3;
  CHECK(generate(spec) == testutil::complete(3));

  ModelSpec bad;
  bad.family = Family::er;
  bad.n = 10;
  bad.target = 1.5;
  CHECK_THROWS_AS(validate(bad), Error);
  bad.target = 0.5;
  bad.n = 1;
  CHECK_THROWS_AS(validate(bad), Error);
  bad.family = Family::rhgg;
  bad.n = 10;
  bad.sigma_h = -1;
  CHECK_THROWS_AS(validate(bad), Error);
  bad.sigma_h = 0.2;
  bad.dims = 0;
  CHECK_THROWS_AS(validate(bad), Error);
}
