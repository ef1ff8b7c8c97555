#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "nhc/error.hpp"
#include "nhc/generators.hpp"
#include "nhc/io.hpp"
#include "nhc/stats.hpp"
#include "oracle.hpp"

using namespace nhc;

namespace {

LabelledGraph parse(const std::string& text, EdgeListFormat f = EdgeListFormat::automatic) {
  std::istringstream in(text);
  return parse_edgelist(in, f);
}

}  // namespace

TEST_CASE("edge list parsing") {
  CHECK(parse("0 1\n1 2\n").graph == testutil::path(3));
  const auto dup = parse("# a comment\n0 1\n1 0\n\n1 2 7.5\n2 1\n");
  CHECK(dup.graph == testutil::path(3));

  // Integer labels map in numeric order, others in order of appearance.
  const auto sparse = parse("10 30\n30 20\n");
  CHECK(sparse.labels == std::vector<std::string>{"10", "20", "30"});
  CHECK(sparse.graph.has_edge(0, 2));
  const auto named = parse("b a\na c\n");
  CHECK(named.labels == std::vector<std::string>{"b", "a", "c"});
  CHECK(named.graph.degree(1) == 2);

  const auto mm = parse("%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n1 2\n2 3\n");
  CHECK(mm.graph.edge_count() == 2);
  CHECK(mm.graph.node_count() == 3);

  CHECK_THROWS_AS(parse("0 1\n2\n"), Error);
  CHECK_THROWS_AS(parse("# nothing\n"), Error);
  CHECK_THROWS_WITH_AS(parse("0 1\nx\n"), doctest::Contains("line 2"), Error);
}

TEST_CASE("write then read is the identity") {
  const auto g = build_graph(gen_er(40, 0.1, 2).edges(), 45);  // isolated tail
  std::stringstream ss;
  write_edgelist(ss, g);
  CHECK(parse_edgelist(ss).graph == g);

  const auto path = std::filesystem::temp_directory_path() / "nhc_roundtrip.txt";
  write_edgelist(path, testutil::sixnode());
  CHECK(read_edgelist(path).graph == testutil::sixnode());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_edgelist("/nonexistent/file.txt"), Error);
}

TEST_CASE("spearman") {
  const std::vector<double> x{1, 2, 3}, up{10, 20, 30}, down{3, 2, 1};
  CHECK(spearman(x, up).rho == doctest::Approx(1.0));
  CHECK(spearman(x, down).rho == doctest::Approx(-1.0));
  CHECK(average_ranks(std::vector<double>{5, 1, 5, 3}) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK_THROWS_AS(spearman(x, std::vector<double>{1, 1, 1}), Error);
  CHECK_THROWS_AS(spearman(x, std::vector<double>{1, 2}), Error);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(15), b(15);
    for (auto& v : a) v = z(rng);
    for (auto& v : b) v = z(rng);
    CHECK(std::abs(spearman(a, b).rho - oracle::spearman(a, b)) < 1e-12);
  }
}

TEST_CASE("spearman p-values") {
  // n = 5, perfect order: exact two-sided p is 2/120.
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(spearman(x, x).p_value == doctest::Approx(2.0 / 120.0));
  // Large n, strongly dependent data.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  std::vector<double> a(200), b(200);
  for (std::size_t i = 0; i < 200; ++i) a[i] = z(rng), b[i] = a[i] + 0.5 * z(rng);
  const auto c = spearman(a, b);
  CHECK(c.rho > 0.8);
  CHECK(c.p_value < 1e-10);
}

TEST_CASE("regression residuals") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(ols_slope(y, x) == doctest::Approx(2.0));
  for (double r : ols_residuals(y, x)) CHECK(std::abs(r) < 1e-12);
  CHECK_THROWS_AS(ols_slope(y, std::vector<double>{2, 2, 2, 2}), Error);

  // Density exactly linear in n: residuals vanish.
  const std::vector<double> n{10, 20, 30, 40, 50}, d{0.1, 0.2, 0.3, 0.4, 0.5}, hc{5, 3, 4, 1, 2};
  CHECK_THROWS_WITH_AS(residual_correlation(hc, d, n), doctest::Contains("constant input"), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u;
  int significant = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> nn(20), dd(20), hh(20);
    for (std::size_t i = 0; i < 20; ++i) {
      nn[i] = 100 + 1000 * u(rng);
      dd[i] = u(rng);
      hh[i] = dd[i] + 0.1 * u(rng);
    }
    const auto c = residual_correlation(hh, dd, nn);
    significant += c.rho > 0 && c.p_value < 0.05;
  }
  CHECK(significant >= 90);
}

TEST_CASE("rank-sum test") {
  const std::vector<double> a{10, 11, 12, 13, 14, 15}, b{1, 2, 3, 4, 5, 6};
  const auto r = rank_sum_test(a, b);
  CHECK(r.u == 36.0);
  CHECK(r.z > 0);
  CHECK(r.p_value < 0.01);
  const auto flipped = rank_sum_test(b, a);
  CHECK(flipped.z == doctest::Approx(-r.z));
  CHECK(rank_sum_test(a, a).p_value == doctest::Approx(1.0));
  CHECK(mean(a) == 12.5);
  CHECK(stddev(std::vector<double>{1, 3}) == doctest::Approx(std::sqrt(2.0)));
}
