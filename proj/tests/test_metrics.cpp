#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fractalnet/errors.hpp"
#include "fractalnet/metrics.hpp"
#include "fractalnet/models.hpp"
#include "support/oracles.hpp"

using namespace fractalnet;

TEST_CASE("assortativity") {
  REQUIRE(assortativity(star_graph(4)).has_value());
  CHECK(*assortativity(star_graph(4)) == doctest::Approx(-1.0));
  CHECK_FALSE(assortativity(complete_graph(4)).has_value());
  CHECK_FALSE(assortativity(cycle_graph(4)).has_value());
  CHECK_THROWS_AS(assortativity(Graph(3)), InvalidParameter);
}

TEST_CASE("clustering") {
  CHECK(avg_clustering(complete_graph(3)) == doctest::Approx(1.0));
  CHECK(avg_clustering(path_graph(3)) == doctest::Approx(0.0));
  Graph g = complete_graph(4);
  g.remove_edge(0, 1);
  // Nodes 0 and 1 close their only pair; 2 and 3 close two of three.
  CHECK(avg_clustering(g) == doctest::Approx(5.0 / 6.0));
  CHECK(local_clustering(g, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(local_clustering(g, 0) == doctest::Approx(1.0));
}

TEST_CASE("eigenvector centrality") {
  const auto k4 = eigenvector_centrality(complete_graph(4));
  for (int i = 0; i < 4; ++i) CHECK(k4(i) == doctest::Approx(0.5));
  CHECK(max_eigenvector_centrality(star_graph(5)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(max_eigenvector_centrality(path_graph(2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(eigenvector_centrality(cycle_graph(6)).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(eigenvector_centrality(path_graph(40), 1e-14, 2), ConvergenceError);
}

TEST_CASE("max eigenvector centrality on a nearly degenerate spectrum") {
  // A rewired SHM tree whose two top eigenvalues differ by about 4e-5: far
  // more than 1e5 power steps would be needed.
  const Graph g = shm_generate(2, 1.0, 3, 5242883);
  CHECK_THROWS_AS(eigenvector_centrality(g), ConvergenceError);
  CHECK(max_eigenvector_centrality(g) == doctest::Approx(oracle::max_eigenvector_entry(g)));
  CHECK(metric_suite(g).max_eigenvector_centrality > 0.0);
}

TEST_CASE("degree skewness") {
  CHECK_FALSE(degree_skewness(cycle_graph(5)).has_value());
  CHECK_FALSE(degree_skewness(complete_graph(5)).has_value());
  CHECK(*degree_skewness(star_graph(4)) == doctest::Approx(0.75 / std::pow(0.75, 1.5)));
  double ref = 0.0;
  REQUIRE(oracle::degree_skewness(path_graph(3), ref));
  CHECK(*degree_skewness(path_graph(3)) == doctest::Approx(ref));
  CHECK(ref == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("metric_suite special graphs") {
  const auto k4 = metric_suite(complete_graph(4));
  CHECK(k4.norm_max_degree == doctest::Approx(1.0));
  CHECK(k4.avg_clustering == doctest::Approx(1.0));
  CHECK(k4.norm_diameter == doctest::Approx(1.0 / std::log(4.0)));
  CHECK_FALSE(k4.assortativity.has_value());

  const auto p5 = metric_suite(path_graph(5));
  CHECK(p5.norm_diameter == doctest::Approx(4.0 / std::log(5.0)));
  CHECK(p5.avg_clustering == 0.0);
  CHECK(p5.norm_avg_path_length == doctest::Approx(2.0 / std::log(5.0)));

  const int d[] = {3, 3};
  const Graph grid = grid_graph(d);
  double ref = 0.0;
  REQUIRE(oracle::assortativity(grid, ref));
  const auto g3 = metric_suite(grid);
  REQUIRE(g3.assortativity.has_value());
  CHECK(*g3.assortativity == doctest::Approx(ref).epsilon(1e-9));
  CHECK(g3.edges == 12);

  CHECK_THROWS_AS(metric_suite(path_graph(2)), InvalidParameter);
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(metric_suite(split), DisconnectedGraph);
}

TEST_CASE("metric_suite agrees with brute force on all connected graphs up to 6 nodes") {
  for (int n = 3; n <= 6; ++n) {
    for (const Graph& g : oracle::connected_graphs(n)) {
      const auto rec = metric_suite(g);
      const auto d = oracle::floyd_warshall(g);
      const double ln = std::log(static_cast<double>(n));
      CHECK(rec.diameter == static_cast<std::uint32_t>(oracle::max_distance(d)));
      CHECK(rec.norm_avg_path_length == doctest::Approx(oracle::mean_distance(d) / ln));
      CHECK(rec.avg_clustering == doctest::Approx(oracle::avg_clustering(g)));
      CHECK(rec.max_eigenvector_centrality ==
            doctest::Approx(oracle::max_eigenvector_entry(g)).epsilon(1e-7));
      double r = 0.0;
      CHECK(rec.assortativity.has_value() == oracle::assortativity(g, r));
      if (rec.assortativity) CHECK(*rec.assortativity == doctest::Approx(r));
      double s = 0.0;
      CHECK(rec.degree_skewness.has_value() == oracle::degree_skewness(g, s));
      if (rec.degree_skewness) CHECK(*rec.degree_skewness == doctest::Approx(s));
    }
  }
}

TEST_CASE("metric CSV") {
  std::ostringstream out;
  write_metric_csv(out, metric_suite(cycle_graph(4)));
  const std::string text = out.str();
  CHECK(text.rfind("n,m_edges,avg_path_length,", 0) == 0);
  // Undefined assortativity and skewness leave empty fields.
  CHECK(text.find(",,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
