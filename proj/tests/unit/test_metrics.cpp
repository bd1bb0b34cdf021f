#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ssein/error.hpp"
#include "ssein/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ssein;
using namespace test;

namespace {

Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges)
    g.add_edge(u, v);
  return g;
}

double modularity_oracle(const Graph& g, const std::vector<int>& c) {
  const int n = g.vertex_count();
  const double m = g.edge_count();
  BinaryMatrix a = g.to_matrix();
  double q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (c[i] == c[j])
        q += a(i, j) - static_cast<double>(g.degree(i)) * g.degree(j) / (2 * m);
  return q / (2 * m);
}

} // namespace

TEST_CASE("path graph on four vertices") {
  TopologicalProfile p = topological_profile(from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(p.diameter == 3);
  CHECK(p.mean_degree == 1.5);
  CHECK(p.clustering_coeff == 0);
  CHECK(p.char_path_length == doctest::Approx(20.0 / 12.0));
}

TEST_CASE("complete graph K4") {
  TopologicalProfile p = topological_profile(from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(p.diameter == 1);
  CHECK(p.char_path_length == 1);
  CHECK(p.clustering_coeff == 1);
  CHECK(p.mean_degree == 3);
}

TEST_CASE("disconnected graph uses the largest component for path quantities") {
  // Triangle {0,1,2} and path {3,4,5,6}.
  Graph g = from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6}});
  TopologicalProfile p = topological_profile(g);
  CHECK(p.diameter == 3);
  CHECK(p.char_path_length == doctest::Approx(20.0 / 12.0));
  CHECK(p.clustering_coeff == doctest::Approx(3.0 / 7.0));
  CHECK(p.mean_degree == doctest::Approx(12.0 / 7.0));
  CHECK_THROWS_AS(topological_profile(Graph(0)), EmptyInputError);
  TopologicalProfile single = topological_profile(Graph(1));
  CHECK(single.diameter == 0);
  CHECK(single.char_path_length == 0);
}

TEST_CASE("profiles match the Floyd-Warshall and triangle oracles exactly") {
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng.index(50));
    Graph g = test::random_graph(n, 0.02 + 0.3 * rng.uniform(), rng);
    TopologicalProfile got = topological_profile(g), want = profile_oracle(g);
    CHECK(got.diameter == want.diameter);
    CHECK(got.char_path_length == want.char_path_length);
    CHECK(got.mean_degree == want.mean_degree);
    CHECK(got.clustering_coeff == want.clustering_coeff);
  }
}

TEST_CASE("profile is invariant under vertex relabelling") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + static_cast<int>(rng.index(30));
    Graph g = test::random_graph(n, 0.2, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.index(i + 1)]);
    Graph h(n);
    for (auto [u, v] : g.edges())
      h.add_edge(perm[u], perm[v]);
    TopologicalProfile a = topological_profile(g), b = topological_profile(h);
    CHECK(a.diameter == b.diameter);
    CHECK(a.mean_degree == b.mean_degree);
    CHECK(a.clustering_coeff == doctest::Approx(b.clustering_coeff).epsilon(1e-12));
    // Ties between equally large components may pick a different component.
    std::vector<int> la = connected_components(g);
    std::vector<int> sizes(n, 0);
    for (int l : la)
      ++sizes[l];
    std::sort(sizes.rbegin(), sizes.rend());
    if (sizes.size() < 2 || sizes[0] != sizes[1])
      CHECK(a.char_path_length == doctest::Approx(b.char_path_length).epsilon(1e-12));
  }
}

TEST_CASE("compatibility tolerance is per field and inclusive") {
  TopologicalProfile t{10, 3, 4, 0.5};
  CHECK(is_compatible(t, t, 0.2));
  TopologicalProfile off = t;
  off.mean_degree = 5; // 25 %
  CHECK_FALSE(is_compatible(off, t, 0.2));
  TopologicalProfile edge{12, 3.6, 4.8, 0.6}; // every field exactly 20 %
  CHECK(is_compatible(edge, t, 0.2));
  TopologicalProfile below{8, 2.4, 3.2, 0.4};
  CHECK(is_compatible(below, t, 0.2));
  CHECK(profile_deviation(off, t) == doctest::Approx(0.25));
  CHECK(profile_deviation(t, t) == 0);
  TopologicalProfile half = t;
  half.diameter = 15;
  CHECK_FALSE(is_compatible(half, t, 0.2));
}

TEST_CASE("zero template field compares absolutely") {
  TopologicalProfile t{3, 2, 2, 0};
  TopologicalProfile c = t;
  c.clustering_coeff = 0.1;
  CHECK(profile_deviation(c, t) == doctest::Approx(0.1));
  CHECK(is_compatible(c, t, 0.2));
  c.clustering_coeff = 0.3;
  CHECK_FALSE(is_compatible(c, t, 0.2));
}

TEST_CASE("a profile is compatible with itself at any positive tolerance") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    TopologicalProfile p{rng.uniform() * 10, rng.uniform() * 5, rng.uniform() * 6, rng.uniform()};
    for (double tol : {1e-9, 0.01, 0.2, 3.0})
      CHECK(is_compatible(p, p, tol));
  }
}

TEST_CASE("mean profile is the element-wise mean") {
  std::vector<TopologicalProfile> ps{{2, 1, 3, 0.5}, {4, 2, 5, 0.25}};
  TopologicalProfile m = mean_profile(ps);
  CHECK(m == TopologicalProfile{3, 1.5, 4, 0.375});
  CHECK_THROWS_AS(mean_profile(std::span<const TopologicalProfile>{}), EmptyInputError);
}

TEST_CASE("modularity examples") {
  Graph tri = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  std::vector<int> split{0, 0, 0, 1, 1, 1};
  CHECK(modularity(tri, split) == doctest::Approx(0.5).epsilon(1e-15));
  std::vector<int> one(6, 0);
  CHECK(modularity(tri, one) == doctest::Approx(0.0).scale(1));
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Graph g = test::random_graph(12, 0.3, rng);
    CHECK(std::abs(modularity(g, std::vector<int>(12, 0))) < 1e-12);
  }
  CHECK_THROWS_AS(modularity(tri, std::vector<int>{0, 1}), DimensionError);
}

TEST_CASE("modularity matches the pairwise summation oracle") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.index(30));
    Graph g = test::random_graph(n, 0.25, rng);
    if (g.edge_count() == 0)
      continue;
    std::vector<int> c(n);
    int k = 1 + static_cast<int>(rng.index(5));
    for (auto& x : c)
      x = static_cast<int>(rng.index(k));
    CHECK(std::abs(modularity(g, c) - modularity_oracle(g, c)) < 1e-12);
  }
}

TEST_CASE("modularity of an edgeless graph is zero") {
  Rng rng(6);
  Graph g(8);
  for (int t = 0; t < 10; ++t) {
    std::vector<int> c(8);
    for (auto& x : c)
      x = static_cast<int>(rng.index(4));
    CHECK(modularity(g, c) == 0.0);
  }
}

TEST_CASE("matrix error rate") {
  BinaryMatrix a(3), b(3);
  a.set_symmetric(0, 2);
  b.set_symmetric(0, 2);
  CHECK(matrix_error_rate(a, b) == 0.0);
  b.set_symmetric(1, 2);
  CHECK(matrix_error_rate(a, b) == doctest::Approx(2.0 / 9.0));
  CHECK_THROWS_AS(matrix_error_rate(a, BinaryMatrix(4)), DimensionError);

  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng.index(12));
    BinaryMatrix x(n), y(n);
    int diff = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bool u = rng.bernoulli(0.4), v = rng.bernoulli(0.4);
        x.set(i, j, u);
        y.set(i, j, v);
        diff += u != v;
      }
    CHECK(matrix_error_rate(x, y) == static_cast<double>(diff) / (n * n));
    CHECK(matrix_error_rate(x, y) == matrix_error_rate(y, x));
    CHECK(matrix_error_rate(x, x) == 0.0);
  }
}

TEST_CASE("prediction accuracy is applied literally") {
  CHECK(prediction_accuracy(100, 100) == 1.0);
  CHECK(prediction_accuracy(90, 100) == 0.9);
  CHECK(prediction_accuracy(110, 100) == 0.9);
  CHECK(prediction_accuracy(250, 100) == -0.5);
  CHECK_THROWS_AS(prediction_accuracy(5, 0), DomainError);
}
