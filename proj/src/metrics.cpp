#include "ssein/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <queue>

#include "ssein/error.hpp"

namespace ssein {

namespace {

// Relative deviations are compared with this slack so that values such as
// 1.2 vs 1.0 at tol 0.2 land on the inclusive side despite rounding.
constexpr double kBoundarySlack = 1e-12;

std::array<double, 4> fields(const TopologicalProfile& p) {
  return {p.diameter, p.char_path_length, p.mean_degree, p.clustering_coeff};
}

double relative_deviation(double c, double t) {
  return t != 0 ? std::abs(c - t) / std::abs(t) : std::abs(c);
}

} // namespace

TopologicalProfile topological_profile(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0)
    throw EmptyInputError("topological profile of an empty graph");

  TopologicalProfile p;
  p.mean_degree = 2.0 * g.edge_count() / n;

  double cc_sum = 0;
  for (int v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    const int d = static_cast<int>(nb.size());
    if (d < 2)
      continue;
    long links = 0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        if (g.has_edge(nb[a], nb[b]))
          ++links;
    cc_sum += static_cast<double>(links) / (d * (d - 1) / 2.0);
  }
  p.clustering_coeff = cc_sum / n;

  // Largest component; ties go to the component holding the smallest vertex.
  auto label = connected_components(g);
  int components = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<int> sizes(components, 0);
  for (int l : label)
    ++sizes[l];
  int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (label[v] == largest)
      members.push_back(v);

  long long hop_sum = 0;
  int diameter = 0;
  std::vector<int> dist(n);
  std::queue<int> q;
  for (int s : members) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      hop_sum += dist[u];
      diameter = std::max(diameter, dist[u]);
      for (int w : g.neighbors(u))
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
  }
  const long long pairs = static_cast<long long>(members.size()) * (members.size() - 1);
  p.diameter = diameter;
  p.char_path_length = pairs > 0 ? static_cast<double>(hop_sum) / pairs : 0.0;
  return p;
}

TopologicalProfile mean_profile(std::span<const TopologicalProfile> profiles) {
  if (profiles.empty())
    throw EmptyInputError("mean of zero profiles");
  TopologicalProfile m;
  for (const auto& p : profiles) {
    m.diameter += p.diameter;
    m.char_path_length += p.char_path_length;
    m.mean_degree += p.mean_degree;
    m.clustering_coeff += p.clustering_coeff;
  }
  const double n = static_cast<double>(profiles.size());
  m.diameter /= n;
  m.char_path_length /= n;
  m.mean_degree /= n;
  m.clustering_coeff /= n;
  return m;
}

double profile_deviation(const TopologicalProfile& candidate, const TopologicalProfile& reference) {
  auto c = fields(candidate);
  auto t = fields(reference);
  double worst = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    worst = std::max(worst, relative_deviation(c[i], t[i]));
  return worst;
}

bool is_compatible(const TopologicalProfile& candidate, const TopologicalProfile& reference, double tol) {
  auto c = fields(candidate);
  auto t = fields(reference);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (relative_deviation(c[i], t[i]) > tol + kBoundarySlack)
      return false;
  return true;
}

double modularity(const Graph& g, std::span<const int> cluster_of) {
  if (static_cast<int>(cluster_of.size()) != g.vertex_count())
    throw DimensionError("cluster labelling does not cover every vertex");
  const double m = g.edge_count();
  if (m == 0)
    return 0.0;
  int clusters = 0;
  for (int c : cluster_of) {
    if (c < 0)
      throw DomainError("negative cluster label");
    clusters = std::max(clusters, c + 1);
  }
  std::vector<double> intra(clusters, 0), degree(clusters, 0);
  for (auto [u, v] : g.edges())
    if (cluster_of[u] == cluster_of[v])
      intra[cluster_of[u]] += 1;
  for (int v = 0; v < g.vertex_count(); ++v)
    degree[cluster_of[v]] += g.degree(v);
  double q = 0;
  for (int c = 0; c < clusters; ++c) {
    double share = degree[c] / (2 * m);
    q += intra[c] / m - share * share;
  }
  return q;
}

double matrix_error_rate(const BinaryMatrix& predicted, const BinaryMatrix& truth) {
  if (predicted.size() != truth.size())
    throw DimensionError("matrix sizes differ: " + std::to_string(predicted.size()) + " vs " +
                         std::to_string(truth.size()));
  const int n = truth.size();
  if (n == 0)
    return 0.0;
  long wrong = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (predicted(i, j) != truth(i, j))
        ++wrong;
  return static_cast<double>(wrong) / (static_cast<double>(n) * n);
}

double prediction_accuracy(long e_real, long e_pred) {
  if (e_pred <= 0)
    throw DomainError("predicted edge count must be positive");
  return 1.0 - static_cast<double>(std::labs(e_real - e_pred)) / static_cast<double>(e_pred);
}

} // namespace ssein
