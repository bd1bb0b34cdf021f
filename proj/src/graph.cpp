#include "ssein/graph.hpp"

#include <algorithm>
#include <queue>

namespace ssein {

bool BinaryMatrix::symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i))
        return false;
  return true;
}

int BinaryMatrix::count_ones() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Graph Graph::from_matrix(const BinaryMatrix& m) {
  Graph g(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j)
      if (m(i, j) || m(j, i))
        g.add_edge(i, j);
  return g;
}

bool Graph::add_edge(int u, int v) {
  if (u == v || has_edge(u, v))
    return false;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edges_;
  return true;
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : adj_[u])
      if (u < v)
        out.emplace_back(u, v);
  return out;
}

BinaryMatrix Graph::to_matrix() const {
  BinaryMatrix m(vertex_count());
  for (auto [u, v] : edges())
    m.set_symmetric(u, v);
  return m;
}

std::vector<int> connected_components(const Graph& g) {
  std::vector<int> label(g.vertex_count(), -1);
  int next = 0;
  std::queue<int> q;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (label[s] >= 0)
      continue;
    label[s] = next;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u))
        if (label[v] < 0) {
          label[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return label;
}

} // namespace ssein
