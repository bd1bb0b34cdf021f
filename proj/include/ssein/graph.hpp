#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ssein {

// Square 0-1 matrix, row-major. Used for contact maps, SSE incidence
// matrices and the matrices compared by the error rate.
class BinaryMatrix {
public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  bool operator()(int i, int j) const { return bits_[index(i, j)] != 0; }
  void set(int i, int j, bool v = true) { bits_[index(i, j)] = v ? 1 : 0; }
  // Sets (i, j) and (j, i).
  void set_symmetric(int i, int j, bool v = true) {
    set(i, j, v);
    set(j, i, v);
  }
  bool symmetric() const;
  int count_ones() const;

  bool operator==(const BinaryMatrix&) const = default;

private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Simple undirected graph over vertices 0..n-1 without self-loops or
// parallel edges.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  static Graph from_matrix(const BinaryMatrix& m);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edges_; }
  // Returns false when the edge already existed or u == v.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  std::vector<std::pair<int, int>> edges() const;
  BinaryMatrix to_matrix() const;

private:
  std::vector<std::vector<int>> adj_;
  int edges_ = 0;
};

// Component label per vertex, labels 0.. in order of first vertex.
std::vector<int> connected_components(const Graph& g);

} // namespace ssein
