#pragma once

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ssein/graph.hpp"
#include "ssein/ingest.hpp"

namespace ssein {

constexpr double kDefaultContactThreshold = 7.0; // Angstroms

// Residue contact map; indices are 0-based residue positions.
struct ContactMap {
  BinaryMatrix bits;

  int n() const { return bits.size(); }
  bool operator()(int i, int j) const { return bits(i, j); }
};

// Pairs whose CA atoms are strictly closer than `threshold`.
ContactMap build_contact_map(const ProteinStructure& protein, double threshold = kDefaultContactThreshold);

// `i<TAB>j` lines, 1-based, i < j.
std::string contact_map_tsv(const ContactMap& map);

enum class EdgeKind { Intra, Inter };

struct SseEdge {
  int u = 0; // 1-based residue positions, u < v
  int v = 0;
  EdgeKind kind = EdgeKind::Intra;

  bool operator==(const SseEdge&) const = default;
  auto operator<=>(const SseEdge& o) const { return std::tie(u, v) <=> std::tie(o.u, o.v); }
};

// Subgraph of the contact map induced by residues inside an SSE. Inter-SSE
// edges are the shortcut edges.
struct SseInGraph {
  std::vector<int> vertices; // 1-based residue positions, ascending
  std::vector<SseEdge> edges; // sorted by (u, v)
  std::map<int, int> sse_of;  // residue position -> sse_id

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  std::vector<SseEdge> shortcuts() const;
  // Graph over vertices renumbered 0..vertex_count()-1 in ascending order.
  Graph to_graph() const;
};

SseInGraph induce_sse_in(const ContactMap& map, const ProteinStructure& protein);

// SSE-level adjacency: SSEs a and b (0-based positions in sse_list) are
// adjacent when at least one shortcut edge joins them.
BinaryMatrix sse_adjacency(const SseInGraph& graph, const ProteinStructure& protein);

} // namespace ssein
