#include "ssein/contact.hpp"

#include <algorithm>

#include "ssein/error.hpp"

namespace ssein {

ContactMap build_contact_map(const ProteinStructure& protein, double threshold) {
  if (!(threshold > 0))
    throw DomainError("contact threshold must be positive");
  const int n = protein.residue_count();
  ContactMap map{BinaryMatrix(n)};
  for (int i = 0; i < n; ++i) {
    const Vec3& a = protein.residues[i].ca;
    if (!a.finite())
      throw DomainError("non-finite CA coordinate at residue " + std::to_string(i + 1));
    for (int j = i + 1; j < n; ++j)
      if (distance(a, protein.residues[j].ca) < threshold)
        map.bits.set_symmetric(i, j);
  }
  return map;
}

std::string contact_map_tsv(const ContactMap& map) {
  std::string out;
  for (int i = 0; i < map.n(); ++i)
    for (int j = i + 1; j < map.n(); ++j)
      if (map(i, j))
        out += std::to_string(i + 1) + '\t' + std::to_string(j + 1) + '\n';
  return out;
}

std::vector<SseEdge> SseInGraph::shortcuts() const {
  std::vector<SseEdge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [](const SseEdge& e) { return e.kind == EdgeKind::Inter; });
  return out;
}

Graph SseInGraph::to_graph() const {
  Graph g(vertex_count());
  auto pos = [&](int residue) {
    return static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(), residue) - vertices.begin());
  };
  for (const auto& e : edges)
    g.add_edge(pos(e.u), pos(e.v));
  return g;
}

SseInGraph induce_sse_in(const ContactMap& map, const ProteinStructure& protein) {
  if (map.n() != protein.residue_count())
    throw DimensionError("contact map size " + std::to_string(map.n()) + " does not match residue count " +
                         std::to_string(protein.residue_count()));
  SseInGraph g;
  for (const auto& r : protein.residues)
    if (r.sse_id) {
      g.vertices.push_back(r.index);
      g.sse_of[r.index] = *r.sse_id;
    }
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
      int u = g.vertices[a], v = g.vertices[b];
      if (map(u - 1, v - 1))
        g.edges.push_back({u, v, g.sse_of[u] == g.sse_of[v] ? EdgeKind::Intra : EdgeKind::Inter});
    }
  return g;
}

BinaryMatrix sse_adjacency(const SseInGraph& graph, const ProteinStructure& protein) {
  BinaryMatrix m(protein.sse_count());
  for (const auto& e : graph.edges)
    if (e.kind == EdgeKind::Inter)
      m.set_symmetric(protein.sse_position(graph.sse_of.at(e.u)), protein.sse_position(graph.sse_of.at(e.v)));
  return m;
}

} // namespace ssein
