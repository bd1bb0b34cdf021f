#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "ssein/geometry.hpp"
#include "ssein/graph.hpp"
#include "ssein/rng.hpp"

namespace test {

inline std::string atom_line(int serial, const char* atom, const char* res, char chain, int seq, ssein::Vec3 p,
                             char altloc = ' ', char icode = ' ') {
  char buf[96];
  std::snprintf(buf, sizeof buf, "ATOM  %5d  %-3s%c%3s %c%4d%c   %8.3f%8.3f%8.3f  1.00  0.00           C\n", serial,
                atom, altloc, res, chain, seq, icode, p.x, p.y, p.z);
  return buf;
}

inline std::string helix_line(int serial, int first, int last, char chain = 'A') {
  char buf[96];
  std::snprintf(buf, sizeof buf, "HELIX  %3d %3d ALA %c %4d  ALA %c %4d  1%30s %5d\n", serial, serial, chain, first,
                chain, last, "", last - first + 1);
  return buf;
}

inline std::string sheet_line(int strand, int first, int last, char chain = 'A') {
  char buf[96];
  std::snprintf(buf, sizeof buf, "SHEET  %3d %3d%2d ALA %c%4d  ALA %c%4d  0\n", strand, 1, 1, chain, first, chain,
                last);
  return buf;
}

// G(n, p) with edges drawn in (u, v) order.
inline ssein::Graph random_graph(int n, double p, ssein::Rng& rng) {
  ssein::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p))
        g.add_edge(u, v);
  return g;
}

inline ssein::Vec3 random_point(ssein::Rng& rng, double scale) {
  return {scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1)};
}

} // namespace test
