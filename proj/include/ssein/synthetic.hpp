#pragma once

#include <utility>
#include <vector>

#include "ssein/aco.hpp"
#include "ssein/moga.hpp"

namespace ssein {

// Knobs of a planted instance. SSEs are matched in consecutive pairs
// (1-2, 3-4, ...), so the SSE count must be even.
struct SyntheticSpec {
  std::vector<int> sse_sizes{8, 10, 9, 7, 12, 8};
  int shortcuts_per_pair = 4;
  int templates = 6;
  // Fraction of true shortcuts present in every template, rounded up.
  double boost_fraction = 1.0;
  // Residues of one SSE closer than this in sequence are joined by an intra edge.
  int intra_band = 3;

  // Throws DomainError when inconsistent.
  void validate() const;
};

struct SyntheticInstance {
  PlantedSseInstance sse;
  std::vector<int> sse_sizes;
  std::vector<ShortcutEdge> truth;   // sorted
  std::vector<ShortcutEdge> boosted; // sorted, subset of truth
  std::vector<TemplateProtein> templates;
  std::vector<std::pair<int, int>> intra_edges; // packed SSE-residue numbering
  TopologicalProfile residue_profile;           // mean over the templates
};

// True shortcuts of each matched pair form a register-aligned run (parallel
// or antiparallel) at random offsets. Every template carries the boosted
// subset plus random shortcuts on matched pairs up to the true count.
SyntheticInstance make_synthetic_instance(const SyntheticSpec& spec, Rng& rng);

} // namespace ssein
