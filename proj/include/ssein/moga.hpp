#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssein/geometry.hpp"
#include "ssein/graph.hpp"
#include "ssein/ingest.hpp"
#include "ssein/metrics.hpp"
#include "ssein/rng.hpp"

namespace ssein {

// Locus-based adjacency encoding over M SSE nodes. Gene i (0-based slot)
// holds a 1-based allele j, read as an undirected link between nodes i+1
// and j. Comparison is lexicographic over genes.
struct Chromosome {
  std::vector<int> genes;

  int size() const { return static_cast<int>(genes.size()); }
  bool operator==(const Chromosome&) const = default;
  auto operator<=>(const Chromosome&) const = default;
};

// Throws DomainError when empty or an allele is outside 1..M.
void validate_chromosome(const Chromosome& c);

// Every gene pointing at its own slot.
Chromosome identity_chromosome(int m);

inline constexpr double kSentinelObjective = std::numeric_limits<double>::max();

// All three objectives are minimized.
struct ObjectiveVector {
  double distance = 0;
  double torsion = 0;
  double hydro = 0;

  static ObjectiveVector sentinel() { return {kSentinelObjective, kSentinelObjective, kSentinelObjective}; }
  bool is_sentinel() const { return distance == kSentinelObjective; }
  double operator[](int i) const { return i == 0 ? distance : i == 1 ? torsion : hydro; }
  bool operator==(const ObjectiveVector&) const = default;
};

inline constexpr int kObjectiveCount = 3;

// Per-SSE summary used by the objectives.
struct SseFeatures {
  Vec3 centroid;          // mean CA position
  double mean_phi = 0;    // circular mean, degrees
  double mean_psi = 0;
  double mean_hydro = 0;  // Kyte-Doolittle

  bool operator==(const SseFeatures&) const = default;
};

struct SseContext {
  std::vector<SseFeatures> sse; // in sse_list order

  int size() const { return static_cast<int>(sse.size()); }
};

// Residues without an angle do not contribute to that angle's mean; an SSE
// with no angle at all gets 0.
SseContext make_sse_context(const ProteinStructure& protein);

// TSV: header then `sse<TAB>cx<TAB>cy<TAB>cz<TAB>phi<TAB>psi<TAB>hydro` rows.
std::string sse_context_tsv(const SseContext& ctx);
SseContext parse_sse_context(std::string_view text);

struct Clustering {
  std::vector<int> assignment; // node -> cluster id, ids numbered by first node
  BinaryMatrix incidence;      // symmetrized gene links, zero diagonal
  int cluster_count = 0;

  bool operator==(const Clustering&) const = default;
};

Clustering decode(const Chromosome& c);

// Mean over the gene-implied links (i, g_i), i != g_i: centroid distance,
// wrapped angular difference (|dphi| + |dpsi|) / 2, and -h_i * h_j. No links
// gives ObjectiveVector::sentinel().
ObjectiveVector evaluate_objectives(const Chromosome& c, const SseContext& ctx);

// Angular difference folded into [0, 180].
double wrapped_angle_difference(double a, double b);

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// SPEA2 raw fitness: sum of the strengths of every dominator.
std::vector<double> strength_ranks(std::span<const ObjectiveVector> pool);

struct DensityResult {
  std::vector<double> sigma; // distance to the k-th nearest neighbour
  std::vector<double> m;     // 1 / (sigma + 1)
};

// Distances in min-max normalized objective space. Sentinel entries sit at
// normalized coordinate 1 and are excluded from the range. Throws DomainError
// unless 1 <= k < |pool|.
DensityResult density(std::span<const ObjectiveVector> pool, int k);

struct Individual {
  Chromosome chromosome;
  ObjectiveVector objectives;
  Clustering decoded;
  double raw_rank = 0;
  double sigma_k = 0;
  double density = 1;
  double fitness = 1;
};

Individual make_individual(Chromosome c, const SseContext& ctx);

// Fills raw_rank, sigma_k, density and fitness = raw_rank + density.
void assign_fitness(std::span<Individual> pool, int k);

// Topological profile of the graph given by a clustering's incidence matrix.
TopologicalProfile clustering_profile(const Clustering& c);

// Copies the non-dominated members, truncates by profile deviation from
// `family_profile` when over capacity, or fills with the best dominated
// members when under capacity. Fitness must already be assigned.
std::vector<Individual> environmental_selection(std::span<const Individual> pool, int archive_size,
                                                const TopologicalProfile& family_profile);

// Index of the winner of a binary tournament with replacement.
std::size_t binary_tournament(std::span<const Individual> archive, Rng& rng);

// Gene i from p1 where mask[i] == 0, from p2 otherwise.
Chromosome uniform_crossover(const Chromosome& p1, const Chromosome& p2, std::span<const std::uint8_t> mask);

// Each gene, with probability `rate`, moves to a uniform allele other than its
// current one. Chromosomes of length 1 are returned unchanged.
Chromosome mutate(Chromosome c, double rate, Rng& rng);

struct GaParams {
  int population_size = 50;
  int archive_size = 20;
  int generations = 100;
  std::optional<int> k;        // default floor(sqrt(population + archive))
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;  // per gene
  bool tournament_replacement = true;

  int effective_k() const;
  // Throws DomainError on out-of-range values.
  void validate() const;
};

struct MogaResult {
  Chromosome best;
  Clustering clustering;
  double modularity = 0;
  std::vector<Individual> archive;
};

// Fixed generation budget; the returned best is the non-dominated archive
// member whose clustering has the highest modularity over its own incidence
// graph (first in archive order on ties).
MogaResult run_moga(const SseContext& ctx, const GaParams& params, const TopologicalProfile& family_profile, Rng& rng);

// `rank<TAB>fitness<TAB>o_distance<TAB>o_torsion<TAB>o_hydro<TAB>genes` with a
// header row; genes comma-separated.
std::string archive_tsv(std::span<const Individual> archive);

// Synthetic SSE-level instance whose true links form a perfect matching
// (1-2, 3-4, ...). Matched SSEs sit close with identical angles; every other
// pair is far apart with differing angles, so link sets drawn only from the
// matching dominate all others.
struct PlantedSseInstance {
  SseContext ctx;
  BinaryMatrix truth;
  TopologicalProfile family_profile;
};

PlantedSseInstance planted_matching_instance(int pairs, Rng& rng);

} // namespace ssein
