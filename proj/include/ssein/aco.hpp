#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssein/graph.hpp"
#include "ssein/ingest.hpp"
#include "ssein/metrics.hpp"
#include "ssein/rng.hpp"

namespace ssein {

struct AcoParams {
  double alpha = 25;
  double beta = 12;
  double rho = 0.7;
  double delta_tau = 4000;
  double e_stop = 2;
  double lambda_min = 0.8;
  int max_iterations = 100;
  // The stopping ratio is not tested before this many iterations.
  int min_iterations = 30;
  double initial_pheromone = 1e12;

  // Throws DomainError on out-of-range values.
  void validate() const;
};

// A shortcut edge between residue `pos_a` of SSE `sse_a` and residue `pos_b`
// of SSE `sse_b`. SSE indices are 0-based positions in the SSE list,
// residue positions are 0-based offsets inside their SSE, sse_a < sse_b.
struct ShortcutEdge {
  int sse_a = 0;
  int pos_a = 0;
  int sse_b = 0;
  int pos_b = 0;

  bool operator==(const ShortcutEdge&) const = default;
  auto operator<=>(const ShortcutEdge&) const = default;
};

// Orders the endpoints so that sse_a < sse_b. Throws DomainError when both
// ends lie in the same SSE.
ShortcutEdge make_shortcut(int sse_a, int pos_a, int sse_b, int pos_b);

// SSE sizes plus shortcut edges of one family member.
struct TemplateProtein {
  std::string id;
  std::vector<int> sse_sizes;
  std::vector<ShortcutEdge> shortcuts;

  int residue_total() const;
  // Shortcut edges per SSE residue.
  double edge_rate() const;
};

TemplateProtein make_template(const ProteinStructure& protein, double threshold);

// Element-wise mean of the size vectors, rounded half up.
std::vector<int> average_family_chromosome(std::span<const std::vector<int>> templates);

// L1 distance between equal-length size vectors.
long allele_distance(std::span<const int> a, std::span<const int> b);

struct EdgeBudgetEstimate {
  long e_total = 0;
  double rate = 0;
  // "template:<id>", "average" or "family-mean".
  std::string basis;
};

// Templates whose SSE count differs from the sequence are ignored; throws
// EmptyInputError when none remain.
EdgeBudgetEstimate estimate_edge_budget(std::span<const int> sequence, std::span<const TemplateProtein> templates);

// Occurrence matrix and normalized weights for one SSE pair, row-major n x m.
struct HeuristicMatrix {
  int n = 0;
  int m = 0;
  std::vector<double> q;
  std::vector<double> s;
  double e = 0;

  double q_at(int i, int j) const { return q[static_cast<std::size_t>(i) * m + j]; }
  double s_at(int i, int j) const { return s[static_cast<std::size_t>(i) * m + j]; }
  double q_total() const;
};

// Q(i, j) = 1 + number of template shortcuts joining relative position i of
// SSE `sse_a` with relative position j of SSE `sse_b`.
std::vector<double> build_occurrence_matrix(std::span<const TemplateProtein> templates, int sse_a, int sse_b, int n,
                                            int m);

// S = e * Q / sum(Q). Throws DomainError for a non-positive total or e < 0.
std::vector<double> edge_probabilities(std::span<const double> q, double e);

HeuristicMatrix make_heuristic(std::vector<double> q, int n, int m, double e);

// Splits `total` proportionally to `mass` with largest-remainder rounding;
// remainder ties go to the lower index.
std::vector<long> allocate_pair_budgets(std::span<const double> mass, long total);

// p_k proportional to tau_k^alpha * s_k^beta, evaluated in log space.
std::vector<double> transition_probabilities(std::span<const double> log_tau, std::span<const double> log_s,
                                             double alpha, double beta);

// Graph walked by the ants. Vertices carry an SSE label; tracked edges join
// different SSEs. Moves between vertices of the same SSE are always allowed
// and use the pinned intra pheromone and the mean tracked weight.
struct ColonyGraph {
  std::vector<int> group;                 // SSE label per vertex
  std::vector<std::pair<int, int>> edges; // tracked inter-SSE edges
  std::vector<double> weight;             // s per tracked edge, > 0

  int vertex_count() const { return static_cast<int>(group.size()); }
  // Throws DomainError when inconsistent.
  void validate() const;
};

// Pheromone is kept as ln(tau) so that long evaporation runs stay positive.
struct PheromoneState {
  std::vector<double> log_tau; // per tracked edge
  double log_tau_intra = 0;    // ln of the mean tracked pheromone

  double tau(std::size_t k) const;
  double tau_intra() const;
};

PheromoneState initial_pheromone(std::size_t edge_count, const AcoParams& params);

// tau <- (1 - rho) tau + n * delta_tau on every tracked edge, then the intra
// pheromone is reset to the mean tracked pheromone.
void update_pheromone(PheromoneState& state, std::span<const int> move_counts, const AcoParams& params);

struct Transition {
  std::vector<int> target;
  std::vector<int> edge; // tracked edge index, -1 for an intra-SSE move
  std::vector<double> p;
};

// Move distribution of an ant sitting on `vertex`. Empty when the vertex has
// no neighbour.
Transition transition_distribution(int vertex, const ColonyGraph& graph, const PheromoneState& state,
                                   const AcoParams& params);

struct ColonyResult {
  PheromoneState state;
  int iterations = 0;
};

ColonyResult run_colony(const ColonyGraph& graph, int ants, const AcoParams& params, Rng& rng);

// (ln tau - min) / (max - min); all ones when every value is equal.
std::vector<double> normalized_pheromone(std::span<const double> log_tau);

struct CandidateEdge {
  ShortcutEdge edge;
  double s = 0;
  double pheromone = 0; // normalized within the colony that produced it
};

// One colony over the complete bipartite graph of an SSE pair with n + m
// ants; returns the edges whose normalized pheromone reaches lambda_min.
std::vector<CandidateEdge> local_aco(int sse_a, int sse_b, const HeuristicMatrix& h, const AcoParams& params, Rng& rng);

// One colony over every candidate with one ant per vertex, then the E_p
// edges with the highest pheromone. All candidates are returned, in edge order,
// when there are no more than E_p. Throws DomainError when e_total <= 0.
std::vector<CandidateEdge> global_aco(std::span<const CandidateEdge> candidates, std::span<const int> sse_sizes,
                                      long e_total, const AcoParams& params, Rng& rng);

// Residue-level network over SSE residues: every intra-SSE edge of `intra`
// plus the shortcut edges. Vertices are numbered SSE by SSE.
Graph build_sse_network(std::span<const int> sse_sizes, std::span<const std::pair<int, int>> intra_edges,
                        std::span<const ShortcutEdge> shortcuts);

bool validate_built_network(const Graph& built, const TopologicalProfile& family_profile, double tol = 0.2);

// `res_i<TAB>res_j<TAB>sse_i<TAB>sse_j<TAB>pheromone_normalized` with a header.
// Residue numbers are first_residue[sse] + pos; SSE numbers are 1-based.
std::string shortcut_edges_tsv(std::span<const CandidateEdge> edges, std::span<const int> first_residue);

// 1-based first residue of each SSE when SSEs are laid out back to back.
std::vector<int> packed_first_residues(std::span<const int> sse_sizes);

} // namespace ssein
