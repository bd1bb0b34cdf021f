#pragma once

#include <span>

#include "ssein/graph.hpp"

namespace ssein {

// Topological summary of an undirected graph. Path-based quantities are taken
// over the largest connected component so that disconnected graphs stay finite.
struct TopologicalProfile {
  double diameter = 0;
  double char_path_length = 0;
  double mean_degree = 0;
  double clustering_coeff = 0;

  bool operator==(const TopologicalProfile&) const = default;
};

// Throws EmptyInputError for a graph without vertices.
TopologicalProfile topological_profile(const Graph& g);

// Field-wise mean.
TopologicalProfile mean_profile(std::span<const TopologicalProfile> profiles);

// Largest per-field relative deviation |c - t| / t. A zero template field
// falls back to the absolute deviation |c|.
double profile_deviation(const TopologicalProfile& candidate, const TopologicalProfile& reference);

// True when every field deviates from the template by at most `tol`
// (relative, inclusive).
bool is_compatible(const TopologicalProfile& candidate, const TopologicalProfile& reference, double tol);

// Newman-Girvan modularity of a vertex -> cluster labelling.
// Zero for a graph without edges.
double modularity(const Graph& g, std::span<const int> cluster_of);

// Fraction of positions where the two matrices differ, over n*n entries.
double matrix_error_rate(const BinaryMatrix& predicted, const BinaryMatrix& truth);

// AC = 1 - |E_R - E_p| / E_p. Not clamped; negative values are meaningful.
double prediction_accuracy(long e_real, long e_pred);

} // namespace ssein
