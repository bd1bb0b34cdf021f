#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssein/aco.hpp"
#include "ssein/moga.hpp"
#include "ssein/synthetic.hpp"

namespace ssein {

// Local colonies over every linked SSE pair, then the global ranking.
struct AcoStageResult {
  std::vector<std::pair<int, int>> pairs; // linked SSE pairs, a < b
  std::vector<long> pair_budget;
  std::vector<CandidateEdge> candidates;  // E_s
  std::vector<CandidateEdge> final_edges; // at most e_total
};

// Pair p uses rng.stream(p); the global colony uses rng.stream(pairs).
AcoStageResult run_aco_stage(std::span<const int> sse_sizes, const BinaryMatrix& sse_incidence,
                             std::span<const TemplateProtein> templates, long e_total, const AcoParams& params,
                             const Rng& rng);

// |predicted ∩ truth| / |truth|; 1 when truth is empty and nothing was predicted.
double shortcut_score(std::span<const ShortcutEdge> predicted, std::span<const ShortcutEdge> truth);
double shortcut_score(std::span<const CandidateEdge> predicted, std::span<const ShortcutEdge> truth);

struct RunConfig {
  std::filesystem::path pdb_path;
  std::filesystem::path family_index_path;
  std::filesystem::path output_dir = ".";
  double threshold = 7.0;
  double tolerance = 0.2;
  std::uint64_t seed = 1;
  int simulations = 150;
  GaParams ga;
  AcoParams aco;

  // Throws DomainError on out-of-range values.
  void validate() const;
};

// Applies `key = value` lines under [run], [ga] and [aco] headers. Unknown
// sections or keys and malformed values throw ParseError.
void apply_config_text(RunConfig& config, std::string_view text);

struct StageTimings {
  double parse_seconds = 0;
  double moga_seconds = 0;
  double aco_seconds = 0;
};

struct RunReport {
  RunConfig config;
  std::string protein_id;
  int residue_count = 0;
  int dropped_residues = 0;
  std::vector<int> sse_sizes;
  std::vector<int> sse_first_residue;
  int template_count = 0;

  MogaResult moga;
  BinaryMatrix truth_incidence;
  double matrix_error_rate = 0;

  EdgeBudgetEstimate budget;
  long real_shortcuts = 0; // E_R
  std::optional<double> ac;
  AcoStageResult aco;
  double shortcut_score = 0;

  TopologicalProfile sse_family_profile;
  TopologicalProfile family_profile;
  TopologicalProfile built_profile;
  bool accepted = false;
  int attempts = 0;

  StageTimings timings;
};

RunReport run_predict(const RunConfig& config);

// JSON with a fixed key order; timings are left out so equal inputs give
// equal bytes.
std::string report_json(const RunReport& report);
std::string timings_json(const StageTimings& timings);
// M rows of M tab-separated 0/1 values.
std::string incidence_tsv(const BinaryMatrix& m);

// Writes report.json, sse_incidence.tsv, shortcut_edges.tsv, archive.tsv and
// timings.json into config.output_dir, creating it when missing.
void write_report_files(const RunReport& report);

struct BenchmarkInstance {
  std::string name;
  std::string protein_class = "synthetic";
  SyntheticSpec spec;
  std::optional<std::uint64_t> seed; // instance layout seed
};

struct BenchmarkManifest {
  std::uint64_t seed = 1;
  int simulations = 20;
  double tolerance = 0.2;
  int threads = 0; // simulation workers; 0 = one per hardware thread
  GaParams ga;
  AcoParams aco;
  std::vector<BenchmarkInstance> instances;
};

// [benchmark] holds seed, simulations, tolerance and threads; [ga] and [aco] as in the
// run config; every [instance.<name>] section adds one instance with keys
// class, sse_sizes, shortcuts_per_pair, templates, boost_fraction,
// intra_band and seed.
BenchmarkManifest parse_manifest(std::string_view text);

struct SimulationOutcome {
  double local_recovery = 0;
  double score = 0;
  bool accepted = false;
};

struct BenchmarkRow {
  std::string instance;
  std::string protein_class;
  double boost_fraction = 0;
  int templates = 0;
  int protein_size = 0;
  double score_mean = 0;
  double score_median = 0;
  double score_sample_sd = 0;
  double local_recovery_median = 0;
  double ac = 0;
  double matrix_error_rate = 0;
  double acceptance_rate = 0;
  std::vector<SimulationOutcome> simulations;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
};

BenchmarkResult run_benchmark(const BenchmarkManifest& manifest);

inline constexpr std::string_view kBenchmarkTableHeader =
    "instance\tclass\tboost_fraction\ttemplates\tprotein_size\tscore_mean\tscore_median\tscore_sample_sd\t"
    "local_recovery_median\tac\tmatrix_error_rate\tacceptance_rate\tsimulations";
inline constexpr std::string_view kCurveHeader = "instance,boost_fraction,simulation,local_recovery,global_score";

std::string benchmark_table_tsv(const BenchmarkResult& result);
std::string figure3_curve_csv(const BenchmarkResult& result);

double median(std::vector<double> v);
double sample_sd(std::span<const double> v);

} // namespace ssein
