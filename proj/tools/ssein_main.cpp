#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ssein/error.hpp"
#include "ssein/ingest.hpp"
#include "ssein/pipeline.hpp"
#include "ssein/synth_pdb.hpp"

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRejected = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_st("ssein");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("SSEIN_LOG");
  const std::string level = env ? env : "info";
  if (level == "off")
    spdlog::set_level(spdlog::level::off);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else
    throw ssein::ParseError("SSEIN_LOG must be off, info or debug, got '" + level + "'", 0);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw ssein::Error("cannot write " + path.string());
}

struct PredictFlags {
  std::string pdb, family, config, out;
  double threshold = 0, tolerance = 0;
  std::uint64_t seed = 0;
  int pop = 0, archive = 0, generations = 0, simulations = 0;
};

struct BenchmarkFlags {
  std::string manifest, out = ".";
  std::uint64_t seed = 0;
  int threads = 0;
};

struct SynthFlags {
  std::string out;
  int members = 6, jitter = 1;
  std::uint64_t seed = 1;
};

int run_predict_command(CLI::App& cmd, const PredictFlags& f) {
  ssein::RunConfig config;
  if (!f.config.empty())
    ssein::apply_config_text(config, ssein::read_text_file(f.config));
  // Flags win over the config file.
  if (cmd.count("--pdb"))
    config.pdb_path = f.pdb;
  if (cmd.count("--family"))
    config.family_index_path = f.family;
  if (cmd.count("--out"))
    config.output_dir = f.out;
  if (cmd.count("--threshold"))
    config.threshold = f.threshold;
  if (cmd.count("--tolerance"))
    config.tolerance = f.tolerance;
  if (cmd.count("--seed"))
    config.seed = f.seed;
  if (cmd.count("--pop"))
    config.ga.population_size = f.pop;
  if (cmd.count("--archive"))
    config.ga.archive_size = f.archive;
  if (cmd.count("--generations"))
    config.ga.generations = f.generations;
  if (cmd.count("--simulations"))
    config.simulations = f.simulations;
  if (config.pdb_path.empty() || config.family_index_path.empty())
    throw ssein::ParseError("--pdb and --family are required (directly or via --config)", 0);

  const ssein::RunReport report = ssein::run_predict(config);
  ssein::write_report_files(report);
  std::cout << report.protein_id << ": " << (report.accepted ? "accepted" : "rejected") << " after "
            << report.attempts << " attempt(s), matrix error " << report.matrix_error_rate << ", score "
            << report.shortcut_score << "\n";
  return report.accepted ? kExitAccepted : kExitRejected;
}

int run_benchmark_command(CLI::App& cmd, const BenchmarkFlags& f) {
  ssein::BenchmarkManifest manifest = ssein::parse_manifest(ssein::read_text_file(f.manifest));
  if (cmd.count("--seed"))
    manifest.seed = f.seed;
  if (cmd.count("--threads"))
    manifest.threads = f.threads;
  const ssein::BenchmarkResult result = ssein::run_benchmark(manifest);
  std::filesystem::create_directories(f.out);
  const std::string table = ssein::benchmark_table_tsv(result);
  write_file(std::filesystem::path(f.out) / "benchmark_table.tsv", table);
  write_file(std::filesystem::path(f.out) / "figure3_curve.csv", ssein::figure3_curve_csv(result));
  std::cout << table;
  return kExitAccepted;
}

int run_synth_command(const SynthFlags& f) {
  ssein::Rng rng(f.seed);
  auto index = ssein::write_synthetic_family(f.out, ssein::FoldSpec{}, f.members, f.jitter, rng);
  std::cout << index.string() << "\n";
  return kExitAccepted;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predicts SSE interaction networks from a protein structure and its family"};
  app.require_subcommand(1);

  PredictFlags pf;
  auto* predict = app.add_subcommand("predict", "Predict the SSE incidence matrix and shortcut edges of one protein");
  predict->add_option("--pdb", pf.pdb, "Query PDB file");
  predict->add_option("--family", pf.family, "Family index (protein_id, path, sse_count per line)");
  predict->add_option("--config", pf.config, "INI config with [run], [ga] and [aco] sections");
  predict->add_option("--threshold", pf.threshold, "Contact distance threshold in Angstroms (default 7.0)");
  predict->add_option("--tolerance", pf.tolerance, "Relative topological tolerance (default 0.2)");
  predict->add_option("--seed", pf.seed, "Master seed (default 1)");
  predict->add_option("--pop", pf.pop, "GA population size (default 50)");
  predict->add_option("--archive", pf.archive, "GA archive size (default 20)");
  predict->add_option("--generations", pf.generations, "GA generations (default 100)");
  predict->add_option("--simulations", pf.simulations, "Maximum ACO attempts (default 150)");
  predict->add_option("--out", pf.out, "Output directory (default .)");

  BenchmarkFlags bf;
  auto* benchmark = app.add_subcommand("benchmark", "Score the pipeline on planted synthetic instances");
  benchmark->add_option("--manifest", bf.manifest, "Benchmark manifest (INI)")->required();
  benchmark->add_option("--seed", bf.seed, "Override the manifest seed");
  benchmark->add_option("--threads", bf.threads, "Simulation workers, 0 = one per hardware thread");
  benchmark->add_option("--out", bf.out, "Output directory (default .)");

  SynthFlags sf;
  auto* synth = app.add_subcommand("synth", "Write a synthetic four-SSE protein family as PDB files");
  synth->add_option("--out", sf.out, "Output directory")->required();
  synth->add_option("--members", sf.members, "Number of family members (default 6)");
  synth->add_option("--jitter", sf.jitter, "Maximum SSE length change per member (default 1)");
  synth->add_option("--seed", sf.seed, "Seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    setup_logging();
    if (*predict)
      return run_predict_command(*predict, pf);
    if (*benchmark)
      return run_benchmark_command(*benchmark, bf);
    return run_synth_command(sf);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
