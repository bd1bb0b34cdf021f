#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ssein/error.hpp"
#include "ssein/ingest.hpp"
#include "ssein/metrics.hpp"
#include "ssein/moga.hpp"
#include "ssein/pipeline.hpp"
#include "ssein/synth_pdb.hpp"

namespace py = pybind11;
using namespace ssein;

namespace {

py::dict profile_dict(const TopologicalProfile& p) {
  py::dict d;
  d["diameter"] = p.diameter;
  d["char_path_length"] = p.char_path_length;
  d["mean_degree"] = p.mean_degree;
  d["clustering_coeff"] = p.clustering_coeff;
  return d;
}

std::vector<std::vector<int>> matrix_rows(const BinaryMatrix& m) {
  std::vector<std::vector<int>> rows(m.size(), std::vector<int>(m.size()));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      rows[i][j] = m(i, j);
  return rows;
}

} // namespace

PYBIND11_MODULE(_ssein, m) {
  m.doc() = "SSE interaction network prediction core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<EmptyInputError>(m, "EmptyInputError", base.ptr());
  py::register_exception<DuplicateError>(m, "DuplicateError", base.ptr());

  m.def(
      "parse_pdb",
      [](const std::string& text, const std::string& id) {
        ProteinStructure p = parse_pdb(text, id);
        py::dict d;
        d["id"] = p.id;
        d["residue_count"] = p.residue_count();
        d["dropped_residues"] = p.dropped_residues;
        d["sse_sizes"] = p.sse_sizes();
        std::string seq;
        for (const auto& r : p.residues)
          seq += r.code;
        d["sequence"] = seq;
        return d;
      },
      py::arg("text"), py::arg("id") = "");

  m.def(
      "strength_ranks",
      [](const std::vector<std::array<double, 3>>& pool) {
        std::vector<ObjectiveVector> v;
        for (const auto& o : pool)
          v.push_back({o[0], o[1], o[2]});
        return strength_ranks(v);
      },
      py::arg("objectives"), "Raw SPEA2 fitness for minimized 3-objective vectors");

  m.def(
      "decode",
      [](const std::vector<int>& genes) {
        Clustering c = decode(Chromosome{genes});
        return py::make_tuple(c.assignment, c.cluster_count, matrix_rows(c.incidence));
      },
      py::arg("genes"), "Clusters of a locus-based chromosome with 1-based alleles");

  m.def(
      "uniform_crossover",
      [](const std::vector<int>& p1, const std::vector<int>& p2, const std::vector<std::uint8_t>& mask) {
        return uniform_crossover(Chromosome{p1}, Chromosome{p2}, mask).genes;
      },
      py::arg("parent1"), py::arg("parent2"), py::arg("mask"));

  m.def(
      "topological_profile",
      [](int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) {
          if (u < 0 || v < 0 || u >= n || v >= n)
            throw DomainError("edge endpoint outside 0..n-1");
          g.add_edge(u, v);
        }
        return profile_dict(topological_profile(g));
      },
      py::arg("n"), py::arg("edges"));

  m.def("prediction_accuracy", &prediction_accuracy, py::arg("e_real"), py::arg("e_pred"));

  m.def(
      "predict",
      [](const std::filesystem::path& pdb, const std::filesystem::path& family, std::uint64_t seed, int simulations,
         const std::optional<std::filesystem::path>& out, const std::string& config_text) {
        RunConfig config;
        if (!config_text.empty())
          apply_config_text(config, config_text);
        config.pdb_path = pdb;
        config.family_index_path = family;
        config.seed = seed;
        config.simulations = simulations;
        RunReport report;
        {
          py::gil_scoped_release release;
          report = run_predict(config);
        }
        if (out) {
          report.config.output_dir = *out;
          write_report_files(report);
        }
        return report_json(report);
      },
      py::arg("pdb"), py::arg("family"), py::arg("seed") = 1, py::arg("simulations") = 150,
      py::arg("out") = py::none(), py::arg("config") = "",
      "Runs the full pipeline and returns report.json text");

  m.def(
      "benchmark",
      [](const std::string& manifest_text) {
        BenchmarkManifest manifest = parse_manifest(manifest_text);
        BenchmarkResult result;
        {
          py::gil_scoped_release release;
          result = run_benchmark(manifest);
        }
        return py::make_tuple(benchmark_table_tsv(result), figure3_curve_csv(result));
      },
      py::arg("manifest"), "Returns (benchmark_table.tsv, figure3_curve.csv) text");

  m.def(
      "write_synthetic_family",
      [](const std::filesystem::path& dir, int members, int jitter, std::uint64_t seed) {
        Rng rng(seed);
        return write_synthetic_family(dir, FoldSpec{}, members, jitter, rng);
      },
      py::arg("dir"), py::arg("members") = 6, py::arg("jitter") = 1, py::arg("seed") = 1);
}
