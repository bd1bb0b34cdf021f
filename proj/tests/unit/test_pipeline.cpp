#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssein/error.hpp"
#include "ssein/pipeline.hpp"
#include "ssein/synth_pdb.hpp"
#include "support.hpp"

using namespace ssein;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ssein_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallManifest = R"([benchmark]
seed = 3
simulations = 20
threads = 2

[instance.tiny]
class = synthetic
sse_sizes = 8,10,9,7
shortcuts_per_pair = 4
templates = 6
boost_fraction = 1.0
seed = 11
)";

} // namespace

TEST_CASE("run config sections") {
  RunConfig c;
  apply_config_text(c, "[run]\nthreshold = 6.5\nseed = 9\n[ga]\npopulation = 30\nk = 4\n[aco]\nalpha = 2\n");
  CHECK(c.threshold == 6.5);
  CHECK(c.seed == 9);
  CHECK(c.ga.population_size == 30);
  CHECK(c.ga.k == 4);
  CHECK(c.aco.alpha == 2);
  CHECK(c.tolerance == 0.2);

  RunConfig d;
  CHECK_THROWS_AS(apply_config_text(d, "[run]\ncolour = red\n"), ParseError);
  CHECK_THROWS_AS(apply_config_text(d, "[other]\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(apply_config_text(d, "[aco]\nrho = fast\n"), ParseError);
  RunConfig e;
  e.tolerance = 1.5;
  CHECK_THROWS_AS(e.validate(), DomainError);
}

TEST_CASE("benchmark manifest") {
  BenchmarkManifest m = parse_manifest(kSmallManifest);
  CHECK(m.seed == 3);
  CHECK(m.threads == 2);
  REQUIRE(m.instances.size() == 1);
  CHECK(m.instances[0].name == "tiny");
  CHECK(m.instances[0].spec.sse_sizes == std::vector<int>{8, 10, 9, 7});
  CHECK(m.instances[0].seed == 11u);
  CHECK_THROWS_AS(parse_manifest("[benchmark]\nseed = 1\n"), EmptyInputError);
  CHECK_THROWS_AS(parse_manifest("[instance.x]\nsse_sizes = 8,8,8\n"), DomainError);
  CHECK_THROWS_AS(parse_manifest("[instance.x]\nflavour = 1\n"), ParseError);
}

TEST_CASE("benchmark table and curve") {
  BenchmarkResult r = run_benchmark(parse_manifest(kSmallManifest));
  REQUIRE(r.rows.size() == 1);
  const auto& row = r.rows[0];
  CHECK(row.simulations.size() == 20);
  CHECK(row.protein_size == 34);
  for (const auto& s : row.simulations) {
    CHECK(s.score >= 0);
    CHECK(s.score <= 1);
    CHECK(s.local_recovery >= s.score);
  }
  CHECK(row.score_median >= 0.8);
  CHECK(row.ac == doctest::Approx(1.0));

  std::string tsv = benchmark_table_tsv(r);
  CHECK(tsv.rfind(std::string(kBenchmarkTableHeader) + "\n", 0) == 0);
  std::istringstream lines(tsv);
  std::string header, data;
  std::getline(lines, header);
  std::getline(lines, data);
  CHECK(std::count(data.begin(), data.end(), '\t') == std::count(header.begin(), header.end(), '\t'));
  std::string csv = figure3_curve_csv(r);
  CHECK(csv.rfind(std::string(kCurveHeader) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("benchmark does not depend on the worker count") {
  BenchmarkManifest one = parse_manifest(kSmallManifest), many = one;
  one.threads = 1;
  many.threads = 3;
  CHECK(benchmark_table_tsv(run_benchmark(one)) == benchmark_table_tsv(run_benchmark(many)));
}

TEST_CASE("planted shortcuts are recovered with full boost") {
  SyntheticSpec spec;
  std::vector<double> scores;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    SyntheticInstance inst = make_synthetic_instance(spec, rng);
    EdgeBudgetEstimate budget = estimate_edge_budget(inst.sse_sizes, inst.templates);
    CHECK(budget.e_total == static_cast<long>(inst.truth.size()));
    AcoStageResult stage = run_aco_stage(inst.sse_sizes, inst.sse.truth, inst.templates, budget.e_total, AcoParams{},
                                         Rng(seed + 100));
    CHECK(stage.final_edges.size() <= static_cast<std::size_t>(budget.e_total));
    scores.push_back(shortcut_score(stage.final_edges, inst.truth));
  }
  CHECK(median(scores) >= 0.8);
}

TEST_CASE("score and summary helpers") {
  std::vector<ShortcutEdge> truth{{0, 1, 1, 1}, {0, 2, 1, 2}};
  std::vector<ShortcutEdge> pred{{0, 1, 1, 1}, {0, 3, 1, 3}};
  CHECK(shortcut_score(pred, truth) == 0.5);
  CHECK(shortcut_score(std::span<const ShortcutEdge>{}, std::span<const ShortcutEdge>{}) == 1.0);
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(sample_sd(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("prediction on a generated 3D family") {
  fs::path dir = scratch_dir("family");
  Rng rng(5);
  fs::path index = write_synthetic_family(dir, FoldSpec{}, 5, 1, rng);
  RunConfig c;
  c.pdb_path = dir / "m1.pdb";
  c.family_index_path = index;
  c.output_dir = dir / "out";
  c.simulations = 5;
  c.ga.generations = 40;
  RunReport r = run_predict(c);
  CHECK(r.sse_sizes.size() == 4);
  CHECK(r.template_count == 5);
  CHECK(r.matrix_error_rate == 0.0);
  CHECK(r.attempts >= 1);
  CHECK(r.attempts <= 5);
  CHECK(r.shortcut_score >= 0);
  CHECK(r.shortcut_score <= 1);

  write_report_files(r);
  for (const char* f : {"report.json", "sse_incidence.tsv", "shortcut_edges.tsv", "archive.tsv", "timings.json"})
    CHECK(fs::exists(c.output_dir / f));
  std::string text = read_text(c.output_dir / "report.json");
  CHECK(text == report_json(r));
  auto j = nlohmann::ordered_json::parse(text);
  CHECK(j["protein"]["sse_count"] == 4);
  CHECK(j["verdict"] == (r.accepted ? "accepted" : "rejected"));
  CHECK(j.dump(2) + "\n" == text);
  CHECK(j.find("timings") == j.end());

  RunReport again = run_predict(c);
  CHECK(report_json(again) == text);
}

TEST_CASE("a query without matching family members is rejected") {
  fs::path dir = scratch_dir("mismatch");
  Rng rng(9);
  fs::path index = write_synthetic_family(dir, FoldSpec{}, 2, 0, rng);
  std::string pdb = test::helix_line(1, 1, 4) + test::helix_line(2, 6, 9);
  for (int i = 1; i <= 10; ++i)
    pdb += test::atom_line(i, "CA", "ALA", 'A', i, {3.8 * i, 0, 0});
  std::ofstream(dir / "two.pdb") << pdb;
  RunConfig c;
  c.pdb_path = dir / "two.pdb";
  c.family_index_path = index;
  c.output_dir = dir / "out";
  CHECK_THROWS_AS(run_predict(c), EmptyInputError);
}

TEST_CASE("shipped planted 8-SSE instance matches its generator") {
  fs::path dir = fs::path(SSEIN_SHIPPED_DATA_DIR) / "planted_8sse";
  Rng rng(8);
  PlantedSseInstance inst = planted_matching_instance(4, rng);
  CHECK(read_text(dir / "context.tsv") == sse_context_tsv(inst.ctx));
  CHECK(read_text(dir / "truth.tsv") == incidence_tsv(inst.truth));
  SseContext back = parse_sse_context(read_text(dir / "context.tsv"));
  REQUIRE(back.size() == 8);
  for (int i = 0; i < 8; ++i)
    CHECK(back.sse[i] == inst.ctx.sse[i]);
}

TEST_CASE("shipped manifests parse") {
  fs::path dir = fs::path(SSEIN_SHIPPED_DATA_DIR) / "benchmarks";
  BenchmarkManifest sweep = parse_manifest(read_text(dir / "recovery_sweep.ini"));
  CHECK(sweep.instances.size() == 6);
  for (const auto& inst : sweep.instances) {
    CHECK(inst.seed == 42u);
    CHECK(inst.spec.sse_sizes.size() == 8);
  }
  CHECK(parse_manifest(read_text(dir / "default.ini")).instances.size() == 4);
  RunConfig c;
  CHECK_NOTHROW(apply_config_text(c, read_text(fs::path(SSEIN_SHIPPED_DATA_DIR) / "example.ini")));
}
