// Prints one PASS/FAIL line per acceptance criterion; exits 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "../unit/oracles.hpp"
#include "../unit/support.hpp"
#include "ssein/aco.hpp"
#include "ssein/error.hpp"
#include "ssein/ingest.hpp"
#include "ssein/metrics.hpp"
#include "ssein/moga.hpp"
#include "ssein/pipeline.hpp"

using namespace ssein;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw ssein::Error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BinaryMatrix parse_incidence(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty())
      continue;
    std::istringstream cells(line);
    std::vector<int> row;
    for (std::string cell; std::getline(cells, cell, '\t');)
      row.push_back(std::stoi(cell));
    rows.push_back(row);
  }
  BinaryMatrix m(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw ssein::ParseError("incidence matrix is not square", static_cast<int>(i) + 1);
    for (std::size_t j = 0; j < rows.size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j] != 0);
  }
  return m;
}

Outcome pareto_oracle() {
  Rng rng(101);
  auto t0 = Clock::now();
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    auto pool = test::random_pool(1 + static_cast<int>(rng.index(20)), rng);
    mismatches += strength_ranks(pool) != test::ranks_oracle(pool);
  }
  double s = elapsed(t0);
  return {mismatches == 0 && s < 2.0, fmt("%d/500 mismatches, %.3f s (limit 2 s)", mismatches, s)};
}

Outcome decode_oracle() {
  Rng rng(202);
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    Chromosome c = test::random_chromosome(1 + static_cast<int>(rng.index(12)), rng);
    mismatches += decode(c).assignment != test::components_oracle(c);
  }
  return {mismatches == 0, fmt("%d/500 mismatches", mismatches)};
}

Outcome crossover_conformance() {
  Chromosome p1{{4, 3, 2, 2, 6, 5, 6}}, p2{{3, 3, 1, 5, 4, 7, 6}};
  std::vector<std::uint8_t> mask{0, 1, 1, 0, 0, 1, 1};
  Chromosome child = uniform_crossover(p1, p2, mask);
  std::string genes;
  for (int g : child.genes)
    genes += std::to_string(g);
  return {child.genes == std::vector<int>{4, 3, 1, 2, 6, 7, 6}, "offspring " + genes};
}

Outcome budget_conservation() {
  Rng rng(303);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> q(1 + rng.index(400));
    for (auto& v : q)
      v = 1e-6 + 1e4 * rng.uniform();
    double e = 1e3 * rng.uniform();
    auto s = edge_probabilities(q, e);
    worst = std::max(worst, std::abs(std::accumulate(s.begin(), s.end(), 0.0) - e));
  }
  return {worst <= 1e-9, fmt("max |sum S - e| = %.3g (limit 1e-9)", worst)};
}

Outcome transition_stability() {
  Rng rng(404);
  AcoParams p; // alpha 25, beta 12, delta_tau 4000
  double worst = 0;
  int non_finite = 0;
  for (int t = 0; t < 10000; ++t) {
    ColonyGraph g;
    int n = 2 + static_cast<int>(rng.index(10));
    for (int v = 0; v < n; ++v)
      g.group.push_back(static_cast<int>(rng.index(3)));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (g.group[u] != g.group[v]) {
          g.edges.push_back({u, v});
          g.weight.push_back(std::exp(-20 * rng.uniform()) * 5);
        }
    if (g.edges.empty())
      continue;
    PheromoneState s = initial_pheromone(g.edges.size(), p);
    int steps = static_cast<int>(rng.index(60));
    std::vector<int> counts(g.edges.size());
    for (int k = 0; k < steps; ++k) {
      for (auto& c : counts)
        c = rng.bernoulli(0.3) ? static_cast<int>(rng.index(5)) : 0;
      update_pheromone(s, counts, p);
    }
    for (int v = 0; v < n; ++v) {
      Transition tr = transition_distribution(v, g, s, p);
      if (tr.p.empty())
        continue;
      double sum = 0;
      for (double x : tr.p) {
        non_finite += !std::isfinite(x);
        sum += x;
      }
      worst = std::max(worst, std::abs(sum - 1));
    }
  }
  return {worst <= 1e-9 && non_finite == 0,
          fmt("max |sum p - 1| = %.3g (limit 1e-9), %d non-finite", worst, non_finite)};
}

Outcome pheromone_dynamics() {
  AcoParams p;
  Rng rng(505);
  ColonyGraph g;
  for (int v = 0; v < 12; ++v)
    g.group.push_back(v / 4);
  for (int u = 0; u < 12; ++u)
    for (int v = u + 1; v < 12; ++v)
      if (g.group[u] != g.group[v]) {
        g.edges.push_back({u, v});
        g.weight.push_back(0.1 + rng.uniform());
      }
  PheromoneState s = initial_pheromone(g.edges.size(), p);
  std::vector<int> ants(12);
  std::iota(ants.begin(), ants.end(), 0);
  double worst = 0;
  for (int step = 0; step < 1000; ++step) {
    std::vector<int> counts(g.edges.size(), 0);
    for (auto& a : ants) {
      Transition tr = transition_distribution(a, g, s, p);
      double u = rng.uniform(), acc = 0;
      std::size_t pick = tr.p.size() - 1;
      for (std::size_t k = 0; k < tr.p.size(); ++k) {
        acc += tr.p[k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      if (tr.edge[pick] >= 0)
        ++counts[tr.edge[pick]];
      a = tr.target[pick];
    }
    update_pheromone(s, counts, p);
    double mean = 0;
    for (std::size_t k = 0; k < g.edges.size(); ++k)
      mean += s.tau(k);
    mean /= static_cast<double>(g.edges.size());
    worst = std::max(worst, std::abs(s.tau_intra() - mean) / mean);
  }
  AcoParams unit;
  unit.initial_pheromone = 1;
  PheromoneState one = initial_pheromone(1, unit);
  update_pheromone(one, std::vector<int>{2}, unit);
  double tau = one.tau(0);
  return {worst <= 1e-9 && std::abs(tau - 8000.3) <= 1e-9 * 8000.3,
          fmt("max relative intra gap %.3g (limit 1e-9), substitution gives %.6f", worst, tau)};
}

Outcome accuracy_values() {
  double a = prediction_accuracy(100, 100), b = prediction_accuracy(90, 100);
  return {a == 1.0 && b == 0.9, fmt("AC(100,100)=%.17g AC(90,100)=%.17g", a, b)};
}

Outcome metrics_oracle() {
  Rng rng(808);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng.index(50));
    Graph g = test::random_graph(n, 0.02 + 0.3 * rng.uniform(), rng);
    mismatches += !(topological_profile(g) == test::profile_oracle(g));
  }
  return {mismatches == 0, fmt("%d/100 mismatches", mismatches)};
}

Outcome ga_quality(const fs::path& data) {
  SseContext ctx = parse_sse_context(slurp(data / "planted_8sse" / "context.tsv"));
  BinaryMatrix truth = parse_incidence(slurp(data / "planted_8sse" / "truth.tsv"));
  TopologicalProfile family = topological_profile(Graph::from_matrix(truth));
  GaParams ga;
  ga.population_size = 20;
  ga.archive_size = 20;
  ga.generations = 100;
  auto t0 = Clock::now();
  std::vector<double> errors;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    MogaResult r = run_moga(ctx, ga, family, rng);
    errors.push_back(matrix_error_rate(r.clustering.incidence, truth));
  }
  double s = elapsed(t0), med = median(errors);
  return {ctx.size() == 8 && med < 0.10 && s < 60.0,
          fmt("%d SSEs, N_p %d, median error %.4f (limit < 0.10), %.2f s (limit 60 s)", ctx.size(),
              ga.population_size, med, s)};
}

Outcome aco_recovery(const fs::path& data) {
  auto t0 = Clock::now();
  BenchmarkManifest m = parse_manifest(slurp(data / "benchmarks" / "recovery_sweep.ini"));
  BenchmarkResult r = run_benchmark(m);
  std::string csv = figure3_curve_csv(r);

  // Median global score per boost fraction, read back from the emitted curve.
  std::map<double, std::vector<double>> by_boost;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string c; std::getline(cells, c, ',');)
      f.push_back(c);
    by_boost[std::stod(f[1])].push_back(std::stod(f[4]));
  }
  bool monotone = true, strong = true;
  double previous = -1;
  std::string curve;
  for (auto& [boost, scores] : by_boost) {
    double med = median(scores);
    monotone = monotone && med >= previous;
    previous = med;
    if (boost >= 0.8 - 1e-12)
      strong = strong && med >= 0.80 && scores.size() >= 20;
    curve += fmt(" %.2f:%.3f", boost, med);
  }
  double s = elapsed(t0);
  return {monotone && strong && by_boost.size() >= 2 && s < 180.0,
          "boost:median" + curve + fmt(", %s, %.1f s (limit 180 s)", monotone ? "monotone" : "not monotone", s)};
}

Outcome determinism(const fs::path& data, const std::string& ssein, const fs::path& work) {
  if (ssein.empty())
    return {false, "no ssein binary given"};
  fs::path a = work / "run_a", b = work / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const fs::path fam = data / "family3d";
  auto cmd = [&](const fs::path& out) {
    return "SSEIN_LOG=off \"" + ssein + "\" predict --pdb \"" + (fam / "m1.pdb").string() + "\" --family \"" +
           (fam / "family.tsv").string() + "\" --seed 7 --simulations 5 --out \"" + out.string() + "\"";
  };
  int ra = std::system(cmd(a).c_str()), rb = std::system(cmd(b).c_str());
  if (!fs::exists(a / "report.json") || !fs::exists(b / "report.json"))
    return {false, fmt("report.json missing (status %d, %d)", ra, rb)};
  std::string ja = slurp(a / "report.json"), jb = slurp(b / "report.json");
  return {ja == jb && !ja.empty(), fmt("%zu bytes, %s", ja.size(), ja == jb ? "identical" : "different")};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string ssein, work = "acceptance_work", data = SSEIN_SHIPPED_DATA_DIR;
  app.add_option("--ssein", ssein, "path to the ssein executable");
  app.add_option("--work", work, "scratch directory");
  app.add_option("--data", data, "shipped data directory");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"strength ranks vs dominance oracle", pareto_oracle},
      {"decode vs connected components", decode_oracle},
      {"uniform crossover example", crossover_conformance},
      {"edge weight budget conservation", budget_conservation},
      {"transition distribution stability", transition_stability},
      {"pheromone update dynamics", pheromone_dynamics},
      {"prediction accuracy values", accuracy_values},
      {"topological profile vs oracles", metrics_oracle},
      {"GA quality on the planted 8-SSE instance", [&] { return ga_quality(data); }},
      {"ACO recovery and curve monotonicity", [&] { return aco_recovery(data); }},
      {"predict determinism", [&] { return determinism(data, ssein, work); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
