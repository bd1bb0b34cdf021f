#include "ssein/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "ssein/contact.hpp"
#include "ssein/error.hpp"
#include "text_util.hpp"

namespace ssein {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn(0..n-1) on up to `threads` workers; 0 means one per hardware thread.
// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back(work);
  pool.clear();
  if (error)
    std::rethrow_exception(error);
}

std::vector<ShortcutEdge> edges_of(std::span<const CandidateEdge> c) {
  std::vector<ShortcutEdge> out;
  out.reserve(c.size());
  for (const auto& e : c)
    out.push_back(e.edge);
  return out;
}

boost::property_tree::ptree read_ini_text(std::string_view text) {
  boost::property_tree::ptree pt;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(e.message(), static_cast<int>(e.line()));
  }
  for (const auto& [name, node] : pt)
    if (node.empty())
      throw ParseError("key '" + name + "' appears outside a [section]", 0);
  return pt;
}

std::uint64_t parse_u64(std::string_view s, const std::string& key) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ParseError("invalid value for " + key + ": '" + std::string(s) + "'", 0);
  return v;
}

int parse_key_int(std::string_view s, const std::string& key) {
  try {
    return parse_int(s, 0, key.c_str());
  } catch (const ParseError&) {
    throw ParseError("invalid value for " + key + ": '" + std::string(s) + "'", 0);
  }
}

double parse_key_double(std::string_view s, const std::string& key) {
  try {
    return parse_double(s, 0, key.c_str());
  } catch (const ParseError&) {
    throw ParseError("invalid value for " + key + ": '" + std::string(s) + "'", 0);
  }
}

bool parse_bool(std::string_view s, const std::string& key) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes")
    return true;
  if (s == "false" || s == "0" || s == "no")
    return false;
  throw ParseError("invalid value for " + key + ": '" + std::string(s) + "'", 0);
}

// Applies one [ga] key; false when the key is unknown.
bool apply_ga(GaParams& ga, const std::string& key, const std::string& v) {
  const std::string full = "ga." + key;
  if (key == "population")
    ga.population_size = parse_key_int(v, full);
  else if (key == "archive")
    ga.archive_size = parse_key_int(v, full);
  else if (key == "generations")
    ga.generations = parse_key_int(v, full);
  else if (key == "k")
    ga.k = parse_key_int(v, full);
  else if (key == "crossover_rate")
    ga.crossover_rate = parse_key_double(v, full);
  else if (key == "mutation_rate")
    ga.mutation_rate = parse_key_double(v, full);
  else if (key == "tournament_replacement")
    ga.tournament_replacement = parse_bool(v, full);
  else
    return false;
  return true;
}

bool apply_aco(AcoParams& aco, const std::string& key, const std::string& v) {
  const std::string full = "aco." + key;
  if (key == "alpha")
    aco.alpha = parse_key_double(v, full);
  else if (key == "beta")
    aco.beta = parse_key_double(v, full);
  else if (key == "rho")
    aco.rho = parse_key_double(v, full);
  else if (key == "delta_tau")
    aco.delta_tau = parse_key_double(v, full);
  else if (key == "e_stop")
    aco.e_stop = parse_key_double(v, full);
  else if (key == "lambda_min")
    aco.lambda_min = parse_key_double(v, full);
  else if (key == "max_iterations")
    aco.max_iterations = parse_key_int(v, full);
  else if (key == "min_iterations")
    aco.min_iterations = parse_key_int(v, full);
  else if (key == "initial_pheromone")
    aco.initial_pheromone = parse_key_double(v, full);
  else
    return false;
  return true;
}

[[noreturn]] void unknown_key(const std::string& section, const std::string& key) {
  throw ParseError("unknown key '" + key + "' in [" + section + "]", 0);
}

Json profile_json(const TopologicalProfile& p) {
  return Json{{"diameter", p.diameter},
              {"char_path_length", p.char_path_length},
              {"mean_degree", p.mean_degree},
              {"clustering_coeff", p.clustering_coeff}};
}

Json matrix_json(const BinaryMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j)
      row.push_back(m(i, j) ? 1 : 0);
    rows.push_back(row);
  }
  return rows;
}

Json ga_json(const GaParams& ga) {
  return Json{{"population", ga.population_size},
              {"archive", ga.archive_size},
              {"generations", ga.generations},
              {"k", ga.effective_k()},
              {"crossover_rate", ga.crossover_rate},
              {"mutation_rate", ga.mutation_rate},
              {"tournament_replacement", ga.tournament_replacement}};
}

Json aco_json(const AcoParams& aco) {
  return Json{{"alpha", aco.alpha},
              {"beta", aco.beta},
              {"rho", aco.rho},
              {"delta_tau", aco.delta_tau},
              {"e_stop", aco.e_stop},
              {"lambda_min", aco.lambda_min},
              {"max_iterations", aco.max_iterations},
              {"min_iterations", aco.min_iterations},
              {"initial_pheromone", aco.initial_pheromone}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  out << contents;
  if (!out)
    throw Error("write failed for " + path.string());
}

} // namespace

AcoStageResult run_aco_stage(std::span<const int> sse_sizes, const BinaryMatrix& sse_incidence,
                             std::span<const TemplateProtein> templates, long e_total, const AcoParams& params,
                             const Rng& rng) {
  if (sse_incidence.size() != static_cast<int>(sse_sizes.size()))
    throw DimensionError("incidence matrix does not match the SSE count");
  AcoStageResult out;
  std::vector<std::vector<double>> q;
  std::vector<double> mass;
  for (int a = 0; a < sse_incidence.size(); ++a)
    for (int b = a + 1; b < sse_incidence.size(); ++b)
      if (sse_incidence(a, b)) {
        out.pairs.push_back({a, b});
        q.push_back(build_occurrence_matrix(templates, a, b, sse_sizes[a], sse_sizes[b]));
        mass.push_back(std::accumulate(q.back().begin(), q.back().end(), 0.0));
      }
  if (out.pairs.empty() || e_total <= 0)
    return out;

  out.pair_budget = allocate_pair_budgets(mass, e_total);
  for (std::size_t p = 0; p < out.pairs.size(); ++p) {
    if (out.pair_budget[p] == 0)
      continue;
    auto [a, b] = out.pairs[p];
    auto h = make_heuristic(std::move(q[p]), sse_sizes[a], sse_sizes[b], static_cast<double>(out.pair_budget[p]));
    Rng pair_rng = rng.stream(p);
    auto local = local_aco(a, b, h, params, pair_rng);
    spdlog::debug("pair ({}, {}): budget {}, {} candidates", a + 1, b + 1, out.pair_budget[p], local.size());
    out.candidates.insert(out.candidates.end(), local.begin(), local.end());
  }
  std::sort(out.candidates.begin(), out.candidates.end(), [](const auto& x, const auto& y) { return x.edge < y.edge; });
  if (!out.candidates.empty()) {
    Rng global_rng = rng.stream(out.pairs.size());
    out.final_edges = global_aco(out.candidates, sse_sizes, e_total, params, global_rng);
  }
  return out;
}

double shortcut_score(std::span<const ShortcutEdge> predicted, std::span<const ShortcutEdge> truth) {
  if (truth.empty())
    return predicted.empty() ? 1.0 : 0.0;
  std::set<ShortcutEdge> t(truth.begin(), truth.end());
  std::set<ShortcutEdge> p(predicted.begin(), predicted.end());
  long hit = 0;
  for (const auto& e : p)
    hit += t.count(e);
  return static_cast<double>(hit) / static_cast<double>(t.size());
}

double shortcut_score(std::span<const CandidateEdge> predicted, std::span<const ShortcutEdge> truth) {
  auto edges = edges_of(predicted);
  return shortcut_score(std::span<const ShortcutEdge>(edges), truth);
}

void RunConfig::validate() const {
  if (!(threshold > 0))
    throw DomainError("threshold must be positive");
  if (!(tolerance > 0 && tolerance < 1))
    throw DomainError("tolerance must lie in (0, 1)");
  if (simulations < 1)
    throw DomainError("simulations must be at least 1");
  ga.validate();
  aco.validate();
}

void apply_config_text(RunConfig& config, std::string_view text) {
  auto pt = read_ini_text(text);
  for (const auto& [section, node] : pt) {
    for (const auto& [key, value] : node) {
      const std::string v = value.data();
      if (section == "run") {
        if (key == "pdb")
          config.pdb_path = v;
        else if (key == "family")
          config.family_index_path = v;
        else if (key == "out")
          config.output_dir = v;
        else if (key == "threshold")
          config.threshold = parse_key_double(v, "run.threshold");
        else if (key == "tolerance")
          config.tolerance = parse_key_double(v, "run.tolerance");
        else if (key == "seed")
          config.seed = parse_u64(v, "run.seed");
        else if (key == "simulations")
          config.simulations = parse_key_int(v, "run.simulations");
        else
          unknown_key(section, key);
      } else if (section == "ga") {
        if (!apply_ga(config.ga, key, v))
          unknown_key(section, key);
      } else if (section == "aco") {
        if (!apply_aco(config.aco, key, v))
          unknown_key(section, key);
      } else {
        throw ParseError("unknown section [" + section + "]", 0);
      }
    }
  }
}

RunReport run_predict(const RunConfig& config) {
  config.validate();
  RunReport report;
  report.config = config;

  auto t0 = Clock::now();
  ProteinStructure query = read_pdb_file(config.pdb_path);
  if (query.sse_count() < 2)
    throw DomainError("query " + query.id + " has " + std::to_string(query.sse_count()) +
                      " SSEs; at least 2 are needed");
  FamilyIndex family = read_family_index_file(config.family_index_path);

  std::vector<TemplateProtein> templates;
  std::vector<TopologicalProfile> sse_profiles, residue_profiles;
  for (const auto& entry : family.entries) {
    if (entry.sse_count != query.sse_count()) {
      spdlog::debug("skipping {}: {} SSEs, query has {}", entry.protein_id, entry.sse_count, query.sse_count());
      continue;
    }
    ProteinStructure t = read_pdb_file(entry.path);
    t.id = entry.protein_id;
    if (t.sse_count() != entry.sse_count) {
      spdlog::warn("skipping {}: index says {} SSEs, file has {}", entry.protein_id, entry.sse_count, t.sse_count());
      continue;
    }
    auto graph = induce_sse_in(build_contact_map(t, config.threshold), t);
    sse_profiles.push_back(topological_profile(Graph::from_matrix(sse_adjacency(graph, t))));
    residue_profiles.push_back(topological_profile(graph.to_graph()));
    templates.push_back(make_template(t, config.threshold));
  }
  if (templates.empty())
    throw EmptyInputError("no family member has " + std::to_string(query.sse_count()) + " SSEs");

  report.protein_id = query.id;
  report.residue_count = query.residue_count();
  report.dropped_residues = query.dropped_residues;
  report.sse_sizes = query.sse_sizes();
  for (const auto& s : query.sse_list)
    report.sse_first_residue.push_back(s.first_residue);
  report.template_count = static_cast<int>(templates.size());
  report.sse_family_profile = mean_profile(sse_profiles);
  report.family_profile = mean_profile(residue_profiles);

  auto query_graph = induce_sse_in(build_contact_map(query, config.threshold), query);
  report.truth_incidence = sse_adjacency(query_graph, query);
  const TemplateProtein truth = make_template(query, config.threshold);
  report.real_shortcuts = static_cast<long>(truth.shortcuts.size());
  std::vector<std::pair<int, int>> intra;
  {
    auto pos = [&](int residue) {
      return static_cast<int>(std::lower_bound(query_graph.vertices.begin(), query_graph.vertices.end(), residue) -
                              query_graph.vertices.begin());
    };
    for (const auto& e : query_graph.edges)
      if (e.kind == EdgeKind::Intra)
        intra.push_back({pos(e.u), pos(e.v)});
  }
  report.timings.parse_seconds = seconds_since(t0);
  spdlog::info("{}: {} residues, {} SSEs, {} templates", query.id, query.residue_count(), query.sse_count(),
               templates.size());

  t0 = Clock::now();
  const Rng master(config.seed);
  Rng moga_rng = master.stream(0);
  report.moga = run_moga(make_sse_context(query), config.ga, report.sse_family_profile, moga_rng);
  report.matrix_error_rate = matrix_error_rate(report.moga.clustering.incidence, report.truth_incidence);
  report.timings.moga_seconds = seconds_since(t0);
  spdlog::info("moga: modularity {:.4f}, matrix error rate {:.4f}", report.moga.modularity, report.matrix_error_rate);

  t0 = Clock::now();
  report.budget = estimate_edge_budget(report.sse_sizes, templates);
  if (report.budget.e_total > 0)
    report.ac = prediction_accuracy(report.real_shortcuts, report.budget.e_total);
  for (int attempt = 1; attempt <= config.simulations; ++attempt) {
    report.attempts = attempt;
    report.aco = run_aco_stage(report.sse_sizes, report.moga.clustering.incidence, templates, report.budget.e_total,
                               config.aco, master.stream(attempt));
    auto final_edges = edges_of(report.aco.final_edges);
    Graph built = build_sse_network(report.sse_sizes, intra, final_edges);
    report.built_profile = topological_profile(built);
    report.accepted = is_compatible(report.built_profile, report.family_profile, config.tolerance);
    spdlog::debug("attempt {}: {} candidates, {} final, {}", attempt, report.aco.candidates.size(), final_edges.size(),
                  report.accepted ? "accepted" : "rejected");
    if (report.accepted)
      break;
  }
  report.shortcut_score = shortcut_score(report.aco.final_edges, truth.shortcuts);
  report.timings.aco_seconds = seconds_since(t0);
  spdlog::info("aco: E_p {}, {} final edges, score {:.4f}, {} after {} attempt(s)", report.budget.e_total,
               report.aco.final_edges.size(), report.shortcut_score, report.accepted ? "accepted" : "rejected",
               report.attempts);
  return report;
}

std::string report_json(const RunReport& r) {
  const auto& c = r.config;
  Json j;
  j["protein"] = Json{{"id", r.protein_id},
                      {"residue_count", r.residue_count},
                      {"dropped_residues", r.dropped_residues},
                      {"sse_count", static_cast<int>(r.sse_sizes.size())},
                      {"sse_sizes", r.sse_sizes},
                      {"templates", r.template_count}};
  j["config"] = Json{{"pdb", c.pdb_path.generic_string()},
                     {"family", c.family_index_path.generic_string()},
                     {"threshold", c.threshold},
                     {"tolerance", c.tolerance},
                     {"seed", c.seed},
                     {"simulations", c.simulations},
                     {"ga", ga_json(c.ga)},
                     {"aco", aco_json(c.aco)}};
  j["sse_prediction"] = Json{{"genes", r.moga.best.genes},
                             {"modularity", r.moga.modularity},
                             {"incidence", matrix_json(r.moga.clustering.incidence)},
                             {"truth_incidence", matrix_json(r.truth_incidence)},
                             {"matrix_error_rate", r.matrix_error_rate},
                             {"archive_size", r.moga.archive.size()}};
  j["shortcuts"] = Json{{"e_pred", r.budget.e_total},
                        {"budget_basis", r.budget.basis},
                        {"edge_rate", r.budget.rate},
                        {"e_real", r.real_shortcuts},
                        {"e_selected", r.aco.candidates.size()},
                        {"e_final", r.aco.final_edges.size()},
                        {"ac", r.ac ? Json(*r.ac) : Json(nullptr)},
                        {"score", r.shortcut_score}};
  j["profiles"] = Json{{"sse_family", profile_json(r.sse_family_profile)},
                       {"family", profile_json(r.family_profile)},
                       {"built", profile_json(r.built_profile)}};
  j["verdict"] = r.accepted ? "accepted" : "rejected";
  j["attempts"] = r.attempts;
  return j.dump(2) + "\n";
}

std::string timings_json(const StageTimings& t) {
  Json j{{"parse_seconds", t.parse_seconds}, {"moga_seconds", t.moga_seconds}, {"aco_seconds", t.aco_seconds}};
  return j.dump(2) + "\n";
}

std::string incidence_tsv(const BinaryMatrix& m) {
  std::string out;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j)
        out += '\t';
      out += m(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_report_files(const RunReport& report) {
  const auto& dir = report.config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  write_file(dir / "report.json", report_json(report));
  write_file(dir / "sse_incidence.tsv", incidence_tsv(report.moga.clustering.incidence));
  write_file(dir / "shortcut_edges.tsv", shortcut_edges_tsv(report.aco.final_edges, report.sse_first_residue));
  write_file(dir / "archive.tsv", archive_tsv(report.moga.archive));
  write_file(dir / "timings.json", timings_json(report.timings));
}

BenchmarkManifest parse_manifest(std::string_view text) {
  auto pt = read_ini_text(text);
  BenchmarkManifest m;
  for (const auto& [section, node] : pt) {
    if (section.starts_with("instance.")) {
      BenchmarkInstance inst;
      inst.name = section.substr(9);
      if (inst.name.empty())
        throw ParseError("instance section without a name", 0);
      for (const auto& [key, value] : node) {
        const std::string v = value.data();
        const std::string full = section + "." + key;
        if (key == "class") {
          inst.protein_class = v;
        } else if (key == "sse_sizes") {
          inst.spec.sse_sizes.clear();
          for (auto f : split(v, ','))
            inst.spec.sse_sizes.push_back(parse_key_int(f, full));
        } else if (key == "shortcuts_per_pair") {
          inst.spec.shortcuts_per_pair = parse_key_int(v, full);
        } else if (key == "templates") {
          inst.spec.templates = parse_key_int(v, full);
        } else if (key == "boost_fraction") {
          inst.spec.boost_fraction = parse_key_double(v, full);
        } else if (key == "intra_band") {
          inst.spec.intra_band = parse_key_int(v, full);
        } else if (key == "seed") {
          inst.seed = parse_u64(v, full);
        } else {
          unknown_key(section, key);
        }
      }
      inst.spec.validate();
      m.instances.push_back(std::move(inst));
      continue;
    }
    for (const auto& [key, value] : node) {
      const std::string v = value.data();
      if (section == "benchmark") {
        if (key == "seed")
          m.seed = parse_u64(v, "benchmark.seed");
        else if (key == "simulations")
          m.simulations = parse_key_int(v, "benchmark.simulations");
        else if (key == "tolerance")
          m.tolerance = parse_key_double(v, "benchmark.tolerance");
        else if (key == "threads")
          m.threads = parse_key_int(v, "benchmark.threads");
        else
          unknown_key(section, key);
      } else if (section == "ga") {
        if (!apply_ga(m.ga, key, v))
          unknown_key(section, key);
      } else if (section == "aco") {
        if (!apply_aco(m.aco, key, v))
          unknown_key(section, key);
      } else {
        throw ParseError("unknown section [" + section + "]", 0);
      }
    }
  }
  if (m.instances.empty())
    throw EmptyInputError("benchmark manifest lists no instance");
  if (m.simulations < 1)
    throw DomainError("simulations must be at least 1");
  if (m.threads < 0)
    throw DomainError("threads must be non-negative");
  m.ga.validate();
  m.aco.validate();
  return m;
}

BenchmarkResult run_benchmark(const BenchmarkManifest& manifest) {
  if (manifest.instances.empty())
    throw EmptyInputError("benchmark manifest lists no instance");
  const Rng master(manifest.seed);
  BenchmarkResult result;
  for (std::size_t idx = 0; idx < manifest.instances.size(); ++idx) {
    const auto& bi = manifest.instances[idx];
    Rng layout = bi.seed ? Rng(*bi.seed) : master.stream(1000 + idx);
    SyntheticInstance inst = make_synthetic_instance(bi.spec, layout);

    // Simulation streams depend on the simulation index only, so instances
    // that differ in one knob share their random numbers.
    Rng moga_rng = master.stream(0);
    MogaResult moga = run_moga(inst.sse.ctx, manifest.ga, inst.sse.family_profile, moga_rng);
    EdgeBudgetEstimate budget = estimate_edge_budget(inst.sse_sizes, inst.templates);

    BenchmarkRow row;
    row.instance = bi.name;
    row.protein_class = bi.protein_class;
    row.boost_fraction = bi.spec.boost_fraction;
    row.templates = bi.spec.templates;
    row.protein_size = std::accumulate(inst.sse_sizes.begin(), inst.sse_sizes.end(), 0);
    row.matrix_error_rate = matrix_error_rate(moga.clustering.incidence, inst.sse.truth);
    row.ac = budget.e_total > 0 ? prediction_accuracy(static_cast<long>(inst.truth.size()), budget.e_total)
                                : std::nan("");

    row.simulations.resize(manifest.simulations);
    parallel_for(manifest.simulations, manifest.threads, [&](int s) {
      auto stage = run_aco_stage(inst.sse_sizes, moga.clustering.incidence, inst.templates, budget.e_total,
                                 manifest.aco, master.stream(static_cast<std::uint64_t>(s) + 1));
      SimulationOutcome& o = row.simulations[s];
      o.local_recovery = shortcut_score(stage.candidates, inst.truth);
      o.score = shortcut_score(stage.final_edges, inst.truth);
      auto final_edges = edges_of(stage.final_edges);
      o.accepted = validate_built_network(build_sse_network(inst.sse_sizes, inst.intra_edges, final_edges),
                                          inst.residue_profile, manifest.tolerance);
    });
    std::vector<double> scores, local;
    int accepted = 0;
    for (const auto& o : row.simulations) {
      scores.push_back(o.score);
      local.push_back(o.local_recovery);
      accepted += o.accepted;
    }
    row.score_mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    row.score_median = median(scores);
    row.score_sample_sd = sample_sd(scores);
    row.local_recovery_median = median(local);
    row.acceptance_rate = static_cast<double>(accepted) / manifest.simulations;
    spdlog::info("{}: score median {:.3f}, local median {:.3f}, matrix error {:.3f}", row.instance, row.score_median,
                 row.local_recovery_median, row.matrix_error_rate);
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string benchmark_table_tsv(const BenchmarkResult& result) {
  std::string out(kBenchmarkTableHeader);
  out += '\n';
  char buf[512];
  for (const auto& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%s\t%s\t%.3f\t%d\t%d\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%zu\n",
                  r.instance.c_str(), r.protein_class.c_str(), r.boost_fraction, r.templates, r.protein_size,
                  r.score_mean, r.score_median, r.score_sample_sd, r.local_recovery_median, r.ac,
                  r.matrix_error_rate, r.acceptance_rate, r.simulations.size());
    out += buf;
  }
  return out;
}

std::string figure3_curve_csv(const BenchmarkResult& result) {
  std::string out(kCurveHeader);
  out += '\n';
  char buf[256];
  for (const auto& r : result.rows)
    for (std::size_t s = 0; s < r.simulations.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%s,%.3f,%zu,%.6f,%.6f\n", r.instance.c_str(), r.boost_fraction, s + 1,
                    r.simulations[s].local_recovery, r.simulations[s].score);
      out += buf;
    }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty())
    throw EmptyInputError("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2)
    return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v)
    ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace ssein
