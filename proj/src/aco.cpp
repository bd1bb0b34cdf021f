#include "ssein/aco.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numeric>

#include "ssein/contact.hpp"
#include "ssein/error.hpp"

namespace ssein {

namespace {

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity())
    return b;
  if (b == -std::numeric_limits<double>::infinity())
    return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_mean_exp(std::span<const double> v) {
  if (v.empty())
    return 0.0;
  double hi = *std::max_element(v.begin(), v.end());
  double sum = 0;
  for (double x : v)
    sum += std::exp(x - hi);
  return hi + std::log(sum / static_cast<double>(v.size()));
}

long round_half_up(double x) { return static_cast<long>(std::floor(x + 0.5)); }

// Incidence lists and SSE membership for repeated transition queries.
struct ColonyIndex {
  std::vector<std::vector<std::pair<int, int>>> incident; // (edge, other end)
  std::vector<std::vector<int>> members;                  // group -> vertices
  double log_s_bar = 0;
  std::vector<double> log_s;

  explicit ColonyIndex(const ColonyGraph& g) : incident(g.vertex_count()) {
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      auto [u, v] = g.edges[k];
      incident[u].push_back({static_cast<int>(k), v});
      incident[v].push_back({static_cast<int>(k), u});
    }
    int groups = g.group.empty() ? 0 : *std::max_element(g.group.begin(), g.group.end()) + 1;
    members.resize(groups);
    for (int v = 0; v < g.vertex_count(); ++v)
      members[g.group[v]].push_back(v);
    log_s.reserve(g.weight.size());
    for (double w : g.weight)
      log_s.push_back(std::log(w));
    if (!g.weight.empty())
      log_s_bar = std::log(std::accumulate(g.weight.begin(), g.weight.end(), 0.0) / static_cast<double>(g.weight.size()));
  }
};

Transition transition_from(int vertex, const ColonyGraph& g, const ColonyIndex& idx, const PheromoneState& state,
                           const AcoParams& params) {
  Transition t;
  std::vector<double> lt, ls;
  for (auto [k, w] : idx.incident[vertex]) {
    t.target.push_back(w);
    t.edge.push_back(k);
    lt.push_back(state.log_tau[k]);
    ls.push_back(idx.log_s[k]);
  }
  for (int w : idx.members[g.group[vertex]]) {
    if (w == vertex)
      continue;
    t.target.push_back(w);
    t.edge.push_back(-1);
    lt.push_back(state.log_tau_intra);
    ls.push_back(idx.log_s_bar);
  }
  if (!t.target.empty())
    t.p = transition_probabilities(lt, ls, params.alpha, params.beta);
  return t;
}

std::size_t sample(std::span<const double> p, Rng& rng) {
  double u = rng.uniform();
  double cum = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0)
      continue;
    last = i;
    cum += p[i];
    if (u < cum)
      return i;
  }
  return last;
}

} // namespace

void AcoParams::validate() const {
  if (!(alpha >= 0) || !(beta >= 0))
    throw DomainError("alpha and beta must be non-negative");
  if (!(rho > 0 && rho < 1))
    throw DomainError("rho must lie in (0, 1)");
  if (!(delta_tau > 0))
    throw DomainError("delta_tau must be positive");
  if (!(e_stop > 0))
    throw DomainError("e_stop must be positive");
  if (!(lambda_min > 0 && lambda_min <= 1))
    throw DomainError("lambda_min must lie in (0, 1]");
  if (max_iterations < 1 || min_iterations < 0)
    throw DomainError("iteration limits must be positive");
  if (!(initial_pheromone > 0) || !std::isfinite(initial_pheromone))
    throw DomainError("initial pheromone must be positive and finite");
}

ShortcutEdge make_shortcut(int sse_a, int pos_a, int sse_b, int pos_b) {
  if (sse_a == sse_b)
    throw DomainError("a shortcut edge must join two different SSEs");
  if (sse_a > sse_b)
    return {sse_b, pos_b, sse_a, pos_a};
  return {sse_a, pos_a, sse_b, pos_b};
}

int TemplateProtein::residue_total() const { return std::accumulate(sse_sizes.begin(), sse_sizes.end(), 0); }

double TemplateProtein::edge_rate() const {
  int total = residue_total();
  return total > 0 ? static_cast<double>(shortcuts.size()) / total : 0.0;
}

TemplateProtein make_template(const ProteinStructure& protein, double threshold) {
  TemplateProtein t;
  t.id = protein.id;
  t.sse_sizes = protein.sse_sizes();
  auto graph = induce_sse_in(build_contact_map(protein, threshold), protein);
  for (const auto& e : graph.shortcuts()) {
    int a = protein.sse_position(graph.sse_of.at(e.u));
    int b = protein.sse_position(graph.sse_of.at(e.v));
    t.shortcuts.push_back(make_shortcut(a, e.u - protein.sse_list[a].first_residue, b,
                                        e.v - protein.sse_list[b].first_residue));
  }
  std::sort(t.shortcuts.begin(), t.shortcuts.end());
  return t;
}

std::vector<int> average_family_chromosome(std::span<const std::vector<int>> templates) {
  if (templates.empty())
    throw EmptyInputError("no template chromosomes to average");
  const std::size_t len = templates.front().size();
  std::vector<long> sum(len, 0);
  for (const auto& t : templates) {
    if (t.size() != len)
      throw DimensionError("template chromosomes differ in length");
    for (std::size_t i = 0; i < len; ++i)
      sum[i] += t[i];
  }
  std::vector<int> avg(len);
  for (std::size_t i = 0; i < len; ++i)
    avg[i] = static_cast<int>(round_half_up(static_cast<double>(sum[i]) / static_cast<double>(templates.size())));
  return avg;
}

long allele_distance(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size())
    throw DimensionError("allele vectors differ in length");
  long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += std::labs(static_cast<long>(a[i]) - b[i]);
  return d;
}

EdgeBudgetEstimate estimate_edge_budget(std::span<const int> sequence, std::span<const TemplateProtein> templates) {
  std::vector<const TemplateProtein*> matching;
  for (const auto& t : templates)
    if (t.sse_sizes.size() == sequence.size())
      matching.push_back(&t);
  if (matching.empty())
    throw EmptyInputError("no template has " + std::to_string(sequence.size()) + " SSEs");

  const long cumulated = std::accumulate(sequence.begin(), sequence.end(), 0L);
  const double limit = 0.2 * static_cast<double>(cumulated);

  const TemplateProtein* nearest = nullptr;
  long best = std::numeric_limits<long>::max();
  for (const auto* t : matching) {
    long d = allele_distance(sequence, t->sse_sizes);
    if (d < best) {
      best = d;
      nearest = t;
    }
  }

  EdgeBudgetEstimate est;
  if (static_cast<double>(best) < limit) {
    est.rate = nearest->edge_rate();
    est.basis = "template:" + nearest->id;
  } else {
    double mean_rate = 0;
    std::vector<std::vector<int>> sizes;
    for (const auto* t : matching) {
      mean_rate += t->edge_rate();
      sizes.push_back(t->sse_sizes);
    }
    est.rate = mean_rate / static_cast<double>(matching.size());
    auto avg = average_family_chromosome(sizes);
    est.basis = static_cast<double>(allele_distance(sequence, avg)) < limit ? "average" : "family-mean";
  }
  est.e_total = round_half_up(est.rate * static_cast<double>(cumulated));
  return est;
}

double HeuristicMatrix::q_total() const { return std::accumulate(q.begin(), q.end(), 0.0); }

std::vector<double> build_occurrence_matrix(std::span<const TemplateProtein> templates, int sse_a, int sse_b, int n,
                                            int m) {
  if (n < 1 || m < 1)
    throw DomainError("SSE sizes must be positive");
  if (sse_a > sse_b) {
    // Build in canonical orientation, then transpose.
    auto t = build_occurrence_matrix(templates, sse_b, sse_a, m, n);
    std::vector<double> q(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        q[static_cast<std::size_t>(i) * m + j] = t[static_cast<std::size_t>(j) * n + i];
    return q;
  }
  std::vector<double> q(static_cast<std::size_t>(n) * m, 1.0);
  auto relative = [](int pos, int from, int to) { return std::min(to - 1, static_cast<int>((pos + 0.5) * to / from)); };
  for (const auto& t : templates) {
    if (static_cast<int>(t.sse_sizes.size()) <= std::max(sse_a, sse_b))
      continue;
    const int na = t.sse_sizes[sse_a], nb = t.sse_sizes[sse_b];
    for (const auto& e : t.shortcuts)
      if (e.sse_a == sse_a && e.sse_b == sse_b)
        q[static_cast<std::size_t>(relative(e.pos_a, na, n)) * m + relative(e.pos_b, nb, m)] += 1.0;
  }
  return q;
}

std::vector<double> edge_probabilities(std::span<const double> q, double e) {
  if (!(e >= 0))
    throw DomainError("edge budget must be non-negative");
  double total = 0;
  for (double v : q) {
    if (!(v >= 0))
      throw DomainError("occurrence counts must be non-negative");
    total += v;
  }
  if (!(total > 0))
    throw DomainError("occurrence matrix has zero total");
  std::vector<double> s(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    s[i] = e * q[i] / total;
  return s;
}

HeuristicMatrix make_heuristic(std::vector<double> q, int n, int m, double e) {
  if (q.size() != static_cast<std::size_t>(n) * m)
    throw DimensionError("occurrence matrix size does not match n x m");
  HeuristicMatrix h;
  h.n = n;
  h.m = m;
  h.e = e;
  h.s = edge_probabilities(q, e);
  h.q = std::move(q);
  return h;
}

std::vector<long> allocate_pair_budgets(std::span<const double> mass, long total) {
  if (total < 0)
    throw DomainError("edge total must be non-negative");
  if (mass.empty())
    throw EmptyInputError("no SSE pair to allocate edges to");
  double sum = 0;
  for (double v : mass) {
    if (!(v >= 0))
      throw DomainError("pair mass must be non-negative");
    sum += v;
  }
  if (!(sum > 0))
    throw DomainError("pair masses sum to zero");
  std::vector<long> out(mass.size());
  std::vector<std::pair<double, std::size_t>> rem;
  long given = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    double quota = static_cast<double>(total) * mass[i] / sum;
    out[i] = static_cast<long>(std::floor(quota));
    given += out[i];
    rem.push_back({quota - std::floor(quota), i});
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; given < total; ++i, ++given)
    ++out[rem[i % rem.size()].second];
  return out;
}

std::vector<double> transition_probabilities(std::span<const double> log_tau, std::span<const double> log_s,
                                             double alpha, double beta) {
  if (log_tau.size() != log_s.size())
    throw DimensionError("pheromone and weight vectors differ in length");
  std::vector<double> p(log_tau.size());
  if (p.empty())
    return p;
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = alpha * log_tau[k] + beta * log_s[k];
    hi = std::max(hi, p[k]);
  }
  double sum = 0;
  for (double& v : p) {
    v = std::exp(v - hi);
    sum += v;
  }
  for (double& v : p)
    v /= sum;
  return p;
}

void ColonyGraph::validate() const {
  if (edges.size() != weight.size())
    throw DimensionError("one weight per tracked edge is required");
  for (int g : group)
    if (g < 0)
      throw DomainError("negative SSE label");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
      throw DomainError("edge endpoint outside the graph");
    if (group[u] == group[v])
      throw DomainError("tracked edges must join different SSEs");
    if (!(weight[k] > 0) || !std::isfinite(weight[k]))
      throw DomainError("edge weights must be positive and finite");
  }
}

double PheromoneState::tau(std::size_t k) const { return std::exp(log_tau[k]); }
double PheromoneState::tau_intra() const { return std::exp(log_tau_intra); }

PheromoneState initial_pheromone(std::size_t edge_count, const AcoParams& params) {
  PheromoneState s;
  s.log_tau.assign(edge_count, std::log(params.initial_pheromone));
  s.log_tau_intra = std::log(params.initial_pheromone);
  return s;
}

void update_pheromone(PheromoneState& state, std::span<const int> move_counts, const AcoParams& params) {
  if (move_counts.size() != state.log_tau.size())
    throw DimensionError("one move count per tracked edge is required");
  const double keep = std::log1p(-params.rho);
  for (std::size_t k = 0; k < state.log_tau.size(); ++k) {
    if (move_counts[k] < 0)
      throw DomainError("move counts must be non-negative");
    double evaporated = keep + state.log_tau[k];
    state.log_tau[k] =
        move_counts[k] > 0 ? log_add_exp(evaporated, std::log(move_counts[k] * params.delta_tau)) : evaporated;
  }
  if (!state.log_tau.empty())
    state.log_tau_intra = log_mean_exp(state.log_tau);
}

Transition transition_distribution(int vertex, const ColonyGraph& graph, const PheromoneState& state,
                                   const AcoParams& params) {
  graph.validate();
  if (vertex < 0 || vertex >= graph.vertex_count())
    throw DomainError("vertex outside the graph");
  ColonyIndex idx(graph);
  return transition_from(vertex, graph, idx, state, params);
}

ColonyResult run_colony(const ColonyGraph& graph, int ants, const AcoParams& params, Rng& rng) {
  params.validate();
  graph.validate();
  ColonyResult res;
  res.state = initial_pheromone(graph.edges.size(), params);
  const int nv = graph.vertex_count();
  if (nv == 0 || ants < 1 || graph.edges.empty())
    return res;

  ColonyIndex idx(graph);
  std::vector<int> pos(ants);
  for (int& p : pos)
    p = static_cast<int>(rng.index(nv));

  std::vector<Transition> cache(nv);
  std::vector<char> cached(nv);
  std::vector<int> counts(graph.edges.size());
  const double log_stop = std::log(params.e_stop);
  while (res.iterations < params.max_iterations) {
    std::fill(cached.begin(), cached.end(), 0);
    std::fill(counts.begin(), counts.end(), 0);
    for (int& v : pos) {
      if (!cached[v]) {
        cache[v] = transition_from(v, graph, idx, res.state, params);
        cached[v] = 1;
      }
      const Transition& t = cache[v];
      if (t.target.empty())
        continue;
      std::size_t c = sample(t.p, rng);
      if (t.edge[c] >= 0)
        ++counts[t.edge[c]];
      v = t.target[c];
    }
    update_pheromone(res.state, counts, params);
    ++res.iterations;
    if (res.iterations >= params.min_iterations) {
      double hi = *std::max_element(res.state.log_tau.begin(), res.state.log_tau.end());
      if (hi >= log_stop + res.state.log_tau_intra)
        break;
    }
  }
  return res;
}

std::vector<double> normalized_pheromone(std::span<const double> log_tau) {
  std::vector<double> out(log_tau.size(), 1.0);
  if (log_tau.empty())
    return out;
  auto [lo, hi] = std::minmax_element(log_tau.begin(), log_tau.end());
  const double range = *hi - *lo;
  if (range > 0)
    for (std::size_t k = 0; k < log_tau.size(); ++k)
      out[k] = (log_tau[k] - *lo) / range;
  return out;
}

std::vector<CandidateEdge> local_aco(int sse_a, int sse_b, const HeuristicMatrix& h, const AcoParams& params, Rng& rng) {
  if (h.n + h.m < 2)
    throw DomainError("an SSE pair needs at least two residues");
  if (h.e <= 0)
    return {};
  ColonyGraph g;
  g.group.assign(h.n, 0);
  g.group.resize(h.n + h.m, 1);
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.m; ++j) {
      g.edges.push_back({i, h.n + j});
      g.weight.push_back(h.s_at(i, j));
    }
  auto res = run_colony(g, h.n + h.m, params, rng);
  auto norm = normalized_pheromone(res.state.log_tau);
  std::vector<CandidateEdge> out;
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    if (norm[k] >= params.lambda_min) {
      int i = g.edges[k].first, j = g.edges[k].second - h.n;
      out.push_back({make_shortcut(sse_a, i, sse_b, j), g.weight[k], norm[k]});
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
  return out;
}

std::vector<CandidateEdge> global_aco(std::span<const CandidateEdge> candidates, std::span<const int> sse_sizes,
                                      long e_total, const AcoParams& params, Rng& rng) {
  if (e_total <= 0)
    throw DomainError("edge budget must be positive");
  std::vector<CandidateEdge> ranked(candidates.begin(), candidates.end());
  if (static_cast<long>(ranked.size()) <= e_total) {
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
    return ranked;
  }

  auto first = packed_first_residues(sse_sizes);
  ColonyGraph g;
  for (std::size_t s = 0; s < sse_sizes.size(); ++s)
    g.group.insert(g.group.end(), sse_sizes[s], static_cast<int>(s));
  for (const auto& c : ranked) {
    if (c.edge.sse_b >= static_cast<int>(sse_sizes.size()) || c.edge.pos_a >= sse_sizes[c.edge.sse_a] ||
        c.edge.pos_b >= sse_sizes[c.edge.sse_b])
      throw DomainError("candidate edge outside the SSE layout");
    g.edges.push_back({first[c.edge.sse_a] - 1 + c.edge.pos_a, first[c.edge.sse_b] - 1 + c.edge.pos_b});
    g.weight.push_back(c.s);
  }
  auto res = run_colony(g, g.vertex_count(), params, rng);
  auto norm = normalized_pheromone(res.state.log_tau);
  std::vector<std::size_t> order(ranked.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (res.state.log_tau[a] != res.state.log_tau[b])
      return res.state.log_tau[a] > res.state.log_tau[b];
    return ranked[a].edge < ranked[b].edge;
  });
  std::vector<CandidateEdge> out;
  for (long r = 0; r < e_total; ++r) {
    CandidateEdge c = ranked[order[r]];
    c.pheromone = norm[order[r]];
    out.push_back(c);
  }
  return out;
}

std::vector<int> packed_first_residues(std::span<const int> sse_sizes) {
  std::vector<int> first;
  int next = 1;
  for (int s : sse_sizes) {
    first.push_back(next);
    next += s;
  }
  return first;
}

Graph build_sse_network(std::span<const int> sse_sizes, std::span<const std::pair<int, int>> intra_edges,
                        std::span<const ShortcutEdge> shortcuts) {
  auto first = packed_first_residues(sse_sizes);
  const int total = std::accumulate(sse_sizes.begin(), sse_sizes.end(), 0);
  Graph g(total);
  for (auto [u, v] : intra_edges) {
    if (u < 0 || v < 0 || u >= total || v >= total)
      throw DomainError("intra edge outside the SSE layout");
    g.add_edge(u, v);
  }
  for (const auto& e : shortcuts)
    g.add_edge(first[e.sse_a] - 1 + e.pos_a, first[e.sse_b] - 1 + e.pos_b);
  return g;
}

bool validate_built_network(const Graph& built, const TopologicalProfile& family_profile, double tol) {
  return is_compatible(topological_profile(built), family_profile, tol);
}

std::string shortcut_edges_tsv(std::span<const CandidateEdge> edges, std::span<const int> first_residue) {
  std::string out = "res_i\tres_j\tsse_i\tsse_j\tpheromone_normalized\n";
  char buf[32];
  for (const auto& c : edges) {
    const auto& e = c.edge;
    std::snprintf(buf, sizeof buf, "%.6f", c.pheromone);
    out += std::to_string(first_residue[e.sse_a] + e.pos_a) + '\t' + std::to_string(first_residue[e.sse_b] + e.pos_b) +
           '\t' + std::to_string(e.sse_a + 1) + '\t' + std::to_string(e.sse_b + 1) + '\t' + buf + '\n';
  }
  return out;
}

} // namespace ssein
