#include "ssein/moga.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "ssein/error.hpp"
#include "text_util.hpp"

namespace ssein {

void validate_chromosome(const Chromosome& c) {
  if (c.genes.empty())
    throw DomainError("chromosome has no genes");
  for (int g : c.genes)
    if (g < 1 || g > c.size())
      throw DomainError("allele " + std::to_string(g) + " outside 1.." + std::to_string(c.size()));
}

Chromosome identity_chromosome(int m) {
  Chromosome c;
  c.genes.resize(m);
  std::iota(c.genes.begin(), c.genes.end(), 1);
  return c;
}

namespace {

double circular_mean_deg(const std::vector<double>& angles) {
  if (angles.empty())
    return 0.0;
  double s = 0, c = 0;
  for (double a : angles) {
    double r = a * std::numbers::pi / 180.0;
    s += std::sin(r);
    c += std::cos(r);
  }
  return std::atan2(s, c) * 180.0 / std::numbers::pi;
}

} // namespace

SseContext make_sse_context(const ProteinStructure& protein) {
  SseContext ctx;
  for (const auto& sse : protein.sse_list) {
    SseFeatures f;
    std::vector<double> phis, psis;
    double hydro = 0;
    int count = 0;
    for (int r = sse.first_residue; r <= sse.last_residue; ++r) {
      const Residue& res = protein.residues[r - 1];
      f.centroid += res.ca;
      hydro += res.hydrophobicity;
      if (res.phi)
        phis.push_back(*res.phi);
      if (res.psi)
        psis.push_back(*res.psi);
      ++count;
    }
    f.centroid = f.centroid / static_cast<double>(count);
    f.mean_hydro = hydro / count;
    f.mean_phi = circular_mean_deg(phis);
    f.mean_psi = circular_mean_deg(psis);
    ctx.sse.push_back(f);
  }
  return ctx;
}

std::string sse_context_tsv(const SseContext& ctx) {
  std::string out = "sse\tcx\tcy\tcz\tphi\tpsi\thydro\n";
  for (int i = 0; i < ctx.size(); ++i) {
    const auto& f = ctx.sse[i];
    out += std::to_string(i + 1);
    for (double v : {f.centroid.x, f.centroid.y, f.centroid.z, f.mean_phi, f.mean_psi, f.mean_hydro})
      out += '\t' + format_double(v);
    out += '\n';
  }
  return out;
}

SseContext parse_sse_context(std::string_view text) {
  SseContext ctx;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (is_blank_or_comment(line) || line.starts_with("sse\t"))
      continue;
    auto cols = split(line, '\t');
    if (cols.size() != 7)
      throw ParseError("expected 7 tab-separated columns, found " + std::to_string(cols.size()), line_no);
    if (parse_int(cols[0], line_no) != ctx.size() + 1)
      throw ParseError("SSE rows must be numbered 1, 2, ... in order", line_no);
    SseFeatures f;
    f.centroid = {parse_double(cols[1], line_no), parse_double(cols[2], line_no), parse_double(cols[3], line_no)};
    f.mean_phi = parse_double(cols[4], line_no);
    f.mean_psi = parse_double(cols[5], line_no);
    f.mean_hydro = parse_double(cols[6], line_no);
    ctx.sse.push_back(f);
  }
  if (ctx.sse.empty())
    throw EmptyInputError("SSE context has no rows");
  return ctx;
}

Clustering decode(const Chromosome& c) {
  validate_chromosome(c);
  const int m = c.size();
  Clustering out;
  out.incidence = BinaryMatrix(m);
  Graph g(m);
  for (int i = 0; i < m; ++i) {
    int j = c.genes[i] - 1;
    if (i != j) {
      out.incidence.set_symmetric(i, j);
      g.add_edge(i, j);
    }
  }
  out.assignment = connected_components(g);
  out.cluster_count = *std::max_element(out.assignment.begin(), out.assignment.end()) + 1;
  return out;
}

double wrapped_angle_difference(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

ObjectiveVector evaluate_objectives(const Chromosome& c, const SseContext& ctx) {
  validate_chromosome(c);
  if (c.size() != ctx.size())
    throw DimensionError("chromosome length " + std::to_string(c.size()) + " does not match " +
                         std::to_string(ctx.size()) + " SSEs");
  ObjectiveVector o;
  int links = 0;
  for (int i = 0; i < c.size(); ++i) {
    int j = c.genes[i] - 1;
    if (i == j)
      continue;
    const auto& a = ctx.sse[i];
    const auto& b = ctx.sse[j];
    o.distance += distance(a.centroid, b.centroid);
    o.torsion += (wrapped_angle_difference(a.mean_phi, b.mean_phi) + wrapped_angle_difference(a.mean_psi, b.mean_psi)) / 2;
    o.hydro -= a.mean_hydro * b.mean_hydro;
    ++links;
  }
  if (links == 0)
    return ObjectiveVector::sentinel();
  o.distance /= links;
  o.torsion /= links;
  o.hydro /= links;
  return o;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strictly = false;
  for (int d = 0; d < kObjectiveCount; ++d) {
    if (a[d] > b[d])
      return false;
    if (a[d] < b[d])
      strictly = true;
  }
  return strictly;
}

std::vector<double> strength_ranks(std::span<const ObjectiveVector> pool) {
  const std::size_t n = pool.size();
  std::vector<std::vector<char>> dom(n, std::vector<char>(n, 0));
  std::vector<int> strength(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && dominates(pool[a], pool[b])) {
        dom[a][b] = 1;
        ++strength[a];
      }
  std::vector<double> r(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (dom[y][x])
        r[x] += strength[y];
  return r;
}

DensityResult density(std::span<const ObjectiveVector> pool, int k) {
  const int n = static_cast<int>(pool.size());
  if (k < 1 || k >= n)
    throw DomainError("density needs 1 <= k < pool size (k=" + std::to_string(k) + ", pool=" + std::to_string(n) + ")");

  std::vector<std::array<double, kObjectiveCount>> coord(n);
  for (int d = 0; d < kObjectiveCount; ++d) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& o : pool)
      if (!o.is_sentinel()) {
        lo = std::min(lo, o[d]);
        hi = std::max(hi, o[d]);
      }
    const double range = hi - lo;
    for (int i = 0; i < n; ++i) {
      if (pool[i].is_sentinel())
        coord[i][d] = 1.0;
      else
        coord[i][d] = range > 0 ? (pool[i][d] - lo) / range : 0.0;
    }
  }

  DensityResult out;
  out.sigma.resize(n);
  out.m.resize(n);
  std::vector<double> dist;
  for (int i = 0; i < n; ++i) {
    dist.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i)
        continue;
      double s = 0;
      for (int d = 0; d < kObjectiveCount; ++d)
        s += (coord[i][d] - coord[j][d]) * (coord[i][d] - coord[j][d]);
      dist.push_back(std::sqrt(s));
    }
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    out.sigma[i] = dist[k - 1];
    out.m[i] = 1.0 / (out.sigma[i] + 1.0);
  }
  return out;
}

Individual make_individual(Chromosome c, const SseContext& ctx) {
  Individual ind;
  ind.objectives = evaluate_objectives(c, ctx);
  ind.decoded = decode(c);
  ind.chromosome = std::move(c);
  return ind;
}

void assign_fitness(std::span<Individual> pool, int k) {
  std::vector<ObjectiveVector> obj;
  obj.reserve(pool.size());
  for (const auto& ind : pool)
    obj.push_back(ind.objectives);
  auto r = strength_ranks(obj);
  auto dens = density(obj, k);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].raw_rank = r[i];
    pool[i].sigma_k = dens.sigma[i];
    pool[i].density = dens.m[i];
    pool[i].fitness = r[i] + dens.m[i];
  }
}

TopologicalProfile clustering_profile(const Clustering& c) {
  return topological_profile(Graph::from_matrix(c.incidence));
}

std::vector<Individual> environmental_selection(std::span<const Individual> pool, int archive_size,
                                                const TopologicalProfile& family_profile) {
  if (archive_size < 1)
    throw DomainError("archive size must be at least 1");
  std::vector<std::size_t> nd, dominated;
  for (std::size_t i = 0; i < pool.size(); ++i)
    (pool[i].raw_rank == 0 ? nd : dominated).push_back(i);

  std::vector<double> deviation(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    deviation[i] = profile_deviation(clustering_profile(pool[i].decoded), family_profile);

  std::vector<std::size_t> keep = nd;
  const std::size_t cap = static_cast<std::size_t>(archive_size);
  while (keep.size() > cap) {
    auto worst = std::max_element(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
      // "less" means a is kept in preference to b.
      if (deviation[a] != deviation[b])
        return deviation[a] < deviation[b];
      if (pool[a].sigma_k != pool[b].sigma_k)
        return pool[a].sigma_k > pool[b].sigma_k;
      return pool[a].chromosome > pool[b].chromosome;
    });
    keep.erase(worst);
  }
  if (keep.size() < cap) {
    std::stable_sort(dominated.begin(), dominated.end(), [&](std::size_t a, std::size_t b) {
      if (pool[a].fitness != pool[b].fitness)
        return pool[a].fitness < pool[b].fitness;
      return deviation[a] < deviation[b];
    });
    for (std::size_t i = 0; i < dominated.size() && keep.size() < cap; ++i)
      keep.push_back(dominated[i]);
  }
  std::vector<Individual> archive;
  archive.reserve(keep.size());
  for (std::size_t i : keep)
    archive.push_back(pool[i]);
  return archive;
}

namespace {

std::size_t tournament(std::span<const Individual> archive, Rng& rng, bool replacement) {
  if (archive.empty())
    throw EmptyInputError("tournament over an empty archive");
  const std::size_t n = archive.size();
  std::size_t a = rng.index(n);
  std::size_t b;
  if (replacement || n == 1) {
    b = rng.index(n);
  } else {
    b = rng.index(n - 1);
    if (b >= a)
      ++b;
  }
  return archive[b].fitness < archive[a].fitness ? b : a;
}

} // namespace

std::size_t binary_tournament(std::span<const Individual> archive, Rng& rng) {
  return tournament(archive, rng, true);
}

Chromosome uniform_crossover(const Chromosome& p1, const Chromosome& p2, std::span<const std::uint8_t> mask) {
  if (p1.size() != p2.size() || static_cast<int>(mask.size()) != p1.size())
    throw DimensionError("crossover needs parents and mask of equal length");
  Chromosome child = p1;
  for (int i = 0; i < p1.size(); ++i)
    if (mask[i])
      child.genes[i] = p2.genes[i];
  return child;
}

Chromosome mutate(Chromosome c, double rate, Rng& rng) {
  if (!(rate >= 0 && rate <= 1))
    throw DomainError("mutation rate must lie in [0, 1]");
  const int m = c.size();
  if (m < 2)
    return c;
  for (int& g : c.genes) {
    if (!rng.bernoulli(rate))
      continue;
    int v = static_cast<int>(rng.index(m - 1)) + 1;
    if (v >= g)
      ++v;
    g = v;
  }
  return c;
}

int GaParams::effective_k() const {
  return k ? *k : static_cast<int>(std::floor(std::sqrt(static_cast<double>(population_size + archive_size))));
}

void GaParams::validate() const {
  if (population_size < 2)
    throw DomainError("population size must be at least 2");
  if (archive_size < 1)
    throw DomainError("archive size must be at least 1");
  if (generations < 1)
    throw DomainError("generations must be at least 1");
  if (effective_k() < 1)
    throw DomainError("k must be at least 1");
  if (!(crossover_rate >= 0 && crossover_rate <= 1) || !(mutation_rate >= 0 && mutation_rate <= 1))
    throw DomainError("crossover and mutation rates must lie in [0, 1]");
}

MogaResult run_moga(const SseContext& ctx, const GaParams& params, const TopologicalProfile& family_profile, Rng& rng) {
  params.validate();
  const int m = ctx.size();
  if (m < 2)
    throw DomainError("at least 2 SSEs are needed to predict links");

  std::vector<Individual> population;
  population.reserve(params.population_size);
  population.push_back(make_individual(identity_chromosome(m), ctx));
  while (static_cast<int>(population.size()) < params.population_size) {
    Chromosome c;
    for (int i = 0; i < m; ++i)
      c.genes.push_back(static_cast<int>(rng.index(m)) + 1);
    population.push_back(make_individual(std::move(c), ctx));
  }

  std::vector<Individual> archive;
  std::vector<std::uint8_t> mask(m);
  for (int gen = 0; gen < params.generations; ++gen) {
    std::vector<Individual> pool = std::move(population);
    pool.insert(pool.end(), archive.begin(), archive.end());
    assign_fitness(pool, std::min(params.effective_k(), static_cast<int>(pool.size()) - 1));
    archive = environmental_selection(pool, params.archive_size, family_profile);
    if (gen + 1 == params.generations)
      break;

    population.clear();
    while (static_cast<int>(population.size()) < params.population_size) {
      const auto& p1 = archive[tournament(archive, rng, params.tournament_replacement)].chromosome;
      const auto& p2 = archive[tournament(archive, rng, params.tournament_replacement)].chromosome;
      Chromosome child = p1;
      if (rng.bernoulli(params.crossover_rate)) {
        for (auto& bit : mask)
          bit = static_cast<std::uint8_t>(rng.index(2));
        child = uniform_crossover(p1, p2, mask);
      }
      population.push_back(make_individual(mutate(std::move(child), params.mutation_rate, rng), ctx));
    }
  }

  MogaResult result;
  double best_q = -std::numeric_limits<double>::infinity();
  for (const auto& ind : archive) {
    if (ind.raw_rank != 0)
      continue;
    double q = modularity(Graph::from_matrix(ind.decoded.incidence), ind.decoded.assignment);
    if (q > best_q) {
      best_q = q;
      result.best = ind.chromosome;
      result.clustering = ind.decoded;
    }
  }
  result.modularity = best_q;
  result.archive = std::move(archive);
  return result;
}

std::string archive_tsv(std::span<const Individual> archive) {
  std::string out = "rank\tfitness\to_distance\to_torsion\to_hydro\tgenes\n";
  for (const auto& ind : archive) {
    out += format_double(ind.raw_rank) + '\t' + format_double(ind.fitness);
    for (int d = 0; d < kObjectiveCount; ++d)
      out += '\t' + format_double(ind.objectives[d]);
    out += '\t';
    for (int i = 0; i < ind.chromosome.size(); ++i)
      out += (i ? "," : "") + std::to_string(ind.chromosome.genes[i]);
    out += '\n';
  }
  return out;
}

PlantedSseInstance planted_matching_instance(int pairs, Rng& rng) {
  if (pairs < 1)
    throw DomainError("planted instance needs at least one pair");
  constexpr double kPairGap = 5.0;        // centroid distance inside a pair
  constexpr double kMinPairSpacing = 30.0; // between pair midpoints
  constexpr int kBox = 100;

  // Integer midpoints and axis-aligned pair axes keep every matched distance
  // exactly kPairGap, so link sets drawn from the matching tie exactly.
  std::vector<Vec3> mids;
  while (static_cast<int>(mids.size()) < pairs) {
    Vec3 p{static_cast<double>(rng.index(kBox + 1)), static_cast<double>(rng.index(kBox + 1)),
           static_cast<double>(rng.index(kBox + 1))};
    bool clear = std::all_of(mids.begin(), mids.end(), [&](const Vec3& q) { return distance(p, q) >= kMinPairSpacing; });
    if (clear)
      mids.push_back(p);
  }

  PlantedSseInstance inst;
  inst.truth = BinaryMatrix(2 * pairs);
  Graph truth_graph(2 * pairs);
  for (int p = 0; p < pairs; ++p) {
    Vec3 dir;
    const double sign = rng.index(2) ? 1.0 : -1.0;
    switch (rng.index(3)) {
    case 0: dir = {sign, 0, 0}; break;
    case 1: dir = {0, sign, 0}; break;
    default: dir = {0, 0, sign}; break;
    }
    const double phi = -150.0 + 40.0 * p;
    const double psi = -50.0 + 45.0 * p;
    for (int side = 0; side < 2; ++side) {
      SseFeatures f;
      f.centroid = mids[p] + dir * ((side ? 0.5 : -0.5) * kPairGap);
      f.mean_phi = phi;
      f.mean_psi = psi;
      f.mean_hydro = 1.0;
      inst.ctx.sse.push_back(f);
    }
    inst.truth.set_symmetric(2 * p, 2 * p + 1);
    truth_graph.add_edge(2 * p, 2 * p + 1);
  }
  inst.family_profile = topological_profile(truth_graph);
  return inst;
}

} // namespace ssein
