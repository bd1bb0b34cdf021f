#include "ssein/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ssein/error.hpp"

namespace ssein {

void SyntheticSpec::validate() const {
  if (sse_sizes.size() < 2 || sse_sizes.size() % 2 != 0)
    throw DomainError("a planted instance needs an even number of SSEs, at least 2");
  if (shortcuts_per_pair < 1)
    throw DomainError("shortcuts_per_pair must be at least 1");
  for (std::size_t i = 0; i < sse_sizes.size(); ++i)
    if (sse_sizes[i] < shortcuts_per_pair)
      throw DomainError("SSE " + std::to_string(i + 1) + " is shorter than shortcuts_per_pair");
  if (templates < 1)
    throw DomainError("templates must be at least 1");
  if (!(boost_fraction >= 0 && boost_fraction <= 1))
    throw DomainError("boost_fraction must lie in [0, 1]");
  if (intra_band < 1)
    throw DomainError("intra_band must be at least 1");
}

SyntheticInstance make_synthetic_instance(const SyntheticSpec& spec, Rng& rng) {
  spec.validate();
  const int pairs = static_cast<int>(spec.sse_sizes.size()) / 2;
  const int c = spec.shortcuts_per_pair;

  SyntheticInstance inst;
  inst.sse_sizes = spec.sse_sizes;
  inst.sse = planted_matching_instance(pairs, rng);

  for (int p = 0; p < pairs; ++p) {
    const int a = 2 * p, b = 2 * p + 1;
    const int n = spec.sse_sizes[a], m = spec.sse_sizes[b];
    const int i0 = static_cast<int>(rng.index(n - c + 1));
    const int j0 = static_cast<int>(rng.index(m - c + 1));
    const bool antiparallel = rng.index(2) == 1;
    for (int t = 0; t < c; ++t)
      inst.truth.push_back({a, i0 + t, b, antiparallel ? j0 + c - 1 - t : j0 + t});
  }
  std::sort(inst.truth.begin(), inst.truth.end());

  const int total = static_cast<int>(inst.truth.size());
  const int boosted = std::min(total, static_cast<int>(std::ceil(spec.boost_fraction * total - 1e-9)));
  std::vector<int> order(total);
  for (int i = 0; i < total; ++i)
    order[i] = i;
  for (int i = total - 1; i > 0; --i)
    std::swap(order[i], order[rng.index(i + 1)]);
  for (int i = 0; i < boosted; ++i)
    inst.boosted.push_back(inst.truth[order[i]]);
  std::sort(inst.boosted.begin(), inst.boosted.end());

  for (int t = 0; t < spec.templates; ++t) {
    TemplateProtein tp;
    tp.id = "template" + std::to_string(t + 1);
    tp.sse_sizes = spec.sse_sizes;
    std::set<ShortcutEdge> edges(inst.boosted.begin(), inst.boosted.end());
    while (static_cast<int>(edges.size()) < total) {
      const int p = static_cast<int>(rng.index(pairs));
      const int a = 2 * p, b = 2 * p + 1;
      edges.insert({a, static_cast<int>(rng.index(spec.sse_sizes[a])), b, static_cast<int>(rng.index(spec.sse_sizes[b]))});
    }
    tp.shortcuts.assign(edges.begin(), edges.end());
    inst.templates.push_back(std::move(tp));
  }

  int offset = 0;
  for (int size : spec.sse_sizes) {
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size && j - i <= spec.intra_band; ++j)
        inst.intra_edges.push_back({offset + i, offset + j});
    offset += size;
  }

  std::vector<TopologicalProfile> profiles;
  for (const auto& tp : inst.templates)
    profiles.push_back(topological_profile(build_sse_network(inst.sse_sizes, inst.intra_edges, tp.shortcuts)));
  inst.residue_profile = mean_profile(profiles);
  return inst;
}

} // namespace ssein
