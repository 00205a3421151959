#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/models.hpp"

namespace spgemm_hg {

namespace {

std::uint64_t hash_pins(std::span<const VertexId> pins) {
  std::uint64_t h = 1469598103934665603ull;
  for (VertexId v : pins) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Hypergraph coarsen(const Hypergraph& h, const CoarseningMap& map) {
  if (map.group_of.size() != h.num_vertices()) {
    throw InputError("coarsening map covers " + std::to_string(map.group_of.size()) +
                     " vertices, hypergraph has " + std::to_string(h.num_vertices()));
  }
  std::uint32_t groups = 0;
  for (std::uint32_t g : map.group_of) groups = std::max(groups, g + 1);
  if (!map.group_labels.empty() && map.group_labels.size() != groups) {
    throw InputError("coarsening map has " + std::to_string(map.group_labels.size()) +
                     " labels for " + std::to_string(groups) + " groups");
  }
  std::vector<Weight> comp(groups, 0), mem(groups, 0);
  std::vector<bool> used(groups, false);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const std::uint32_t g = map.group_of[v];
    used[g] = true;
    comp[g] += h.comp_weight(v);
    mem[g] += h.mem_weight(v);
  }
  for (std::uint32_t g = 0; g < groups; ++g) {
    if (!used[g]) throw InputError("coarsening group " + std::to_string(g) + " is empty");
  }

  // Coarse nets in CSR form; identical pin sets are merged via a hash index.
  std::vector<std::size_t> offsets{0};
  std::vector<VertexId> pins;
  std::vector<Weight> costs;
  std::vector<NetId> first_source;
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  index.reserve(h.num_nets());
  std::vector<VertexId> scratch;
  std::vector<NetId> stamp(groups, static_cast<NetId>(-1));
  for (NetId n = 0; n < h.num_nets(); ++n) {
    scratch.clear();
    for (VertexId v : h.pins(n)) {
      const VertexId g = map.group_of[v];
      if (stamp[g] != n) {
        stamp[g] = n;
        scratch.push_back(g);
      }
    }
    if (scratch.size() < 2) continue;
    std::sort(scratch.begin(), scratch.end());
    const std::uint64_t key = hash_pins(scratch);
    bool merged = false;
    auto [lo, hi] = index.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      const std::size_t c = it->second;
      if (std::equal(scratch.begin(), scratch.end(), pins.begin() + static_cast<std::ptrdiff_t>(offsets[c]),
                     pins.begin() + static_cast<std::ptrdiff_t>(offsets[c + 1]))) {
        costs[c] += h.net_cost(n);
        merged = true;
        break;
      }
    }
    if (merged) continue;
    index.emplace(key, costs.size());
    pins.insert(pins.end(), scratch.begin(), scratch.end());
    offsets.push_back(pins.size());
    costs.push_back(h.net_cost(n));
    first_source.push_back(n);
  }

  HypergraphBuilder hb;
  for (std::uint32_t g = 0; g < groups; ++g) {
    Label l = map.group_labels.empty() ? Label::coarse("g", {static_cast<Index>(g)}) : map.group_labels[g];
    hb.add_vertex(std::move(l), comp[g], mem[g]);
  }
  for (std::size_t c = 0; c < costs.size(); ++c) {
    hb.add_net(h.net_label(first_source[c]), costs[c],
               std::span<const VertexId>(pins.data() + offsets[c], offsets[c + 1] - offsets[c]));
  }
  return std::move(hb).build();
}

CoarseningMap natural_coarsening(const Hypergraph& fine, ModelKind kind) {
  auto group_label = [kind](const Label& l) -> Label {
    const Index x = l.idx[0], y = l.idx[1], z = l.idx[2];
    switch (kind) {
      case ModelKind::FineGrained: return l;
      case ModelKind::RowWise:
        if (l.kind == LabelKind::NzB) return Label::coarse("brow", {x});
        return Label::coarse("row", {x});
      case ModelKind::ColWise:
        if (l.kind == LabelKind::NzA) return Label::coarse("acol", {y});
        if (l.kind == LabelKind::Mult) return Label::coarse("col", {z});
        return Label::coarse("col", {y});
      case ModelKind::OuterProduct:
        if (l.kind == LabelKind::NzC) return l;
        if (l.kind == LabelKind::NzB) return Label::coarse("outer", {x});
        return Label::coarse("outer", {y});
      case ModelKind::MonoA:
        if (l.kind == LabelKind::NzC) return l;
        if (l.kind == LabelKind::NzB) return Label::coarse("brow", {x});
        return Label::coarse("afib", {x, y});
      case ModelKind::MonoB:
        if (l.kind == LabelKind::NzC) return l;
        if (l.kind == LabelKind::NzA) return Label::coarse("acol", {y});
        if (l.kind == LabelKind::Mult) return Label::coarse("bfib", {y, z});
        return Label::coarse("bfib", {x, y});
      case ModelKind::MonoC:
        if (l.kind == LabelKind::NzA || l.kind == LabelKind::NzB) return l;
        if (l.kind == LabelKind::Mult) return Label::coarse("cfib", {x, z});
        return Label::coarse("cfib", {x, y});
      default:
        throw InputError("no natural coarsening for model '" + std::string(model_name(kind)) + "'");
    }
  };

  CoarseningMap map;
  map.group_of.resize(fine.num_vertices());
  std::map<std::tuple<LabelKind, std::string, Index, Index, Index>, std::uint32_t> seen;
  for (VertexId v = 0; v < fine.num_vertices(); ++v) {
    const Label& l = fine.vertex_label(v);
    if (l.kind == LabelKind::Coarse) throw InputError("natural coarsening needs a fine-grained hypergraph");
    Label g = group_label(l);
    auto key = std::make_tuple(g.kind, g.tag, g.idx[0], g.idx[1], g.idx[2]);
    auto [it, inserted] = seen.emplace(key, static_cast<std::uint32_t>(map.group_labels.size()));
    if (inserted) map.group_labels.push_back(std::move(g));
    map.group_of[v] = it->second;
  }
  return map;
}

}  // namespace spgemm_hg
