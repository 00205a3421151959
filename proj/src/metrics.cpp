#include "spgemm_hg/metrics.hpp"

#include <algorithm>

namespace spgemm_hg {

std::vector<std::vector<NetId>> cut_sets(const Hypergraph& h, const Partition& part) {
  check_partition(h, part);
  std::vector<std::vector<NetId>> q(part.p);
  std::vector<std::uint32_t> count(part.p, 0);
  std::vector<PartId> touched;
  for (NetId n = 0; n < h.num_nets(); ++n) {
    touched.clear();
    for (VertexId v : h.pins(n)) {
      if (count[part.part[v]]++ == 0) touched.push_back(part.part[v]);
    }
    std::sort(touched.begin(), touched.end());
    for (PartId i : touched) {
      if (count[i] < h.net_size(n)) q[i].push_back(n);
      count[i] = 0;
    }
  }
  return q;
}

CommReport comm_report(const Hypergraph& h, const Partition& part) {
  const auto q = cut_sets(h, part);
  CommReport r;
  r.per_part_cut.assign(part.p, 0);
  for (PartId i = 0; i < part.p; ++i) {
    for (NetId n : q[i]) r.per_part_cut[i] += h.net_cost(n);
  }
  r.max_cut = *std::max_element(r.per_part_cut.begin(), r.per_part_cut.end());

  std::vector<char> seen(part.p, 0);
  std::vector<PartId> touched;
  for (NetId n = 0; n < h.num_nets(); ++n) {
    touched.clear();
    for (VertexId v : h.pins(n)) {
      if (!seen[part.part[v]]) seen[part.part[v]] = 1, touched.push_back(part.part[v]);
    }
    if (!touched.empty()) r.connectivity += h.net_cost(n) * static_cast<Weight>(touched.size() - 1);
    for (PartId i : touched) seen[i] = 0;
  }

  std::vector<Weight> comp(part.p, 0), mem(part.p, 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    comp[part.part[v]] += h.comp_weight(v);
    mem[part.part[v]] += h.mem_weight(v);
  }
  auto ratio = [&](const std::vector<Weight>& w, Weight total) {
    if (total == 0) return kUnbounded;
    const Weight mx = *std::max_element(w.begin(), w.end());
    return static_cast<double>(mx) * part.p / static_cast<double>(total) - 1.0;
  };
  r.achieved_epsilon = ratio(comp, h.total_comp());
  r.achieved_delta = ratio(mem, h.total_mem());
  return r;
}

}  // namespace spgemm_hg
