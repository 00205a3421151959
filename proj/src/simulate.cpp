#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"
#include "spgemm_hg/models.hpp"

namespace spgemm_hg {

namespace {

// Depth of node t in a complete binary tree numbered level by level.
Weight depth(std::size_t t) {
  Weight d = 0;
  while (t > 0) t = (t - 1) / 2, ++d;
  return d;
}

}  // namespace

ScheduleTrace simulate_parallel(const NonzeroStructure& a, const NonzeroStructure& b, const Partition& part) {
  const Hypergraph h = build_fine_grained(a, b, true);
  check_partition(h, part);
  ScheduleTrace tr;
  tr.sends.assign(part.p, 0);
  tr.recvs.assign(part.p, 0);

  std::vector<PartId> nodes;
  std::vector<char> seen(part.p, 0);
  for (NetId n = 0; n < h.num_nets(); ++n) {
    auto pins = h.pins(n);
    // The nonzero's own vertex is the last pin; the rest are multiplications.
    const PartId owner = part.part[pins.back()];
    nodes.clear();
    for (std::size_t t = 0; t + 1 < pins.size(); ++t) {
      const PartId i = part.part[pins[t]];
      if (i != owner && !seen[i]) seen[i] = 1, nodes.push_back(i);
    }
    for (PartId i : nodes) seen[i] = 0;
    if (nodes.empty()) continue;
    std::sort(nodes.begin(), nodes.end());
    nodes.insert(nodes.begin(), owner);

    const bool fold = h.net_label(n).kind == LabelKind::NzC;
    for (std::size_t t = 1; t < nodes.size(); ++t) {
      const PartId parent = nodes[(t - 1) / 2];
      if (fold) {
        ++tr.sends[nodes[t]];
        ++tr.recvs[parent];
      } else {
        ++tr.sends[parent];
        ++tr.recvs[nodes[t]];
      }
    }
    const Weight words = static_cast<Weight>(nodes.size() - 1);
    const Weight d = depth(nodes.size() - 1);
    if (fold) {
      tr.fold_words += words;
      tr.fold_steps = std::max(tr.fold_steps, d);
    } else {
      tr.expand_words += words;
      tr.expand_steps = std::max(tr.expand_steps, d);
    }
  }
  tr.steps = tr.expand_steps + tr.fold_steps;
  return tr;
}

IoTrace simulate_sequential_blocked(const NonzeroStructure& a, const NonzeroStructure& b, const Partition& part,
                                    Weight fast_memory) {
  if (fast_memory < 3) throw InputError("fast memory must hold at least 3 words");
  const SymbolicProduct prod = symbolic_multiply(a, b);
  const auto& mults = prod.mults.triples;
  if (part.part.size() < mults.size()) {
    throw InputError("partition covers " + std::to_string(part.part.size()) + " vertices, need at least " +
                     std::to_string(mults.size()));
  }
  const Weight m = fast_memory / 3;

  // Row-major positions of the operands of every multiplication.
  struct Ids {
    Index a, b, c;
  };
  std::vector<Ids> ids(mults.size());
  for (std::size_t t = 0; t < mults.size(); ++t) {
    const Triple& x = mults[t];
    ids[t] = {a.find(x.i, x.k), b.find(x.k, x.j), prod.c.find(x.i, x.j)};
  }

  // Chunk of each id within its part's W-set.
  std::map<PartId, std::array<std::vector<Index>, 3>> wsets;
  for (std::size_t t = 0; t < mults.size(); ++t) {
    const PartId i = part.part[t];
    if (i >= part.p) throw InputError("vertex " + std::to_string(t) + " has part " + std::to_string(i));
    auto& w = wsets[i];
    w[0].push_back(ids[t].a);
    w[1].push_back(ids[t].b);
    w[2].push_back(ids[t].c);
  }
  for (auto& [i, w] : wsets) {
    for (auto& s : w) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }
  auto chunk = [&](const std::vector<Index>& s, Index id) {
    return static_cast<Weight>(std::lower_bound(s.begin(), s.end(), id) - s.begin()) / m;
  };

  std::map<std::tuple<PartId, Weight, Weight, Weight>, std::vector<std::size_t>> blocks;
  for (std::size_t t = 0; t < mults.size(); ++t) {
    const PartId i = part.part[t];
    const auto& w = wsets[i];
    blocks[{i, chunk(w[0], ids[t].a), chunk(w[1], ids[t].b), chunk(w[2], ids[t].c)}].push_back(t);
  }

  IoTrace tr;
  tr.fast_memory = fast_memory;
  std::set<Index> written;
  for (const auto& [key, members] : blocks) {
    std::set<Index> sa, sb, sc;
    for (std::size_t t : members) {
      sa.insert(ids[t].a);
      sb.insert(ids[t].b);
      sc.insert(ids[t].c);
    }
    tr.loads += static_cast<Weight>(sa.size() + sb.size());
    for (Index c : sc) {
      if (!written.insert(c).second) ++tr.loads;
    }
    tr.stores += static_cast<Weight>(sc.size());
    ++tr.blocks;
  }
  return tr;
}

}  // namespace spgemm_hg
