#include <algorithm>
#include <queue>
#include <tuple>

#include "partition_state.hpp"
#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

namespace detail {

namespace {

// Nets larger than this are not used to trigger gain updates of their pins.
constexpr std::size_t kUpdateNetLimit = 2000;

struct Entry {
  Score gain;  // before - after, component-wise
  VertexId v;
  std::uint32_t stamp;
};

// Moves that do not add overload come first, then objective gain decides.
bool gain_less(const Score& x, const Score& y) {
  const bool kx = x.overload > -1e-9, ky = y.overload > -1e-9;
  return std::tie(kx, x.primary, x.secondary, x.overload) < std::tie(ky, y.primary, y.secondary, y.overload);
}

// Max-heap on gain, ties by lowest vertex.
struct EntryLess {
  bool operator()(const Entry& x, const Entry& y) const {
    if (gain_less(x.gain, y.gain)) return true;
    if (gain_less(y.gain, x.gain)) return false;
    return x.v > y.v;
  }
};

Score gain_of(const Score& before, const Score& after) {
  return {before.overload - after.overload, before.primary - after.primary, before.secondary - after.secondary};
}

bool on_boundary(const PartitionState& st, VertexId v) {
  for (NetId n : st.graph().incident_nets(v)) {
    if (st.lambda(n) > 1) return true;
  }
  return false;
}

bool fm_pass(PartitionState& st) {
  const Hypergraph& h = st.graph();
  const std::size_t nv = h.num_vertices();
  const std::size_t patience = std::min<std::size_t>(std::max<std::size_t>(100, nv / 10), 3000);

  std::vector<char> locked(nv, 0);
  std::vector<std::uint32_t> stamp(nv, 0);
  std::vector<std::uint32_t> mark(nv, 0);
  std::uint32_t tick = 0;
  std::vector<char> flooded(st.num_parts(), 0);
  std::priority_queue<Entry, std::vector<Entry>, EntryLess> heap;

  auto push = [&](VertexId v) {
    const auto c = st.best_move(v, st.overloaded(st.part(v)));
    ++stamp[v];
    if (c.allowed) heap.push({gain_of(st.score(), c.after), v, stamp[v]});
  };

  for (VertexId v = 0; v < nv; ++v) {
    if (st.overloaded(st.part(v)) || on_boundary(st, v)) push(v);
  }

  const Score start = st.score();
  Score best = start;
  std::vector<std::pair<VertexId, PartId>> log;
  std::size_t best_len = 0, since_best = 0;

  while (!heap.empty()) {
    const Entry e = heap.top();
    heap.pop();
    if (locked[e.v] || e.stamp != stamp[e.v]) continue;
    const auto c = st.best_move(e.v, st.overloaded(st.part(e.v)));
    if (!c.allowed) continue;
    const Score now = st.score();
    const Score gain = gain_of(now, c.after);
    if (gain_less(e.gain, gain)) {
      heap.push({gain, e.v, ++stamp[e.v]});
      continue;
    }

    const PartId from = st.part(e.v);
    st.move(e.v, c.to);
    locked[e.v] = 1;
    log.emplace_back(e.v, from);
    const Score s = st.score();
    if (better(s, best)) {
      best = s;
      best_len = log.size();
      since_best = 0;
    } else if (++since_best > patience) {
      break;
    }

    // The first time a part becomes overloaded, every vertex in it becomes a
    // candidate, including those without cut nets.
    if (!flooded[c.to] && st.overloaded(c.to)) {
      flooded[c.to] = 1;
      for (VertexId u = 0; u < nv; ++u) {
        if (!locked[u] && st.part(u) == c.to) push(u);
      }
    }

    ++tick;
    for (NetId n : h.incident_nets(e.v)) {
      const std::size_t size = h.net_size(n);
      if (size > kUpdateNetLimit) continue;
      const std::uint32_t pa = st.phi(n, from), pb = st.phi(n, c.to);
      const bool critical = pa <= 1 || pa + 2 >= size || pb <= 2 || pb + 1 >= size;
      if (!critical) continue;
      for (VertexId u : h.pins(n)) {
        if (locked[u] || mark[u] == tick) continue;
        mark[u] = tick;
        push(u);
      }
    }
  }

  while (log.size() > best_len) {
    st.move(log.back().first, log.back().second);
    log.pop_back();
  }
  return better(best, start);
}

}  // namespace

bool fm_refine(PartitionState& st, int passes) {
  // Let a pass step through states overloaded by up to one vertex, so that
  // tight budgets still admit pairs of moves. Rollback keeps only improvements.
  const Hypergraph& h = st.graph();
  Weight max_comp = 0, max_mem = 0;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    max_comp = std::max(max_comp, h.comp_weight(v));
    max_mem = std::max(max_mem, h.mem_weight(v));
  }
  st.set_slack(static_cast<double>(max_comp) + (st.caps().mem.empty() ? 0.0 : static_cast<double>(max_mem)));
  bool improved = false;
  for (int pass = 0; pass < passes; ++pass) {
    if (!fm_pass(st)) break;
    improved = true;
  }
  return improved;
}

}  // namespace detail

Partition refine_fm(const Hypergraph& h, const Partition& start, const PartitionConfig& cfg) {
  check_partition(h, start);
  if (start.p != cfg.p) {
    throw InputError("partition has " + std::to_string(start.p) + " parts, configuration asks for " +
                     std::to_string(cfg.p));
  }
  detail::PartitionState st(h, cfg.p, start.part, balance_caps(h, cfg), cfg.objective);
  detail::fm_refine(st, cfg.refinement_passes);
  return {cfg.p, st.parts()};
}

}  // namespace spgemm_hg
