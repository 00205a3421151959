#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "partition_state.hpp"
#include "spgemm_hg/error.hpp"
#include "spgemm_hg/models.hpp"

namespace spgemm_hg {

namespace {

using detail::PartitionState;

constexpr std::size_t kClusterNetLimit = 256;
constexpr std::size_t kMaxMembers = 16;

Weight max_comp_weight(const Hypergraph& h) {
  Weight w = 0;
  for (VertexId v = 0; v < h.num_vertices(); ++v) w = std::max(w, h.comp_weight(v));
  return w;
}

// Heavy-connectivity clustering: vertices are visited in random order and
// join the neighbor (or the neighbor's cluster) they share the most
// cost / (size - 1) with, subject to a weight limit.
CoarseningMap cluster(const Hypergraph& h, std::mt19937_64& rng, Weight max_comp) {
  const std::size_t nv = h.num_vertices();
  std::vector<VertexId> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> cid(nv, kNone);
  std::vector<Weight> cweight;
  std::vector<std::size_t> ccount;
  std::vector<double> score(nv, 0.0);
  std::vector<VertexId> touched;

  for (VertexId u : order) {
    if (cid[u] != kNone) continue;
    touched.clear();
    for (NetId n : h.incident_nets(u)) {
      const std::size_t size = h.net_size(n);
      if (size < 2 || size > kClusterNetLimit) continue;
      const double w = static_cast<double>(h.net_cost(n)) / static_cast<double>(size - 1);
      for (VertexId x : h.pins(n)) {
        if (x == u) continue;
        if (score[x] == 0.0) touched.push_back(x);
        score[x] += w;
      }
    }
    VertexId best = static_cast<VertexId>(nv);
    double best_score = 0.0;
    for (VertexId x : touched) {
      const std::uint32_t c = cid[x];
      const Weight weight = c == kNone ? h.comp_weight(x) : cweight[c];
      const std::size_t count = c == kNone ? 1 : ccount[c];
      if (weight + h.comp_weight(u) > max_comp || count + 1 > kMaxMembers) continue;
      if (score[x] > best_score) {
        best_score = score[x];
        best = x;
      }
    }
    for (VertexId x : touched) score[x] = 0.0;

    if (best == nv) {
      cid[u] = static_cast<std::uint32_t>(cweight.size());
      cweight.push_back(h.comp_weight(u));
      ccount.push_back(1);
    } else if (cid[best] == kNone) {
      cid[u] = cid[best] = static_cast<std::uint32_t>(cweight.size());
      cweight.push_back(h.comp_weight(u) + h.comp_weight(best));
      ccount.push_back(2);
    } else {
      cid[u] = cid[best];
      cweight[cid[u]] += h.comp_weight(u);
      ++ccount[cid[u]];
    }
  }
  return {std::move(cid), {}};
}

// Sub-hypergraph on `verts`; nets keep only their pins inside the subset and
// are dropped below two pins.
Hypergraph induced(const Hypergraph& h, const std::vector<VertexId>& verts) {
  std::vector<VertexId> local(h.num_vertices(), static_cast<VertexId>(-1));
  HypergraphBuilder hb;
  for (VertexId v : verts) local[v] = hb.add_vertex(h.vertex_label(v), h.comp_weight(v), h.mem_weight(v));
  std::vector<char> seen(h.num_nets(), 0);
  std::vector<VertexId> pins;
  for (VertexId v : verts) {
    for (NetId n : h.incident_nets(v)) {
      if (seen[n]) continue;
      seen[n] = 1;
      pins.clear();
      for (VertexId x : h.pins(n)) {
        if (local[x] != static_cast<VertexId>(-1)) pins.push_back(local[x]);
      }
      if (pins.size() >= 2) hb.add_net(h.net_label(n), h.net_cost(n), pins);
    }
  }
  return std::move(hb).build();
}

// Grows part 0 from a random seed by repeatedly absorbing the part-1 vertex
// whose move costs least, until part 0 reaches its target weight.
std::vector<PartId> greedy_grow(const Hypergraph& s, double target, const BalanceCaps& caps,
                                std::mt19937_64& rng) {
  const std::size_t nv = s.num_vertices();
  PartitionState st(s, 2, std::vector<PartId>(nv, 1), caps, Objective::Connectivity);
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  st.move(static_cast<VertexId>(pick(rng)), 0);
  while (static_cast<double>(st.comp(0)) < target) {
    VertexId best = static_cast<VertexId>(nv);
    detail::Score best_score;
    std::vector<VertexId> ties;
    for (VertexId v = 0; v < nv; ++v) {
      if (st.part(v) != 1) continue;
      const auto c = st.best_move(v, true);
      if (!c.allowed) continue;
      if (best == nv || detail::better(c.after, best_score)) {
        best = v;
        best_score = c.after;
        ties.assign(1, v);
      } else if (!detail::better(best_score, c.after)) {
        ties.push_back(v);
      }
    }
    if (best == nv) break;
    std::uniform_int_distribution<std::size_t> tie(0, ties.size() - 1);
    st.move(ties[tie(rng)], 0);
  }
  return st.parts();
}

// Random split: vertices in random order fill part 0 up to the target weight.
std::vector<PartId> random_split(const Hypergraph& s, double target, std::mt19937_64& rng) {
  std::vector<VertexId> order(s.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<PartId> part(s.num_vertices(), 1);
  double w = 0;
  for (VertexId v : order) {
    if (w + static_cast<double>(s.comp_weight(v)) > target) continue;
    w += static_cast<double>(s.comp_weight(v));
    part[v] = 0;
  }
  return part;
}

struct Bisector {
  const PartitionConfig& cfg;
  double level_eps;
  std::mt19937_64& rng;
  std::vector<PartId>& out;

  void run(const Hypergraph& h, const std::vector<VertexId>& verts, PartId lo, PartId k) {
    if (k == 1) {
      for (VertexId v : verts) out[v] = lo;
      return;
    }
    if (verts.size() <= k) {
      for (std::size_t t = 0; t < verts.size(); ++t) out[verts[t]] = lo + static_cast<PartId>(t);
      return;
    }
    const Hypergraph s = induced(h, verts);
    const PartId kl = k / 2, kr = k - kl;
    const double w = static_cast<double>(s.total_comp());
    BalanceCaps caps;
    const double tol = 1e-9 * std::max(1.0, w);
    caps.comp = {(1 + level_eps) * w * kl / k + tol, (1 + level_eps) * w * kr / k + tol};

    const int tries = s.num_vertices() <= 64 ? 20 : 8;
    std::vector<PartId> best;
    detail::Score best_score;
    for (int t = 0; t < tries; ++t) {
      // Alternate greedy growing with random starts; they fall into different basins.
      auto start = t % 2 == 0 ? greedy_grow(s, w * kl / k, caps, rng) : random_split(s, caps.comp[0], rng);
      PartitionState st(s, 2, std::move(start), caps, Objective::Connectivity);
      detail::fm_refine(st, cfg.refinement_passes);
      if (best.empty() || detail::better(st.score(), best_score)) {
        best = st.parts();
        best_score = st.score();
      }
    }
    std::vector<VertexId> left, right;
    for (std::size_t t = 0; t < verts.size(); ++t) (best[t] == 0 ? left : right).push_back(verts[t]);
    run(h, left, lo, kl);
    run(h, right, lo + kl, kr);
  }
};

}  // namespace

PartitionResult partition_multilevel(const Hypergraph& h, const PartitionConfig& cfg) {
  check_feasible(h, cfg);
  PartitionResult result;
  if (cfg.p == 1) {
    result.partition = Partition::single(1, h.num_vertices());
    result.balanced = true;
    return result;
  }
  std::mt19937_64 rng(cfg.seed);

  // Coarsening.
  const std::size_t target = std::max<std::size_t>(4 * cfg.p, 80);
  std::deque<Hypergraph> levels;
  std::vector<std::vector<std::uint32_t>> maps;
  const Hypergraph* cur = &h;
  const Weight max_comp =
      std::max(max_comp_weight(h), static_cast<Weight>(std::ceil(static_cast<double>(h.total_comp()) / target)));
  while (cur->num_vertices() > target) {
    CoarseningMap map = cluster(*cur, rng, max_comp);
    std::uint32_t groups = 0;
    for (std::uint32_t g : map.group_of) groups = std::max(groups, g + 1);
    if (groups < 2 * cfg.p || groups > 0.95 * static_cast<double>(cur->num_vertices())) break;
    levels.push_back(coarsen(*cur, map));
    maps.push_back(std::move(map.group_of));
    cur = &levels.back();
  }

  // Initial partition of the coarsest level.
  std::vector<PartId> part(cur->num_vertices(), 0);
  const double log_p = std::ceil(std::log2(static_cast<double>(cfg.p)));
  Bisector bis{cfg, std::pow(1.0 + cfg.epsilon, 1.0 / log_p) - 1.0, rng, part};
  std::vector<VertexId> all(cur->num_vertices());
  std::iota(all.begin(), all.end(), 0);
  bis.run(*cur, all, 0, cfg.p);

  // Uncoarsening with k-way refinement on every level.
  for (std::size_t level = levels.size() + 1; level-- > 0;) {
    const Hypergraph& g = level == 0 ? h : levels[level - 1];
    if (level < levels.size()) {
      const auto& map = maps[level];
      std::vector<PartId> fine(g.num_vertices());
      for (VertexId v = 0; v < g.num_vertices(); ++v) fine[v] = part[map[v]];
      part = std::move(fine);
    }
    PartitionState st(g, cfg.p, std::move(part), balance_caps(g, cfg), cfg.objective);
    detail::fm_refine(st, cfg.refinement_passes);
    part = st.parts();
    if (level == 0) {
      result.max_cut = st.max_cut();
      result.connectivity = st.connectivity();
      result.balanced = st.overload() == 0.0;
    }
  }
  result.partition = {cfg.p, std::move(part)};
  return result;
}

}  // namespace spgemm_hg
