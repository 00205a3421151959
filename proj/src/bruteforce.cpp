#include <algorithm>

#include "partition_state.hpp"
#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

namespace {

// Depth-first enumeration of restricted growth strings. Both objectives are
// monotone under extending a partial assignment (a net already spanning two
// parts stays cut), so a partial score that is not better than the incumbent
// can be pruned.
class Search {
 public:
  Search(const Hypergraph& h, const PartitionConfig& cfg)
      : h_(h), p_(cfg.p), objective_(cfg.objective), caps_(balance_caps(h, cfg)) {
    phi_.assign(h.num_nets() * p_, 0);
    assigned_.assign(h.num_nets(), 0);
    lambda_.assign(h.num_nets(), 0);
    comp_.assign(p_, 0);
    mem_.assign(p_, 0);
    cut_.assign(p_, 0);
    part_.assign(h.num_vertices(), 0);
  }

  bool run() {
    dfs(0, 0);
    return found_;
  }

  const std::vector<PartId>& best() const { return best_; }

 private:
  detail::Score score() const {
    const Weight mx = *std::max_element(cut_.begin(), cut_.end());
    if (objective_ == Objective::Connectivity) return {0, conn_, mx};
    return {0, mx, conn_};
  }

  void net_contribution(NetId n, Weight sign) {
    const Weight cost = h_.net_cost(n);
    if (lambda_[n] > 1) conn_ += sign * cost * (lambda_[n] - 1);
    const std::uint32_t* row = &phi_[static_cast<std::size_t>(n) * p_];
    for (PartId i = 0; i < p_; ++i) {
      if (row[i] > 0 && row[i] < assigned_[n]) cut_[i] += sign * cost;
    }
  }

  void assign(VertexId v, PartId i, int dir) {
    for (NetId n : h_.incident_nets(v)) {
      net_contribution(n, -1);
      std::uint32_t& c = phi_[static_cast<std::size_t>(n) * p_ + i];
      if (dir > 0) {
        if (c++ == 0) ++lambda_[n];
        ++assigned_[n];
      } else {
        if (--c == 0) --lambda_[n];
        --assigned_[n];
      }
      net_contribution(n, +1);
    }
    comp_[i] += dir * h_.comp_weight(v);
    mem_[i] += dir * h_.mem_weight(v);
  }

  void dfs(VertexId v, PartId used) {
    if (found_ && !detail::better(score(), best_score_)) return;
    if (v == h_.num_vertices()) {
      found_ = true;
      best_score_ = score();
      best_ = part_;
      return;
    }
    const PartId limit = std::min(p_, used + 1);
    for (PartId i = 0; i < limit; ++i) {
      if (static_cast<double>(comp_[i] + h_.comp_weight(v)) > caps_.comp[i]) continue;
      if (!caps_.mem.empty() && static_cast<double>(mem_[i] + h_.mem_weight(v)) > caps_.mem[i]) continue;
      part_[v] = i;
      assign(v, i, +1);
      dfs(v + 1, std::max(used, i + 1));
      assign(v, i, -1);
    }
  }

  const Hypergraph& h_;
  PartId p_;
  Objective objective_;
  BalanceCaps caps_;
  std::vector<std::uint32_t> phi_, assigned_, lambda_;
  std::vector<Weight> comp_, mem_, cut_;
  Weight conn_ = 0;
  std::vector<PartId> part_;
  bool found_ = false;
  detail::Score best_score_;
  std::vector<PartId> best_;
};

}  // namespace

PartitionResult partition_bruteforce(const Hypergraph& h, const PartitionConfig& cfg, BruteForceGuard guard) {
  if (h.num_vertices() > guard.max_vertices || cfg.p > guard.max_parts) {
    throw GuardExceeded("exhaustive search is limited to " + std::to_string(guard.max_vertices) +
                        " vertices and " + std::to_string(guard.max_parts) + " parts (got " +
                        std::to_string(h.num_vertices()) + " vertices, " + std::to_string(cfg.p) + " parts)");
  }
  check_feasible(h, cfg);
  Search search(h, cfg);
  if (!search.run()) throw InputError("no balanced partition exists");

  PartitionResult result;
  result.partition = {cfg.p, search.best()};
  detail::PartitionState st(h, cfg.p, search.best(), balance_caps(h, cfg), cfg.objective);
  result.balanced = true;
  result.max_cut = st.max_cut();
  result.connectivity = st.connectivity();
  return result;
}

}  // namespace spgemm_hg
