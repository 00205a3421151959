#include "partition_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

std::string_view objective_name(Objective o) {
  return o == Objective::Connectivity ? "connectivity" : "max-cut";
}

Objective parse_objective(std::string_view name) {
  if (name == "connectivity") return Objective::Connectivity;
  if (name == "max-cut") return Objective::MaxPartCut;
  throw InputError("unknown objective '" + std::string(name) + "'");
}

BalanceCaps balance_caps(const Hypergraph& h, const PartitionConfig& cfg) {
  BalanceCaps caps;
  const double p = cfg.p;
  const double wc = static_cast<double>(h.total_comp());
  caps.comp.assign(cfg.p, (1.0 + cfg.epsilon) * wc / p + kTol * std::max(1.0, wc));
  if (cfg.delta) {
    const double wm = static_cast<double>(h.total_mem());
    caps.mem.assign(cfg.p, (1.0 + *cfg.delta) * wm / p + kTol * std::max(1.0, wm));
  }
  return caps;
}

bool is_balanced(const Hypergraph& h, const Partition& part, const PartitionConfig& cfg) {
  const BalanceCaps caps = balance_caps(h, cfg);
  std::vector<Weight> comp(part.p, 0), mem(part.p, 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    comp[part.part[v]] += h.comp_weight(v);
    mem[part.part[v]] += h.mem_weight(v);
  }
  for (PartId i = 0; i < part.p; ++i) {
    if (static_cast<double>(comp[i]) > caps.comp[i]) return false;
    if (!caps.mem.empty() && static_cast<double>(mem[i]) > caps.mem[i]) return false;
  }
  return true;
}

void check_feasible(const Hypergraph& h, const PartitionConfig& cfg) {
  if (cfg.p == 0) throw InputError("number of parts must be at least 1");
  if (cfg.epsilon < 0 || (cfg.delta && *cfg.delta < 0)) throw InputError("imbalance tolerance must be nonnegative");
  if (cfg.p > h.num_vertices()) {
    throw InputError("cannot split " + std::to_string(h.num_vertices()) + " vertices into " +
                     std::to_string(cfg.p) + " parts");
  }
  const BalanceCaps caps = balance_caps(h, cfg);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (static_cast<double>(h.comp_weight(v)) > caps.comp[0]) {
      throw InfeasibleBalance(v, "vertex " + std::to_string(v) + " (" + h.vertex_label(v).to_string() +
                                     ") has computation weight " + std::to_string(h.comp_weight(v)) +
                                     ", above the per-part budget " + std::to_string(caps.comp[0]));
    }
    if (!caps.mem.empty() && static_cast<double>(h.mem_weight(v)) > caps.mem[0]) {
      throw InfeasibleBalance(v, "vertex " + std::to_string(v) + " (" + h.vertex_label(v).to_string() +
                                     ") has memory weight " + std::to_string(h.mem_weight(v)) +
                                     ", above the per-part budget " + std::to_string(caps.mem[0]));
    }
  }
}

namespace detail {

bool better(const Score& x, const Score& y) {
  if (std::abs(x.overload - y.overload) > kTol) return x.overload < y.overload;
  if (x.primary != y.primary) return x.primary < y.primary;
  return x.secondary < y.secondary;
}

PartitionState::PartitionState(const Hypergraph& h, PartId p, std::vector<PartId> part,
                               BalanceCaps caps, Objective objective)
    : h_(h), p_(p), part_(std::move(part)), caps_(std::move(caps)), objective_(objective) {
  phi_.assign(h.num_nets() * p_, 0);
  lambda_.assign(h.num_nets(), 0);
  comp_.assign(p_, 0);
  mem_.assign(p_, 0);
  cut_.assign(p_, 0);
  s_touch_.assign(p_, 0);
  s_full_.assign(p_, 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    comp_[part_[v]] += h.comp_weight(v);
    mem_[part_[v]] += h.mem_weight(v);
  }
  for (NetId n = 0; n < h.num_nets(); ++n) {
    std::uint32_t* row = &phi_[static_cast<std::size_t>(n) * p_];
    for (VertexId v : h.pins(n)) {
      if (row[part_[v]]++ == 0) ++lambda_[n];
    }
    conn_ += h.net_cost(n) * (lambda_[n] - 1);
    if (lambda_[n] > 1) {
      for (PartId i = 0; i < p_; ++i) {
        if (row[i] > 0) cut_[i] += h.net_cost(n);
      }
    }
  }
}

Weight PartitionState::max_cut() const { return *std::max_element(cut_.begin(), cut_.end()); }

double PartitionState::part_overload(PartId i, Weight comp, Weight mem) const {
  double over = std::max(0.0, static_cast<double>(comp) - caps_.comp[i]);
  if (!caps_.mem.empty()) over += std::max(0.0, static_cast<double>(mem) - caps_.mem[i]);
  return over;
}

double PartitionState::overload() const {
  double over = 0;
  for (PartId i = 0; i < p_; ++i) over += part_overload(i, comp_[i], mem_[i]);
  return over;
}

bool PartitionState::overloaded(PartId i) const { return part_overload(i, comp_[i], mem_[i]) > 0; }

Score PartitionState::score() const {
  if (objective_ == Objective::Connectivity) return {overload(), conn_, max_cut()};
  return {overload(), max_cut(), conn_};
}

PartitionState::Candidate PartitionState::best_move(VertexId v, bool all_parts) const {
  const PartId a = part_[v];
  Weight leave = 0, total = 0, total_multi = 0, dcut_a = 0;
  s_parts_.clear();
  for (NetId n : h_.incident_nets(v)) {
    const Weight cost = h_.net_cost(n);
    const std::uint32_t size = static_cast<std::uint32_t>(h_.net_size(n));
    const std::uint32_t* row = &phi_[static_cast<std::size_t>(n) * p_];
    total += cost;
    if (size >= 2) total_multi += cost;
    if (row[a] == 1) leave += cost;
    dcut_a += cost * ((row[a] >= 2 ? 1 : 0) - (row[a] < size ? 1 : 0));
    if (lambda_[n] == 1) continue;
    for (PartId b = 0; b < p_; ++b) {
      if (b == a || row[b] == 0) continue;
      if (s_touch_[b] == 0 && s_full_[b] == 0) s_parts_.push_back(b);
      s_touch_[b] += cost;
      if (row[b] == size - 1) s_full_[b] += cost;
    }
  }
  if (all_parts) {
    for (PartId b = 0; b < p_; ++b) {
      if (b != a && s_touch_[b] == 0 && s_full_[b] == 0) s_parts_.push_back(b);
    }
  }
  std::sort(s_parts_.begin(), s_parts_.end());

  // Largest three cut costs, to get the max over parts other than a and b.
  std::array<PartId, 3> top{p_, p_, p_};
  for (PartId i = 0; i < p_; ++i) {
    for (int t = 0; t < 3; ++t) {
      if (top[t] == p_ || cut_[i] > cut_[top[t]]) {
        for (int s = 2; s > t; --s) top[s] = top[s - 1];
        top[t] = i;
        break;
      }
    }
  }

  const double over_now = overload();
  const Weight wc = h_.comp_weight(v), wm = h_.mem_weight(v);
  Candidate best;
  bool have = false;
  for (PartId b : s_parts_) {
    const Weight conn = conn_ + (total - s_touch_[b]) - leave;
    const Weight cut_a = cut_[a] + dcut_a;
    const Weight cut_b = cut_[b] + (total_multi - s_touch_[b] - s_full_[b]);
    Weight mx = std::max(cut_a, cut_b);
    for (PartId t : top) {
      if (t != p_ && t != a && t != b) {
        mx = std::max(mx, cut_[t]);
        break;
      }
    }
    const double over = over_now - part_overload(a, comp_[a], mem_[a]) - part_overload(b, comp_[b], mem_[b]) +
                        part_overload(a, comp_[a] - wc, mem_[a] - wm) +
                        part_overload(b, comp_[b] + wc, mem_[b] + wm);
    Candidate c;
    c.to = b;
    c.allowed = over <= std::max(over_now, slack_) + kTol;
    c.after = objective_ == Objective::Connectivity ? Score{over, conn, mx} : Score{over, mx, conn};
    if (c.allowed && (!have || better(c.after, best.after))) {
      best = c;
      have = true;
    }
  }
  for (PartId b : s_parts_) s_touch_[b] = 0, s_full_[b] = 0;
  return best;
}

void PartitionState::move(VertexId v, PartId to) {
  const PartId a = part_[v];
  if (a == to) return;
  for (NetId n : h_.incident_nets(v)) {
    const Weight cost = h_.net_cost(n);
    const std::uint32_t size = static_cast<std::uint32_t>(h_.net_size(n));
    std::uint32_t* row = &phi_[static_cast<std::size_t>(n) * p_];
    const bool cut_a0 = row[a] > 0 && row[a] < size;
    const bool cut_b0 = row[to] > 0 && row[to] < size;
    const std::uint32_t lambda0 = lambda_[n];
    --row[a];
    ++row[to];
    if (row[a] == 0) --lambda_[n];
    if (row[to] == 1) ++lambda_[n];
    conn_ += cost * (static_cast<Weight>(lambda_[n]) - static_cast<Weight>(lambda0));
    const bool cut_a1 = row[a] > 0 && row[a] < size;
    const bool cut_b1 = row[to] > 0 && row[to] < size;
    cut_[a] += cost * (static_cast<int>(cut_a1) - static_cast<int>(cut_a0));
    cut_[to] += cost * (static_cast<int>(cut_b1) - static_cast<int>(cut_b0));
  }
  comp_[a] -= h_.comp_weight(v);
  mem_[a] -= h_.mem_weight(v);
  comp_[to] += h_.comp_weight(v);
  mem_[to] += h_.mem_weight(v);
  part_[v] = to;
}

}  // namespace detail
}  // namespace spgemm_hg
