#pragma once

#include <vector>

#include "spgemm_hg/hypergraph.hpp"
#include "spgemm_hg/partitioner.hpp"

namespace spgemm_hg::detail {

// Lexicographic score of a partition; smaller is better.
struct Score {
  double overload = 0;  // weight above the part budgets, summed over parts
  Weight primary = 0;
  Weight secondary = 0;
};

bool better(const Score& x, const Score& y);

// Incrementally maintained pin counts phi(n, i), part weights and per-part
// cut costs. Moving a vertex from a to b only changes the cut costs of a and b.
class PartitionState {
 public:
  PartitionState(const Hypergraph& h, PartId p, std::vector<PartId> part, BalanceCaps caps,
                 Objective objective);

  const Hypergraph& graph() const { return h_; }
  PartId num_parts() const { return p_; }
  PartId part(VertexId v) const { return part_[v]; }
  const std::vector<PartId>& parts() const { return part_; }
  std::uint32_t phi(NetId n, PartId i) const { return phi_[static_cast<std::size_t>(n) * p_ + i]; }
  std::uint32_t lambda(NetId n) const { return lambda_[n]; }
  Weight comp(PartId i) const { return comp_[i]; }
  Weight cut(PartId i) const { return cut_[i]; }
  Weight connectivity() const { return conn_; }
  Weight max_cut() const;
  double overload() const;
  bool overloaded(PartId i) const;
  Score score() const;
  const BalanceCaps& caps() const { return caps_; }

  // Score after moving v to b, without changing the state. `allowed` is false
  // when the move would increase the overload beyond max(current, slack).
  struct Candidate {
    PartId to = 0;
    Score after;
    bool allowed = false;
  };
  // Best move of v (lowest resulting score, then lowest target part). When
  // `all_parts` is false only parts already adjacent through a net are tried.
  Candidate best_move(VertexId v, bool all_parts) const;

  void move(VertexId v, PartId to);
  void set_slack(double slack) { slack_ = slack; }

 private:
  double part_overload(PartId i, Weight comp, Weight mem) const;

  const Hypergraph& h_;
  PartId p_;
  std::vector<PartId> part_;
  BalanceCaps caps_;
  Objective objective_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> lambda_;
  std::vector<Weight> comp_;
  std::vector<Weight> mem_;
  std::vector<Weight> cut_;
  Weight conn_ = 0;
  double slack_ = 0;
  // Scratch for best_move.
  mutable std::vector<Weight> s_touch_;
  mutable std::vector<Weight> s_full_;
  mutable std::vector<PartId> s_parts_;
};

// FM passes with best-prefix rollback on `state`. Returns true if the score
// improved.
bool fm_refine(PartitionState& state, int passes);

}  // namespace spgemm_hg::detail
