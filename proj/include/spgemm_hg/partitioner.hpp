#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "spgemm_hg/hypergraph.hpp"

namespace spgemm_hg {

enum class Objective { Connectivity, MaxPartCut };

std::string_view objective_name(Objective o);  // "connectivity" / "max-cut"
Objective parse_objective(std::string_view name);

struct PartitionConfig {
  PartId p = 2;
  double epsilon = 0.01;
  std::optional<double> delta;  // memory imbalance; unconstrained when empty
  Objective objective = Objective::Connectivity;
  std::uint64_t seed = 0;
  int refinement_passes = 4;
};

// Per-part weight budgets: w(V_i) <= (1 + eps) * W / p, compared with a small
// absolute tolerance so that exact splits are not rejected by rounding.
struct BalanceCaps {
  std::vector<double> comp;
  std::vector<double> mem;  // empty when unconstrained
};

BalanceCaps balance_caps(const Hypergraph& h, const PartitionConfig& cfg);
bool is_balanced(const Hypergraph& h, const Partition& part, const PartitionConfig& cfg);

// Throws InputError for p == 0, p > |V|, or a negative tolerance, and
// InfeasibleBalance when a single vertex exceeds the computation budget.
void check_feasible(const Hypergraph& h, const PartitionConfig& cfg);

struct PartitionResult {
  Partition partition;
  bool balanced = false;
  Weight max_cut = 0;
  Weight connectivity = 0;
};

// Multilevel scheme: heavy-connectivity clustering down to max(4p, 80)
// vertices, recursive bisection with randomized greedy growing, then k-way
// FM refinement on every level. Deterministic for fixed (h, cfg).
PartitionResult partition_multilevel(const Hypergraph& h, const PartitionConfig& cfg);

struct BruteForceGuard {
  std::size_t max_vertices = 16;
  PartId max_parts = 3;
};

// Exhaustive search over all balanced assignments, parts canonicalized by
// first occurrence. Returns the first optimum in enumeration order under
// (objective, other objective). Throws GuardExceeded above the guard and
// InputError if no balanced partition exists.
PartitionResult partition_bruteforce(const Hypergraph& h, const PartitionConfig& cfg,
                                     BruteForceGuard guard = {});

// Move-based local search. Never increases (overload, objective, other
// objective), where overload is the total weight above the part budgets.
Partition refine_fm(const Hypergraph& h, const Partition& start, const PartitionConfig& cfg);

enum class GeometricScheme { Row, Outer };

// Subcube decomposition of the model problem on an N^3 grid.
//   Row:   RowWise model of A*P. x.row i and x.brow k go to the subcube that
//          contains fine point i (resp. k).
//   Outer: OuterProduct model of P^T*(A*P). x.outer k goes to the subcube of
//          the coarse grid containing the aggregate of fine point k; c i j
//          goes to the subcube containing coarse point i.
// p must be a perfect cube whose root divides N (Row) or N/3 (Outer).
Partition geometric_partition(const Hypergraph& h, GeometricScheme scheme, Index n, PartId p);

}  // namespace spgemm_hg
