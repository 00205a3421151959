#pragma once

#include <limits>
#include <vector>

#include "spgemm_hg/hypergraph.hpp"
#include "spgemm_hg/sparse.hpp"

namespace spgemm_hg {

// Q_i: the nets with a pin in part i and a pin outside it, in net order.
std::vector<std::vector<NetId>> cut_sets(const Hypergraph& h, const Partition& part);

struct CommReport {
  std::vector<Weight> per_part_cut;  // sum of costs over Q_i
  Weight max_cut = 0;
  Weight connectivity = 0;           // sum of cost * (lambda - 1)
  double achieved_epsilon = 0;       // max_i w_comp(V_i) * p / W_comp - 1
  double achieved_delta = 0;         // same on w_mem; infinity when W_mem = 0
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

CommReport comm_report(const Hypergraph& h, const Partition& part);

struct ScheduleTrace {
  std::vector<Weight> sends;  // words, per part
  std::vector<Weight> recvs;
  Weight expand_words = 0;
  Weight fold_words = 0;
  Weight expand_steps = 0;
  Weight fold_steps = 0;
  Weight steps = 0;
};

// Expand/fold schedule for a partition of the fine-grained hypergraph of
// (a, b) with data vertices. Every input nonzero is broadcast from the part
// of its vertex to the parts holding its multiplications, and every output
// nonzero is reduced to the part of its vertex. Trees are complete binary
// trees over [owner, other parts in increasing order]; node t has parent
// (t - 1) / 2 and all trees advance in lockstep.
ScheduleTrace simulate_parallel(const NonzeroStructure& a, const NonzeroStructure& b, const Partition& part);

struct IoTrace {
  Weight loads = 0;
  Weight stores = 0;
  Weight blocks = 0;
  Weight fast_memory = 0;
};

// Blocked sequential schedule. Each part's A, B and C nonzeros (in row-major
// order) are cut into chunks of m = floor(M/3); every nonempty combination
// (part, A chunk, B chunk, C chunk) is one block, processed in lexicographic
// order. A block loads its A and B entries and the C partial sums written by
// earlier blocks, and stores its C entries. `part` may cover only the
// multiplication vertices or the whole fine-grained vertex set; only the
// multiplication entries are used. Throws InputError for M < 3.
IoTrace simulate_sequential_blocked(const NonzeroStructure& a, const NonzeroStructure& b, const Partition& part,
                                    Weight fast_memory);

struct SequentialBound {
  Weight h = 1;      // fewest parts with every W-set of size at most 2M
  Weight bound = 0;  // M * (h - 1)
};

// Exhaustive search for h. The guard limits the number of multiplications;
// throws GuardExceeded above it and InputError for M < 3.
SequentialBound sequential_lb(const NonzeroStructure& a, const NonzeroStructure& b, Weight fast_memory,
                              std::size_t max_mults = 14);

}  // namespace spgemm_hg
