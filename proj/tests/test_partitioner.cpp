#include <gtest/gtest.h>

#include <tuple>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"
#include "spgemm_hg/models.hpp"
#include "spgemm_hg/partitioner.hpp"
#include "support.hpp"

using namespace spgemm_hg;
using namespace testing_support;

namespace {

Hypergraph weighted_path(const std::vector<Weight>& w) {
  HypergraphBuilder hb;
  for (std::size_t v = 0; v < w.size(); ++v) hb.add_vertex(Label::coarse("v", {static_cast<Index>(v)}), w[v], 0);
  for (std::size_t v = 0; v + 1 < w.size(); ++v) {
    hb.add_net(Label::coarse("n", {static_cast<Index>(v)}), 1, {static_cast<VertexId>(v), static_cast<VertexId>(v + 1)});
  }
  return std::move(hb).build();
}

Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t nv, std::size_t nn) {
  std::uniform_int_distribution<Weight> w(0, 3), c(1, 3);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(nv - 1));
  std::uniform_int_distribution<int> size(2, 4);
  HypergraphBuilder hb;
  for (std::size_t v = 0; v < nv; ++v) hb.add_vertex(Label::coarse("v", {static_cast<Index>(v)}), 1 + w(rng), w(rng));
  for (std::size_t n = 0; n < nn; ++n) {
    std::vector<VertexId> pins;
    for (int s = size(rng); static_cast<int>(pins.size()) < s;) {
      const VertexId v = pick(rng);
      if (std::find(pins.begin(), pins.end(), v) == pins.end()) pins.push_back(v);
    }
    hb.add_net(Label::coarse("n", {static_cast<Index>(n)}), c(rng), pins);
  }
  return std::move(hb).build();
}

double overload(const Hypergraph& h, const Partition& part, const PartitionConfig& cfg) {
  const BalanceCaps caps = balance_caps(h, cfg);
  std::vector<double> comp(part.p, 0.0), mem(part.p, 0.0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    comp[part.part[v]] += static_cast<double>(h.comp_weight(v));
    mem[part.part[v]] += static_cast<double>(h.mem_weight(v));
  }
  double over = 0;
  for (PartId i = 0; i < part.p; ++i) {
    over += std::max(0.0, comp[i] - caps.comp[i]);
    if (!caps.mem.empty()) over += std::max(0.0, mem[i] - caps.mem[i]);
  }
  return over;
}

auto score(const Hypergraph& h, const Partition& part, const PartitionConfig& cfg) {
  const CommReport r = comm_report(h, part);
  const bool conn = cfg.objective == Objective::Connectivity;
  return std::make_tuple(overload(h, part, cfg), conn ? r.connectivity : r.max_cut, conn ? r.max_cut : r.connectivity);
}

}  // namespace

TEST(Balance, CapsAndFeasibility) {
  const Hypergraph h = weighted_path({1, 1, 1, 1});
  PartitionConfig cfg;
  cfg.p = 2;
  cfg.epsilon = 0;
  EXPECT_TRUE(is_balanced(h, Partition{2, {0, 0, 1, 1}}, cfg));
  EXPECT_FALSE(is_balanced(h, Partition{2, {0, 0, 0, 1}}, cfg));
  cfg.epsilon = 0.5;
  EXPECT_TRUE(is_balanced(h, Partition{2, {0, 0, 0, 1}}, cfg));
  EXPECT_TRUE(balance_caps(h, cfg).mem.empty());
  cfg.delta = 0.0;
  EXPECT_EQ(balance_caps(h, cfg).mem.size(), 2u);
}

TEST(Balance, RejectsImpossibleRequests) {
  PartitionConfig cfg;
  cfg.p = 5;
  EXPECT_THROW(check_feasible(weighted_path({1, 1, 1, 1}), cfg), InputError);
  cfg.p = 0;
  EXPECT_THROW(check_feasible(weighted_path({1, 1}), cfg), InputError);
  cfg.p = 2;
  cfg.epsilon = -0.1;
  EXPECT_THROW(check_feasible(weighted_path({1, 1}), cfg), InputError);
  cfg.epsilon = 0.01;
  try {
    partition_multilevel(weighted_path({1, 5, 0}), cfg);
    FAIL();
  } catch (const InfeasibleBalance& e) {
    EXPECT_EQ(e.vertex(), 1u);
  }
}

TEST(Objective, Names) {
  EXPECT_EQ(parse_objective("connectivity"), Objective::Connectivity);
  EXPECT_EQ(parse_objective("max-cut"), Objective::MaxPartCut);
  EXPECT_EQ(objective_name(Objective::MaxPartCut), "max-cut");
  EXPECT_THROW(parse_objective("cut"), InputError);
}

TEST(BruteForce, PathSplitsInTheMiddle) {
  const Hypergraph h = weighted_path({1, 1, 1, 1});
  PartitionConfig cfg;
  cfg.epsilon = 0;
  const PartitionResult r = partition_bruteforce(h, cfg);
  EXPECT_EQ(r.partition.part, (std::vector<PartId>{0, 0, 1, 1}));
  EXPECT_EQ(r.connectivity, 1);
  EXPECT_EQ(r.max_cut, 1);
  EXPECT_TRUE(r.balanced);
}

TEST(BruteForce, ExampleFineGrained) {
  const Hypergraph h = build_fine_grained(example_a(), example_b());
  PartitionConfig cfg;
  for (Objective o : {Objective::Connectivity, Objective::MaxPartCut}) {
    cfg.objective = o;
    const PartitionResult r = partition_bruteforce(h, cfg, {20, 2});
    EXPECT_EQ(r.max_cut, 1);
    EXPECT_EQ(r.connectivity, 1);
  }
}

TEST(BruteForce, NoBalancedPartition) {
  PartitionConfig cfg;
  cfg.epsilon = 0;
  try {
    partition_bruteforce(weighted_path({2, 2, 2}), cfg);
    FAIL();
  } catch (const InfeasibleBalance&) {
    FAIL() << "no single vertex is too heavy";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("no balanced partition"), std::string::npos);
  }
}

TEST(BruteForce, Guard) {
  std::mt19937_64 rng(1);
  PartitionConfig cfg;
  EXPECT_THROW(partition_bruteforce(random_hypergraph(rng, 17, 10), cfg), GuardExceeded);
  cfg.p = 4;
  EXPECT_THROW(partition_bruteforce(random_hypergraph(rng, 8, 10), cfg), GuardExceeded);
}

TEST(BruteForce, MayLeavePartsEmpty) {
  // A hub net over everything plus a heavy pair. Using two of three parts is optimal.
  HypergraphBuilder hb;
  for (int v = 0; v < 4; ++v) hb.add_vertex(Label::coarse("v", {v}), 1, 0);
  hb.add_net(Label::coarse("n", {0}), 1, {0, 1, 2, 3});
  hb.add_net(Label::coarse("n", {1}), 3, {0, 1});
  const Hypergraph h = std::move(hb).build();
  PartitionConfig cfg;
  cfg.p = 3;
  cfg.epsilon = 0.6;  // at most two vertices per part
  const auto conn = partition_bruteforce(h, cfg);
  EXPECT_EQ(conn.partition.part, (std::vector<PartId>{0, 0, 1, 1}));
  EXPECT_EQ(conn.connectivity, 1);
  cfg.objective = Objective::MaxPartCut;
  EXPECT_EQ(partition_bruteforce(h, cfg).max_cut, 1);
}

TEST(Multilevel, ExampleReachesOptimum) {
  const Hypergraph h = build_fine_grained(example_a(), example_b());
  PartitionConfig cfg;
  const PartitionResult r = partition_multilevel(h, cfg);
  EXPECT_TRUE(r.balanced);
  EXPECT_EQ(r.max_cut, 1);
  EXPECT_EQ(r.connectivity, 1);
  const CommReport check = comm_report(h, r.partition);
  EXPECT_EQ(check.max_cut, r.max_cut);
  EXPECT_EQ(check.connectivity, r.connectivity);
}

TEST(Multilevel, SinglePart) {
  const Hypergraph h = build_fine_grained(example_a(), example_b());
  PartitionConfig cfg;
  cfg.p = 1;
  const PartitionResult r = partition_multilevel(h, cfg);
  EXPECT_EQ(r.partition.part, std::vector<PartId>(h.num_vertices(), 0));
  EXPECT_EQ(r.max_cut, 0);
  EXPECT_EQ(r.connectivity, 0);
  EXPECT_TRUE(r.balanced);
}

TEST(Multilevel, DeterministicAndBalancedOnLargerInstances) {
  const auto s = strip_empty(gen_erdos_renyi(300, 3, 4), gen_erdos_renyi(300, 3, 4));
  const Hypergraph h = build_fine_grained(s.a, s.b, false);
  for (PartId p : {2u, 4u, 7u}) {
    PartitionConfig cfg;
    cfg.p = p;
    cfg.epsilon = 0.03;
    cfg.seed = p;
    const PartitionResult x = partition_multilevel(h, cfg);
    const PartitionResult y = partition_multilevel(h, cfg);
    EXPECT_EQ(x.partition, y.partition);
    EXPECT_TRUE(x.balanced) << p;
    EXPECT_TRUE(is_balanced(h, x.partition, cfg));
    EXPECT_EQ(comm_report(h, x.partition).connectivity, x.connectivity);
  }
}

TEST(Multilevel, RespectsMemoryBalance) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    auto [a, b] = random_instance(rng, 10, 0.5);
    const Hypergraph h = build_fine_grained(a, b);
    PartitionConfig cfg;
    cfg.epsilon = 0.5;
    cfg.delta = 0.5;
    cfg.seed = static_cast<std::uint64_t>(t);
    try {
      check_feasible(h, cfg);
    } catch (const InputError&) {
      continue;
    }
    const PartitionResult r = partition_multilevel(h, cfg);
    if (r.balanced) EXPECT_TRUE(is_balanced(h, r.partition, cfg));
  }
}

TEST(Refine, NeverWorsensTheScore) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const Hypergraph h = random_hypergraph(rng, 10 + t, 15 + t);
    PartitionConfig cfg;
    cfg.p = 2 + t % 4;
    cfg.epsilon = t % 2 ? 0.1 : 0.3;
    cfg.objective = t % 3 ? Objective::Connectivity : Objective::MaxPartCut;
    const Partition start = random_partition(rng, h.num_vertices(), cfg.p);
    const Partition once = refine_fm(h, start, cfg);
    EXPECT_LE(score(h, once, cfg), score(h, start, cfg));
    const Partition twice = refine_fm(h, once, cfg);
    EXPECT_LE(score(h, twice, cfg), score(h, once, cfg));
    EXPECT_EQ(refine_fm(h, start, cfg), once);
  }
}

TEST(Refine, RejectsMismatchedPartCount) {
  const Hypergraph h = weighted_path({1, 1, 1});
  PartitionConfig cfg;
  cfg.p = 3;
  EXPECT_THROW(refine_fm(h, Partition{2, {0, 1, 1}}, cfg), InputError);
}

TEST(Geometric, RowSchemeAssignsSubcubes) {
  const Index n = 6;
  const auto s = strip_empty(gen_stencil27(n), gen_sa_prolongator(n));
  const Hypergraph h = build_restricted(s.a, s.b, {ModelKind::RowWise});
  const Partition part = geometric_partition(h, GeometricScheme::Row, n, 8);
  std::vector<int> rows(8, 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const Label& l = h.vertex_label(v);
    if (l.kind == LabelKind::Coarse && l.tag == "row") {
      ++rows[part.part[v]];
      const Index i = l.idx[0];
      const Index x = i % n, y = (i / n) % n, z = i / (n * n);
      EXPECT_EQ(part.part[v], static_cast<PartId>(x / 3 + 2 * (y / 3 + 2 * (z / 3))));
    }
  }
  EXPECT_EQ(rows, std::vector<int>(8, 27));
  PartitionConfig cfg;
  cfg.p = 8;
  cfg.epsilon = 0;
  EXPECT_TRUE(is_balanced(h, part, cfg));
}

TEST(Geometric, OuterSchemeFollowsAggregates) {
  const Index n = 6;
  const auto p = gen_sa_prolongator(n);
  const auto ap = symbolic_multiply(gen_stencil27(n), p).c;
  const auto s = strip_empty(transpose(p), ap);
  const Hypergraph h = build_restricted(s.a, s.b, {ModelKind::OuterProduct});
  const Partition part = geometric_partition(h, GeometricScheme::Outer, n, 8);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const Label& l = h.vertex_label(v);
    if (l.kind == LabelKind::NzC) EXPECT_EQ(part.part[v], static_cast<PartId>(l.idx[0]));
  }
  EXPECT_THROW(geometric_partition(h, GeometricScheme::Outer, n, 4), InputError);
  EXPECT_THROW(geometric_partition(h, GeometricScheme::Outer, n, 27), InputError);
  EXPECT_THROW(geometric_partition(h, GeometricScheme::Row, n, 8), InputError);
}
