// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"
#include "spgemm_hg/models.hpp"
#include "spgemm_hg/partitioner.hpp"
#include "support.hpp"

using namespace spgemm_hg;
using namespace testing_support;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && s > limit_s) {
    o.ok = false;
    o.detail = "took longer than " + std::to_string(limit_s) + " s";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-44s %8.2f s%s%s\n", o.ok ? "PASS" : "FAIL", id, name, s, o.detail.empty() ? "" : "  ",
              o.detail.c_str());
  std::fflush(stdout);
}

std::vector<Pair> random_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Pair> out;
  for (int t = 0; t < count; ++t) out.push_back(random_instance(rng, 12, 0.5));
  return out;
}

Outcome fine_grained_example() {
  Outcome o;
  const Hypergraph h = build_fine_grained(example_a(), example_b());
  o.check(h.num_vertices() == 20 && h.num_nets() == 14 && h.num_pins() == 32, "counts");
  const std::map<std::string, std::vector<std::string>> expected{
      {"a 0 0", {"a 0 0", "m 0 0 1"}},
      {"a 0 2", {"a 0 2", "m 0 2 0", "m 0 2 1"}},
      {"a 1 0", {"a 1 0", "m 1 0 1"}},
      {"a 1 3", {"a 1 3", "m 1 3 1"}},
      {"a 2 1", {"a 2 1", "m 2 1 0"}},
      {"b 0 1", {"b 0 1", "m 0 0 1", "m 1 0 1"}},
      {"b 1 0", {"b 1 0", "m 2 1 0"}},
      {"b 2 0", {"b 2 0", "m 0 2 0"}},
      {"b 2 1", {"b 2 1", "m 0 2 1"}},
      {"b 3 1", {"b 3 1", "m 1 3 1"}},
      {"c 0 0", {"c 0 0", "m 0 2 0"}},
      {"c 0 1", {"c 0 1", "m 0 0 1", "m 0 2 1"}},
      {"c 1 1", {"c 1 1", "m 1 0 1", "m 1 3 1"}},
      {"c 2 0", {"c 2 0", "m 2 1 0"}},
  };
  std::map<std::string, std::vector<std::string>> got;
  for (NetId n = 0; n < h.num_nets(); ++n) got[h.net_label(n).to_string()] = pin_labels(h, n);
  o.check(got == expected, "pin lists");
  return o;
}

Outcome count_formulas(const std::vector<Pair>& instances) {
  Outcome o;
  for (const auto& [a, b] : instances) {
    const auto c = symbolic_multiply(a, b).c;
    const std::size_t i = a.n_rows(), k = a.n_cols(), j = b.n_cols();
    const std::size_t sa = a.nnz(), sb = b.nnz(), sc = c.nnz();
    const std::size_t m = count_mults(a, b);
    auto counts = [&](ModelKind kind) {
      const Hypergraph h = build_restricted(a, b, {kind});
      return std::pair<std::size_t, std::size_t>(h.num_vertices(), h.num_nets());
    };
    const Hypergraph fine = build_fine_grained(a, b);
    o.check(fine.num_vertices() == m + sa + sb + sc && fine.num_nets() == sa + sb + sc &&
                fine.num_pins() == 3 * m + fine.num_nets(),
            "fine");
    o.check(counts(ModelKind::RowWise) == std::pair(i + k, k), "row");
    o.check(counts(ModelKind::ColWise) == std::pair(j + k, k), "col");
    o.check(counts(ModelKind::OuterProduct) == std::pair(k + sc, sc), "outer");
    o.check(counts(ModelKind::MonoA) == std::pair(sa + k + sc, k + sc), "mono-a");
    o.check(counts(ModelKind::MonoB) == std::pair(sb + k + sc, k + sc), "mono-b");
    o.check(counts(ModelKind::MonoC) == std::pair(sc + sa + sb, sa + sb), "mono-c");
  }
  return o;
}

Outcome coarsening_equivalence(const std::vector<Pair>& instances) {
  Outcome o;
  for (const auto& [a, b] : instances) {
    const Hypergraph fine = build_fine_grained(a, b);
    for (ModelKind kind : {ModelKind::RowWise, ModelKind::ColWise, ModelKind::OuterProduct, ModelKind::MonoA,
                           ModelKind::MonoB, ModelKind::MonoC}) {
      std::string why;
      const bool same =
          structurally_equivalent(coarsen(fine, natural_coarsening(fine, kind)), build_restricted(a, b, {kind}), &why);
      o.check(same, std::string(model_name(kind)) + ": " + why);
    }
  }
  return o;
}

std::vector<PartId> group_by(const MultTripleSet& m, const std::function<std::vector<Index>(const Triple&)>& key) {
  std::map<std::vector<Index>, PartId> ids;
  std::vector<PartId> out;
  for (const Triple& t : m.triples) out.push_back(ids.emplace(key(t), static_cast<PartId>(ids.size())).first->second);
  return out;
}

Outcome venn() {
  Outcome o;
  using Key = std::function<std::vector<Index>(const Triple&)>;
  const Key finest = [](const Triple& t) { return std::vector<Index>{t.i, t.k, t.j}; };
  const Key afib = [](const Triple& t) { return std::vector<Index>{t.i, t.k}; };
  const Key bfib = [](const Triple& t) { return std::vector<Index>{t.k, t.j}; };
  const Key cfib = [](const Triple& t) { return std::vector<Index>{t.i, t.j}; };
  const Key aslice = [](const Triple& t) { return std::vector<Index>{t.j}; };
  const Key bslice = [](const Triple& t) { return std::vector<Index>{t.i}; };
  const Key cslice = [](const Triple& t) { return std::vector<Index>{t.k}; };
  const Key coarsest = [](const Triple&) { return std::vector<Index>{}; };
  const auto d = dense(2, 2), diag = diagonal(2);
  const auto a5 = NonzeroStructure::from_coords(2, 4, {{0, 0}, {0, 2}, {1, 1}, {1, 3}});
  const auto b5 = NonzeroStructure::from_coords(4, 2, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  struct Row {
    const NonzeroStructure* a;
    const NonzeroStructure* b;
    Key key;
    const char* flags;
  };
  const std::vector<Row> table{
      {&d, &d, finest, ""},        {&d, &d, afib, "A"},       {&d, &d, bfib, "B"},
      {&d, &d, cfib, "C"},         {&d, &d, aslice, "LBC"},   {&d, &d, bslice, "RAC"},
      {&d, &d, cslice, "UAB"},     {&d, &d, coarsest, "RLUABC"}, {&diag, &d, finest, "BC"},
      {&diag, &d, afib, "RUABC"},  {&d, &diag, finest, "AC"}, {&d, &diag, bfib, "LUABC"},
      {&a5, &b5, finest, "UABC"},
  };
  for (const Row& r : table) {
    const auto m = symbolic_multiply(*r.a, *r.b).mults;
    const std::string got = classify_parallelization(m, group_by(m, r.key)).to_string();
    o.check(got == r.flags, std::string("expected '") + r.flags + "', got '" + got + "'");
  }
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const auto [a, b] = random_instance(rng, 4, 0.7);
    const auto m = symbolic_multiply(a, b).mults;
    std::uniform_int_distribution<PartId> pp(1, 4);
    const auto f = classify_parallelization(m, random_partition(rng, m.triples.size(), pp(rng)).part);
    o.check(f.outer == (f.mono_a && f.mono_b), "U != A and B");
    o.check(!f.row || (f.mono_a && f.mono_c), "R without A and C");
    o.check(!f.col || (f.mono_b && f.mono_c), "L without B and C");
  }
  return o;
}

Outcome parallel_bounds() {
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<PartId> pick_p(1, 8);
  for (int t = 0; t < 200; ++t) {
    const auto [a, b] = random_instance(rng, 10, 0.5);
    const Hypergraph h = build_fine_grained(a, b);
    const PartId p = pick_p(rng);
    const Partition part = random_partition(rng, h.num_vertices(), p);
    const ScheduleTrace tr = simulate_parallel(a, b, part);
    const auto q = cut_sets(h, part);
    for (PartId i = 0; i < p; ++i) {
      Weight cost = 0;
      for (NetId n : q[i]) cost += h.net_cost(n);
      const Weight words = tr.sends[i] + tr.recvs[i];
      o.check(static_cast<Weight>(q[i].size()) <= words, "|Q_i| exceeds words");
      o.check(words <= 3 * cost, "words exceed 3 cost(Q_i)");
    }
    const Weight log2p = static_cast<Weight>(std::ceil(std::log2(static_cast<double>(p))));
    o.check(tr.steps <= 2 * (log2p + 1), "too many steps");
  }
  return o;
}

Outcome sequential_bounds() {
  Outcome o;
  std::mt19937_64 rng(606);
  int instances = 0;
  while (instances < 100) {
    const auto [a, b] = random_instance(rng, 5, 0.6);
    if (count_mults(a, b) > 14) continue;
    ++instances;
    const Hypergraph h = build_fine_grained(a, b);
    std::vector<Partition> parts{Partition::single(1, h.num_vertices())};
    for (PartId p = 2; p <= 4; ++p) parts.push_back(random_partition(rng, h.num_vertices(), p));
    for (Weight m : {3, 4, 6}) {
      const Weight bound = sequential_lb(a, b, m).bound;
      for (const Partition& part : parts) {
        const IoTrace io = simulate_sequential_blocked(a, b, part, m);
        const Weight traffic = io.loads + io.stores;
        o.check(bound <= traffic, "lower bound exceeds traffic");
        o.check(traffic <= 4 * (m / 3) * io.blocks, "traffic exceeds 4 floor(M/3) g");
      }
    }
  }
  return o;
}

Hypergraph random_hypergraph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv_pick(4, 12), w(1, 2), c(1, 3), sz(2, 4);
  const int nv = nv_pick(rng);
  std::uniform_int_distribution<int> nn_pick(nv / 2, 2 * nv), v_pick(0, nv - 1);
  HypergraphBuilder hb;
  for (int v = 0; v < nv; ++v) hb.add_vertex(Label::coarse("v", {v}), w(rng), 0);
  const int nn = nn_pick(rng);
  for (int n = 0; n < nn; ++n) {
    std::set<VertexId> pins;
    const int s = std::min(sz(rng), nv);
    while (static_cast<int>(pins.size()) < s) pins.insert(static_cast<VertexId>(v_pick(rng)));
    hb.add_net(Label::coarse("n", {n}), c(rng), std::vector<VertexId>(pins.begin(), pins.end()));
  }
  return std::move(hb).build();
}

Outcome oracle_gate() {
  Outcome o;
  std::mt19937_64 rng(707);
  std::vector<Hypergraph> graphs;
  // Model hypergraphs of small products, then random ones.
  while (graphs.size() < 20) {
    const auto [a, b] = random_instance(rng, 4, 0.6);
    for (ModelKind kind : {ModelKind::FineGrained, ModelKind::RowWise, ModelKind::OuterProduct, ModelKind::MonoC}) {
      const bool data = kind != ModelKind::FineGrained;
      Hypergraph h = kind == ModelKind::FineGrained ? build_fine_grained(a, b, false) : build_restricted(a, b, {kind, data});
      if (h.num_vertices() >= 2 && h.num_vertices() <= 12 && graphs.size() < 20) graphs.push_back(std::move(h));
    }
  }
  while (graphs.size() < 50) graphs.push_back(random_hypergraph(rng));

  int worst_num = 0, worst_den = 1;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const Hypergraph& h = graphs[g];
    PartitionConfig cfg;
    cfg.p = 2;
    cfg.objective = Objective::MaxPartCut;
    cfg.seed = g;
    // Tightest tolerance from the ladder that admits a balanced split.
    std::optional<PartitionResult> best;
    for (double eps : {0.01, 0.1, 0.25, 0.5, 1.0}) {
      cfg.epsilon = eps;
      try {
        best = partition_bruteforce(h, cfg);
        break;
      } catch (const InputError&) {
      }
    }
    if (!best) {
      o.check(false, "no balanced split for graph " + std::to_string(g));
      continue;
    }
    const PartitionResult ml = partition_multilevel(h, cfg);
    o.check(ml.balanced, "multilevel unbalanced on graph " + std::to_string(g));
    o.check(ml.max_cut <= 2 * best->max_cut,
            "graph " + std::to_string(g) + ": " + std::to_string(ml.max_cut) + " vs optimum " +
                std::to_string(best->max_cut));
    if (best->max_cut > 0 && ml.max_cut * worst_den > worst_num * best->max_cut) {
      worst_num = static_cast<int>(ml.max_cut);
      worst_den = static_cast<int>(best->max_cut);
    }
  }
  if (o.ok) o.detail = "worst ratio " + std::to_string(worst_num) + "/" + std::to_string(worst_den);
  return o;
}

Weight median(std::vector<Weight> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome amg_trend() {
  Outcome o;
  const Index n = 12;
  const auto a = gen_stencil27(n);
  const auto p = gen_sa_prolongator(n);
  const auto ap = symbolic_multiply(a, p).c;
  auto run = [&](const NonzeroStructure& x, const NonzeroStructure& y, ModelKind kind) {
    const StrippedPair s = strip_empty(x, y);
    const Hypergraph h = kind == ModelKind::FineGrained ? build_fine_grained(s.a, s.b, false)
                                                        : build_restricted(s.a, s.b, {kind, false});
    std::vector<Weight> cuts;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      PartitionConfig cfg;
      cfg.p = 8;
      cfg.epsilon = 0.01;
      cfg.seed = seed;
      cuts.push_back(partition_multilevel(h, cfg).max_cut);
    }
    return median(cuts);
  };
  const Weight ptap_outer = run(transpose(p), ap, ModelKind::OuterProduct);
  const Weight ptap_row = run(transpose(p), ap, ModelKind::RowWise);
  const Weight ap_row = run(a, p, ModelKind::RowWise);
  const Weight ap_fine = run(a, p, ModelKind::FineGrained);
  o.check(ptap_outer <= ptap_row, "PtAP outer above row-wise");
  o.check(ap_row <= 2 * ap_fine, "AP row-wise above twice fine-grained");
  char buf[160];
  std::snprintf(buf, sizeof buf, "PtAP outer %lld row %lld | AP row %lld fine %lld", static_cast<long long>(ptap_outer),
                static_cast<long long>(ptap_row), static_cast<long long>(ap_row), static_cast<long long>(ap_fine));
  o.detail = o.ok ? buf : o.detail + " (" + buf + ")";
  return o;
}

Outcome geometric_consistency() {
  Outcome o;
  const Index n = 6, q = 2, side = 3;
  const StrippedPair s = strip_empty(gen_stencil27(n), gen_sa_prolongator(n));
  const Hypergraph h = build_restricted(s.a, s.b, {ModelKind::RowWise});
  const Partition part = geometric_partition(h, GeometricScheme::Row, n, 8);
  PartitionConfig cfg;
  cfg.p = 8;
  cfg.epsilon = 0;
  o.check(is_balanced(h, part, cfg), "row partition not balanced at eps 0");

  // Net of point k spans the subcubes of its 27-neighborhood and costs the
  // number of aggregates that neighborhood touches.
  auto inside = [&](Index x) { return x >= 0 && x < n; };
  std::vector<Weight> per_part(8, 0);
  for (Index z = 0; z < n; ++z)
    for (Index y = 0; y < n; ++y)
      for (Index x = 0; x < n; ++x) {
        std::set<Index> cubes, aggs;
        for (Index dz = -1; dz <= 1; ++dz)
          for (Index dy = -1; dy <= 1; ++dy)
            for (Index dx = -1; dx <= 1; ++dx) {
              const Index u = x + dx, v = y + dy, w = z + dz;
              if (!inside(u) || !inside(v) || !inside(w)) continue;
              cubes.insert(u / side + q * (v / side + q * (w / side)));
              aggs.insert(u / 3 + (n / 3) * (v / 3 + (n / 3) * (w / 3)));
            }
        if (cubes.size() > 1) {
          for (Index c : cubes) per_part[c] += static_cast<Weight>(aggs.size());
        }
      }
  const Weight expected = *std::max_element(per_part.begin(), per_part.end());
  const Weight got = comm_report(h, part).max_cut;
  o.check(got == expected, "max_cut " + std::to_string(got) + " vs enumeration " + std::to_string(expected));
  if (o.ok) o.detail = "max_cut " + std::to_string(got);
  return o;
}

Outcome masked_identity() {
  Outcome o;
  std::mt19937_64 rng(1010);
  for (int t = 0; t < 50; ++t) {
    const auto [a, b] = random_instance(rng, 12, 0.5);
    const auto c = symbolic_multiply(a, b).c;
    for (bool data : {true, false}) {
      const Hypergraph masked = build_masked(a, b, c, data);
      const Hypergraph fine = build_fine_grained(a, b, data);
      o.check(masked == fine && structurally_equivalent(masked, fine), "masked differs from fine-grained");
    }
  }
  return o;
}

}  // namespace

int main() {
  const auto instances = random_instances(42, 100);
  criterion(1, "fine-grained example structure", 1, fine_grained_example);
  criterion(2, "model count formulas", 5, [&] { return count_formulas(instances); });
  criterion(3, "coarsening equivalence", 30, [&] { return coarsening_equivalence(instances); });
  criterion(4, "classification table and U = A and B", 10, venn);
  criterion(5, "parallel schedule bounds", 30, parallel_bounds);
  criterion(6, "sequential I/O bounds", 60, sequential_bounds);
  criterion(7, "multilevel within 2x of exhaustive optimum", 60, oracle_gate);
  criterion(8, "AMG model problem trends (N=12, p=8)", 600, amg_trend);
  criterion(9, "geometric row partition consistency", 30, geometric_consistency);
  criterion(10, "masked build with full mask", 5, masked_identity);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
