#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "spgemm_hg/hypergraph.hpp"
#include "spgemm_hg/sparse.hpp"

namespace testing_support {

using namespace spgemm_hg;

// The 3x4 by 4x2 example used throughout the tests.
inline NonzeroStructure example_a() {
  return NonzeroStructure::from_coords(3, 4, {{0, 0}, {0, 2}, {1, 0}, {1, 3}, {2, 1}});
}
inline NonzeroStructure example_b() {
  return NonzeroStructure::from_coords(4, 2, {{0, 1}, {1, 0}, {2, 0}, {2, 1}, {3, 1}});
}

inline NonzeroStructure dense(Index r, Index c) {
  std::vector<Coord> coords;
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) coords.push_back({i, j});
  return NonzeroStructure::from_coords(r, c, coords);
}

inline NonzeroStructure diagonal(Index n) {
  std::vector<Coord> coords;
  for (Index i = 0; i < n; ++i) coords.push_back({i, i});
  return NonzeroStructure::from_coords(n, n, coords);
}

inline NonzeroStructure random_pattern(std::mt19937_64& rng, Index rows, Index cols, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<Coord> coords;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (keep(rng)) coords.push_back({i, j});
  return NonzeroStructure::from_coords(rows, cols, coords);
}

struct Pair {
  NonzeroStructure a, b;
};

// Random instance with dimensions in [1, max_dim] and density in (0, max_density],
// stripped of empty rows, columns and inner indices; never empty.
inline Pair random_instance(std::mt19937_64& rng, Index max_dim = 12, double max_density = 0.5) {
  std::uniform_int_distribution<Index> dim(1, max_dim);
  std::uniform_real_distribution<double> dens(0.05, max_density);
  while (true) {
    const Index i = dim(rng), k = dim(rng), j = dim(rng);
    const double d = dens(rng);
    auto s = strip_empty(random_pattern(rng, i, k, d), random_pattern(rng, k, j, d));
    if (s.a.nnz() > 0) return {std::move(s.a), std::move(s.b)};
  }
}

// Brute-force triple enumeration over the dense index space.
inline std::vector<Triple> naive_triples(const NonzeroStructure& a, const NonzeroStructure& b) {
  std::vector<std::tuple<Index, Index, Index>> ijk;
  for (Index i = 0; i < a.n_rows(); ++i)
    for (Index k = 0; k < a.n_cols(); ++k)
      for (Index j = 0; j < b.n_cols(); ++j)
        if (a.contains(i, k) && b.contains(k, j)) ijk.emplace_back(i, j, k);
  std::sort(ijk.begin(), ijk.end());
  std::vector<Triple> out;
  for (auto [i, j, k] : ijk) out.push_back({i, k, j});
  return out;
}

inline std::set<std::pair<Index, Index>> naive_c(const NonzeroStructure& a, const NonzeroStructure& b) {
  std::set<std::pair<Index, Index>> c;
  for (const Triple& t : naive_triples(a, b)) c.emplace(t.i, t.j);
  return c;
}

inline Partition random_partition(std::mt19937_64& rng, std::size_t n, PartId p) {
  std::uniform_int_distribution<PartId> pick(0, p - 1);
  Partition part{p, std::vector<PartId>(n)};
  for (auto& x : part.part) x = pick(rng);
  return part;
}

// Net pins rendered as sorted label strings, keyed by net label.
inline std::vector<std::string> pin_labels(const Hypergraph& h, NetId n) {
  std::vector<std::string> out;
  for (VertexId v : h.pins(n)) out.push_back(h.vertex_label(v).to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing_support
