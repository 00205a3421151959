#include <algorithm>
#include <array>
#include <bit>
#include <set>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"

namespace spgemm_hg {

namespace {

using Masks = std::array<std::uint64_t, 3>;  // W^A, W^B, W^C as bit sets

class CoverSearch {
 public:
  CoverSearch(std::vector<Masks> ops, Weight limit) : ops_(std::move(ops)), limit_(limit) {}

  bool feasible(std::size_t h) {
    h_ = h;
    failed_.clear();
    groups_.clear();
    return dfs(0);
  }

 private:
  bool fits(const Masks& g) const {
    return std::popcount(g[0]) <= limit_ && std::popcount(g[1]) <= limit_ && std::popcount(g[2]) <= limit_;
  }

  std::vector<std::uint64_t> key(std::size_t t) const {
    std::vector<Masks> sorted = groups_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint64_t> k{t};
    for (const Masks& g : sorted) k.insert(k.end(), g.begin(), g.end());
    return k;
  }

  bool dfs(std::size_t t) {
    if (t == ops_.size()) return true;
    const Masks& op = ops_[t];
    // A multiplication whose operands a group already touches costs nothing
    // there; placing it elsewhere can never help.
    for (const Masks& g : groups_) {
      if ((g[0] & op[0]) == op[0] && (g[1] & op[1]) == op[1] && (g[2] & op[2]) == op[2]) return dfs(t + 1);
    }
    auto k = key(t);
    if (failed_.count(k)) return false;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
      const Masks saved = groups_[i];
      const Masks next{saved[0] | op[0], saved[1] | op[1], saved[2] | op[2]};
      if (!fits(next)) continue;
      groups_[i] = next;
      const bool ok = dfs(t + 1);
      groups_[i] = saved;
      if (ok) return true;
    }
    if (groups_.size() < h_) {
      groups_.push_back(op);
      const bool ok = dfs(t + 1);
      groups_.pop_back();
      if (ok) return true;
    }
    failed_.insert(std::move(k));
    return false;
  }

  std::vector<Masks> ops_;
  Weight limit_;
  std::size_t h_ = 0;
  std::vector<Masks> groups_;
  std::set<std::vector<std::uint64_t>> failed_;
};

}  // namespace

SequentialBound sequential_lb(const NonzeroStructure& a, const NonzeroStructure& b, Weight fast_memory,
                              std::size_t max_mults) {
  if (fast_memory < 3) throw InputError("fast memory must hold at least 3 words");
  const SymbolicProduct prod = symbolic_multiply(a, b);
  const auto& mults = prod.mults.triples;
  if (mults.size() > max_mults) {
    throw GuardExceeded("lower-bound search is limited to " + std::to_string(max_mults) + " multiplications (got " +
                        std::to_string(mults.size()) + ")");
  }
  if (std::max({a.nnz(), b.nnz(), prod.c.nnz()}) > 64) {
    throw GuardExceeded("lower-bound search supports at most 64 nonzeros per matrix");
  }
  SequentialBound out;
  if (mults.empty()) return out;

  std::vector<Masks> ops;
  for (const Triple& x : mults) {
    ops.push_back({std::uint64_t{1} << a.find(x.i, x.k), std::uint64_t{1} << b.find(x.k, x.j),
                   std::uint64_t{1} << prod.c.find(x.i, x.j)});
  }
  CoverSearch search(std::move(ops), 2 * fast_memory);
  std::size_t h = 1;
  while (!search.feasible(h)) ++h;
  out.h = static_cast<Weight>(h);
  out.bound = fast_memory * (out.h - 1);
  return out;
}

}  // namespace spgemm_hg
