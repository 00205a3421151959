#include <map>
#include <utility>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/models.hpp"

namespace spgemm_hg {

namespace {

// True iff every group of triples sharing key(t) lies in a single part.
template <typename KeyFn>
bool monochrome(const MultTripleSet& mults, std::span<const PartId> part_of, KeyFn key) {
  std::map<decltype(key(Triple{})), PartId> owner;
  for (std::size_t t = 0; t < mults.triples.size(); ++t) {
    auto [it, inserted] = owner.emplace(key(mults.triples[t]), part_of[t]);
    if (!inserted && it->second != part_of[t]) return false;
  }
  return true;
}

}  // namespace

std::string ParallelizationFlags::to_string() const {
  std::string out;
  if (row) out += 'R';
  if (col) out += 'L';
  if (outer) out += 'U';
  if (mono_a) out += 'A';
  if (mono_b) out += 'B';
  if (mono_c) out += 'C';
  return out;
}

ParallelizationFlags classify_parallelization(const MultTripleSet& mults,
                                              std::span<const PartId> part_of) {
  if (part_of.size() != mults.triples.size()) {
    throw InputError("part map covers " + std::to_string(part_of.size()) + " of " +
                     std::to_string(mults.triples.size()) + " multiplications");
  }
  ParallelizationFlags f;
  f.row = monochrome(mults, part_of, [](const Triple& t) { return t.i; });
  f.col = monochrome(mults, part_of, [](const Triple& t) { return t.j; });
  f.outer = monochrome(mults, part_of, [](const Triple& t) { return t.k; });
  f.mono_a = monochrome(mults, part_of, [](const Triple& t) { return std::make_pair(t.i, t.k); });
  f.mono_b = monochrome(mults, part_of, [](const Triple& t) { return std::make_pair(t.k, t.j); });
  f.mono_c = monochrome(mults, part_of, [](const Triple& t) { return std::make_pair(t.i, t.j); });
  return f;
}

}  // namespace spgemm_hg
