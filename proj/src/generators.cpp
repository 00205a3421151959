#include <limits>
#include <random>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/sparse.hpp"

namespace spgemm_hg {

namespace {

struct Grid {
  Index n;
  Index index(Index x, Index y, Index z) const { return x + n * (y + n * z); }
};

}  // namespace

NonzeroStructure gen_stencil27(Index n) {
  if (n < 1) throw InputError("stencil grid side must be >= 1");
  const Grid g{n};
  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(n * n * n * 27));
  for (Index z = 0; z < n; ++z) {
    for (Index y = 0; y < n; ++y) {
      for (Index x = 0; x < n; ++x) {
        const Index u = g.index(x, y, z);
        for (Index dz = -1; dz <= 1; ++dz) {
          for (Index dy = -1; dy <= 1; ++dy) {
            for (Index dx = -1; dx <= 1; ++dx) {
              const Index xx = x + dx, yy = y + dy, zz = z + dz;
              if (xx < 0 || yy < 0 || zz < 0 || xx >= n || yy >= n || zz >= n) continue;
              coords.push_back({u, g.index(xx, yy, zz)});
            }
          }
        }
      }
    }
  }
  const Index total = n * n * n;
  return NonzeroStructure::from_coords(total, total, std::move(coords));
}

NonzeroStructure gen_sa_prolongator(Index n) {
  if (n < 3 || n % 3 != 0) throw InputError("prolongator grid side must be a positive multiple of 3");
  const Grid fine{n};
  const Grid coarse{n / 3};
  std::vector<Coord> coords;
  for (Index z = 0; z < n; ++z) {
    for (Index y = 0; y < n; ++y) {
      for (Index x = 0; x < n; ++x) {
        const Index u = fine.index(x, y, z);
        // Smoothed row = union of the aggregates of all stencil neighbors.
        for (Index dz = -1; dz <= 1; ++dz) {
          for (Index dy = -1; dy <= 1; ++dy) {
            for (Index dx = -1; dx <= 1; ++dx) {
              const Index xx = x + dx, yy = y + dy, zz = z + dz;
              if (xx < 0 || yy < 0 || zz < 0 || xx >= n || yy >= n || zz >= n) continue;
              coords.push_back({u, coarse.index(xx / 3, yy / 3, zz / 3)});
            }
          }
        }
      }
    }
  }
  const Index nc = n / 3;
  return NonzeroStructure::from_coords(n * n * n, nc * nc * nc, std::move(coords));
}

NonzeroStructure gen_erdos_renyi(Index n, double d, std::uint64_t seed) {
  if (n < 1) throw InputError("erdos-renyi size must be >= 1");
  if (!(d >= 0.0) || d > static_cast<double>(n)) throw InputError("erdos-renyi degree must lie in [0, n]");
  std::mt19937_64 rng(seed);
  // Compare raw 64-bit draws against a fixed threshold so the pattern depends
  // only on the engine, not on the library's distribution implementation.
  const double prob = d / static_cast<double>(n);
  const auto threshold = prob >= 1.0 ? std::numeric_limits<std::uint64_t>::max()
                                     : static_cast<std::uint64_t>(prob * 18446744073709551616.0);
  std::vector<Coord> coords;
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      if (rng() < threshold || prob >= 1.0) coords.push_back({i, k});
    }
  }
  return NonzeroStructure::from_coords(n, n, std::move(coords));
}

}  // namespace spgemm_hg
