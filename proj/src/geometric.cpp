#include <cmath>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/partitioner.hpp"

namespace spgemm_hg {

namespace {

// Subcube owning point `idx` of an n^3 grid split into q^3 subcubes.
PartId subcube(Index idx, Index n, Index q) {
  const Index side = n / q;
  const Index x = idx % n, y = (idx / n) % n, z = idx / (n * n);
  return static_cast<PartId>(x / side + q * (y / side + q * (z / side)));
}

Index aggregate(Index fine, Index n) {
  const Index nc = n / 3;
  const Index x = fine % n, y = (fine / n) % n, z = fine / (n * n);
  return x / 3 + nc * (y / 3 + nc * (z / 3));
}

}  // namespace

Partition geometric_partition(const Hypergraph& h, GeometricScheme scheme, Index n, PartId p) {
  if (n <= 0 || p == 0) throw InputError("grid size and part count must be positive");
  const Index q = std::llround(std::cbrt(static_cast<double>(p)));
  if (q * q * q != static_cast<Index>(p)) throw InputError(std::to_string(p) + " parts is not a perfect cube");
  const Index n_fine = n * n * n;
  const Index nc = n / 3;
  if (scheme == GeometricScheme::Row && n % q != 0) {
    throw InputError("cube root of p (" + std::to_string(q) + ") does not divide N = " + std::to_string(n));
  }
  if (scheme == GeometricScheme::Outer && (n % 3 != 0 || nc % q != 0)) {
    throw InputError("cube root of p (" + std::to_string(q) + ") does not divide N/3 for N = " + std::to_string(n));
  }

  auto fine_owner = [&](Index i) {
    if (i < 0 || i >= n_fine) throw InputError("grid point " + std::to_string(i) + " outside the N^3 grid");
    return scheme == GeometricScheme::Row ? subcube(i, n, q) : subcube(aggregate(i, n), nc, q);
  };
  auto coarse_owner = [&](Index c) {
    if (c < 0 || c >= nc * nc * nc) throw InputError("coarse point " + std::to_string(c) + " outside the grid");
    return subcube(c, nc, q);
  };

  Partition part{p, std::vector<PartId>(h.num_vertices(), 0)};
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const Label& l = h.vertex_label(v);
    const bool row = scheme == GeometricScheme::Row;
    PartId owner = 0;
    switch (l.kind) {
      case LabelKind::Mult: owner = row ? fine_owner(l.idx[0]) : fine_owner(l.idx[1]); break;
      case LabelKind::NzA: owner = row ? fine_owner(l.idx[0]) : fine_owner(l.idx[1]); break;
      case LabelKind::NzB: owner = fine_owner(l.idx[0]); break;
      case LabelKind::NzC: owner = row ? fine_owner(l.idx[0]) : coarse_owner(l.idx[0]); break;
      case LabelKind::Coarse:
        if (row && (l.tag == "row" || l.tag == "brow")) {
          owner = fine_owner(l.idx[0]);
        } else if (!row && l.tag == "outer") {
          owner = fine_owner(l.idx[0]);
        } else {
          throw InputError("vertex " + l.to_string() + " does not belong to the " +
                           (row ? "row-wise" : "outer-product") + " model");
        }
        break;
    }
    part.part[v] = owner;
  }
  return part;
}

}  // namespace spgemm_hg
