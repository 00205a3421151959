#include "spgemm_hg/models.hpp"

#include <algorithm>
#include <array>

#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 9> kModelNames{{
    {ModelKind::FineGrained, "fine"},
    {ModelKind::RowWise, "row"},
    {ModelKind::ColWise, "col"},
    {ModelKind::OuterProduct, "outer"},
    {ModelKind::MonoA, "mono-a"},
    {ModelKind::MonoB, "mono-b"},
    {ModelKind::MonoC, "mono-c"},
    {ModelKind::SpMVFineGrain, "spmv"},
    {ModelKind::Masked, "masked"},
}};

void require_stripped(const NonzeroStructure& a, const NonzeroStructure& b) {
  if (a.n_cols() != b.n_rows()) {
    throw DimensionError("inner dimensions differ: A has " + std::to_string(a.n_cols()) +
                         " columns, B has " + std::to_string(b.n_rows()) + " rows");
  }
  if (!is_stripped(a, b)) {
    throw DimensionError("instance has empty rows/columns or unused nonzeros; strip it first");
  }
}

// CSR grouping of items by key; items keep their relative order.
struct Buckets {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> items;

  Buckets(std::size_t n_keys, std::span<const Index> key_of) : offsets(n_keys + 1, 0) {
    for (Index key : key_of) {
      if (key >= 0) ++offsets[key + 1];
    }
    for (std::size_t t = 0; t < n_keys; ++t) offsets[t + 1] += offsets[t];
    items.resize(offsets[n_keys]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t v = 0; v < key_of.size(); ++v) {
      if (key_of[v] >= 0) items[fill[key_of[v]]++] = static_cast<VertexId>(v);
    }
  }
  std::span<const VertexId> operator[](std::size_t key) const {
    return {items.data() + offsets[key], items.data() + offsets[key + 1]};
  }
};

// Shared fine-grained assembly. `keep` selects output entries (S_C for the
// unmasked model); nonzeros of A and B not used by a kept multiplication are
// left out together with their nets.
Hypergraph assemble_fine(const NonzeroStructure& a, const NonzeroStructure& b,
                         const NonzeroStructure& keep, bool with_data_vertices) {
  std::vector<Index> a_of, b_of, c_of;  // per multiplication vertex
  std::vector<Label> mult_labels;
  for_each_mult_row(a, b, [&](Index i, std::span<const Triple> row) {
    for (const Triple& t : row) {
      const Index c = keep.find(i, t.j);
      if (c < 0) continue;
      a_of.push_back(a.find(i, t.k));
      b_of.push_back(b.find(t.k, t.j));
      c_of.push_back(c);
      mult_labels.push_back(Label::mult(t.i, t.k, t.j));
    }
  });

  const auto na = static_cast<std::size_t>(a.nnz());
  const auto nb = static_cast<std::size_t>(b.nnz());
  const auto nc = static_cast<std::size_t>(keep.nnz());
  Buckets by_a(na, a_of), by_b(nb, b_of), by_c(nc, c_of);

  HypergraphBuilder hb;
  for (auto& l : mult_labels) hb.add_vertex(std::move(l), 1, 0);

  // Data vertex ids for used nonzeros; -1 when unused.
  auto add_data = [&](const NonzeroStructure& s, const Buckets& used, auto make_label) {
    std::vector<Index> vid(static_cast<std::size_t>(s.nnz()), -1);
    Index pos = 0;
    for (Index r = 0; r < s.n_rows(); ++r) {
      for (Index col : s.row(r)) {
        if (!used[pos].empty() && with_data_vertices) {
          vid[pos] = hb.add_vertex(make_label(r, col), 0, 1);
        }
        ++pos;
      }
    }
    return vid;
  };
  auto va = add_data(a, by_a, Label::nz_a);
  auto vb = add_data(b, by_b, Label::nz_b);
  auto vc = add_data(keep, by_c, Label::nz_c);

  std::vector<VertexId> pins;
  auto add_nets = [&](const NonzeroStructure& s, const Buckets& used, const std::vector<Index>& vid,
                      auto make_label) {
    Index pos = 0;
    for (Index r = 0; r < s.n_rows(); ++r) {
      for (Index col : s.row(r)) {
        auto members = used[pos];
        if (!members.empty()) {
          pins.assign(members.begin(), members.end());
          if (vid[pos] >= 0) pins.push_back(static_cast<VertexId>(vid[pos]));
          hb.add_net(make_label(r, col), 1, pins);
        }
        ++pos;
      }
    }
  };
  add_nets(a, by_a, va, Label::nz_a);
  add_nets(b, by_b, vb, Label::nz_b);
  add_nets(keep, by_c, vc, Label::nz_c);
  return std::move(hb).build();
}

// Removes zero-computation vertices, then drops singleton nets and combines
// identical nets.
Hypergraph drop_data_vertices(const Hypergraph& h) {
  HypergraphBuilder hb;
  std::vector<Index> new_id(h.num_vertices(), -1);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (h.comp_weight(v) > 0) new_id[v] = hb.add_vertex(h.vertex_label(v), h.comp_weight(v), h.mem_weight(v));
  }
  std::vector<VertexId> pins;
  for (NetId n = 0; n < h.num_nets(); ++n) {
    pins.clear();
    for (VertexId v : h.pins(n)) {
      if (new_id[v] >= 0) pins.push_back(static_cast<VertexId>(new_id[v]));
    }
    hb.add_net(h.net_label(n), h.net_cost(n), pins);
  }
  Hypergraph reduced = std::move(hb).build();
  CoarseningMap identity;
  identity.group_of.resize(reduced.num_vertices());
  for (VertexId v = 0; v < reduced.num_vertices(); ++v) {
    identity.group_of[v] = v;
    identity.group_labels.push_back(reduced.vertex_label(v));
  }
  return coarsen(reduced, identity);
}

Hypergraph relabel_mirrored(const Hypergraph& h) {
  HypergraphBuilder hb;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    hb.add_vertex(mirror_label(h.vertex_label(v)), h.comp_weight(v), h.mem_weight(v));
  }
  for (NetId n = 0; n < h.num_nets(); ++n) hb.add_net(mirror_label(h.net_label(n)), h.net_cost(n), h.pins(n));
  return std::move(hb).build();
}

Hypergraph build_row_wise(const NonzeroStructure& a, const NonzeroStructure& b,
                          const NonzeroStructure& c) {
  const NonzeroStructure at = transpose(a);
  HypergraphBuilder hb;
  for (Index i = 0; i < a.n_rows(); ++i) {
    Weight comp = 0;
    for (Index k : a.row(i)) comp += b.row_nnz(k);
    hb.add_vertex(Label::coarse("row", {i}), comp, a.row_nnz(i) + c.row_nnz(i));
  }
  const auto first_b = static_cast<VertexId>(a.n_rows());
  for (Index k = 0; k < b.n_rows(); ++k) hb.add_vertex(Label::coarse("brow", {k}), 0, b.row_nnz(k));
  std::vector<VertexId> pins;
  for (Index k = 0; k < b.n_rows(); ++k) {
    pins.clear();
    for (Index i : at.row(k)) pins.push_back(static_cast<VertexId>(i));
    pins.push_back(first_b + static_cast<VertexId>(k));
    hb.add_net(Label::coarse("brow", {k}), b.row_nnz(k), pins);
  }
  return std::move(hb).build();
}

Hypergraph build_outer_product(const NonzeroStructure& a, const NonzeroStructure& b,
                               const SymbolicProduct& prod) {
  const auto a_cols = a.col_counts();
  HypergraphBuilder hb;
  for (Index k = 0; k < a.n_cols(); ++k) {
    hb.add_vertex(Label::coarse("outer", {k}), a_cols[k] * b.row_nnz(k), a_cols[k] + b.row_nnz(k));
  }
  const auto first_c = static_cast<VertexId>(a.n_cols());
  for (const Coord& ij : prod.c.coords()) hb.add_vertex(Label::nz_c(ij.row, ij.col), 0, 1);
  // Triples are ordered by (i, j, k), so each C entry's k's are contiguous.
  std::vector<VertexId> pins;
  const auto& t = prod.mults.triples;
  VertexId c_vertex = first_c;
  for (std::size_t s = 0; s < t.size();) {
    std::size_t e = s;
    pins.clear();
    while (e < t.size() && t[e].i == t[s].i && t[e].j == t[s].j) pins.push_back(static_cast<VertexId>(t[e++].k));
    pins.push_back(c_vertex++);
    hb.add_net(Label::nz_c(t[s].i, t[s].j), 1, pins);
    s = e;
  }
  return std::move(hb).build();
}

Hypergraph build_mono_a(const NonzeroStructure& a, const NonzeroStructure& b,
                        const SymbolicProduct& prod) {
  HypergraphBuilder hb;
  for (Index i = 0; i < a.n_rows(); ++i) {
    for (Index k : a.row(i)) hb.add_vertex(Label::coarse("afib", {i, k}), b.row_nnz(k), 1);
  }
  const auto first_b = static_cast<VertexId>(a.nnz());
  for (Index k = 0; k < b.n_rows(); ++k) hb.add_vertex(Label::coarse("brow", {k}), 0, b.row_nnz(k));
  const auto first_c = first_b + static_cast<VertexId>(b.n_rows());
  for (const Coord& ij : prod.c.coords()) hb.add_vertex(Label::nz_c(ij.row, ij.col), 0, 1);

  // A nonzeros by column, as positions (= vertex ids of v_ik).
  std::vector<Index> col_of(static_cast<std::size_t>(a.nnz()));
  for (Index p = 0; p < a.nnz(); ++p) col_of[p] = a.col_idx()[p];
  Buckets by_col(static_cast<std::size_t>(a.n_cols()), col_of);
  std::vector<VertexId> pins;
  for (Index k = 0; k < b.n_rows(); ++k) {
    auto members = by_col[k];
    pins.assign(members.begin(), members.end());
    pins.push_back(first_b + static_cast<VertexId>(k));
    hb.add_net(Label::coarse("brow", {k}), b.row_nnz(k), pins);
  }
  const auto& t = prod.mults.triples;
  VertexId c_vertex = first_c;
  for (std::size_t s = 0; s < t.size();) {
    std::size_t e = s;
    pins.clear();
    while (e < t.size() && t[e].i == t[s].i && t[e].j == t[s].j) {
      pins.push_back(static_cast<VertexId>(a.find(t[e].i, t[e].k)));
      ++e;
    }
    pins.push_back(c_vertex++);
    hb.add_net(Label::nz_c(t[s].i, t[s].j), 1, pins);
    s = e;
  }
  return std::move(hb).build();
}

Hypergraph build_mono_c(const NonzeroStructure& a, const NonzeroStructure& b,
                        const SymbolicProduct& prod) {
  const NonzeroStructure& c = prod.c;
  HypergraphBuilder hb;
  // w_comp(v_ij) = |{k : (i,k) in S_A and (k,j) in S_B}|.
  std::vector<Weight> fiber(static_cast<std::size_t>(c.nnz()), 0);
  for (const Triple& t : prod.mults.triples) ++fiber[c.find(t.i, t.j)];
  {
    Index pos = 0;
    for (const Coord& ij : c.coords()) hb.add_vertex(Label::coarse("cfib", {ij.row, ij.col}), fiber[pos++], 1);
  }
  const auto first_a = static_cast<VertexId>(c.nnz());
  for (const Coord& ik : a.coords()) hb.add_vertex(Label::nz_a(ik.row, ik.col), 0, 1);
  const auto first_b = first_a + static_cast<VertexId>(a.nnz());
  for (const Coord& kj : b.coords()) hb.add_vertex(Label::nz_b(kj.row, kj.col), 0, 1);

  const NonzeroStructure at = transpose(a);
  std::vector<VertexId> pins;
  Index pos = 0;
  for (Index i = 0; i < a.n_rows(); ++i) {
    for (Index k : a.row(i)) {
      pins.clear();
      for (Index j : b.row(k)) pins.push_back(static_cast<VertexId>(c.find(i, j)));
      pins.push_back(first_a + static_cast<VertexId>(pos++));
      hb.add_net(Label::nz_a(i, k), 1, pins);
    }
  }
  pos = 0;
  for (Index k = 0; k < b.n_rows(); ++k) {
    for (Index j : b.row(k)) {
      pins.clear();
      for (Index i : at.row(k)) pins.push_back(static_cast<VertexId>(c.find(i, j)));
      pins.push_back(first_b + static_cast<VertexId>(pos++));
      hb.add_net(Label::nz_b(k, j), 1, pins);
    }
  }
  return std::move(hb).build();
}

Hypergraph build_restricted_with_data(const NonzeroStructure& a, const NonzeroStructure& b,
                                      ModelKind kind) {
  switch (kind) {
    case ModelKind::RowWise: {
      const SymbolicProduct prod = symbolic_multiply(a, b);
      return build_row_wise(a, b, prod.c);
    }
    case ModelKind::OuterProduct: return build_outer_product(a, b, symbolic_multiply(a, b));
    case ModelKind::MonoA: return build_mono_a(a, b, symbolic_multiply(a, b));
    case ModelKind::MonoC: return build_mono_c(a, b, symbolic_multiply(a, b));
    case ModelKind::ColWise:
      return relabel_mirrored(build_restricted_with_data(transpose(b), transpose(a), ModelKind::RowWise));
    case ModelKind::MonoB:
      return relabel_mirrored(build_restricted_with_data(transpose(b), transpose(a), ModelKind::MonoA));
    default:
      throw InputError("model '" + std::string(model_name(kind)) + "' is not a restricted model");
  }
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (const auto& [k, name] : kModelNames) {
    if (k == kind) return name;
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (const auto& [k, n] : kModelNames) {
    if (n == name) return k;
  }
  throw InputError("unknown model '" + std::string(name) + "'");
}

Label mirror_label(const Label& l) {
  switch (l.kind) {
    case LabelKind::Mult: return Label::mult(l.idx[2], l.idx[1], l.idx[0]);
    case LabelKind::NzA: return Label::nz_b(l.idx[1], l.idx[0]);
    case LabelKind::NzB: return Label::nz_a(l.idx[1], l.idx[0]);
    case LabelKind::NzC: return Label::nz_c(l.idx[1], l.idx[0]);
    case LabelKind::Coarse: break;
  }
  static const std::array<std::pair<std::string_view, std::string_view>, 6> swaps{{
      {"row", "col"}, {"col", "row"}, {"brow", "acol"}, {"acol", "brow"}, {"afib", "bfib"}, {"bfib", "afib"},
  }};
  Label out = l;
  for (const auto& [from, to] : swaps) {
    if (l.tag == from) out.tag = std::string(to);
  }
  std::reverse(out.idx.begin(), out.idx.begin() + out.arity);
  return out;
}

Hypergraph build_fine_grained(const NonzeroStructure& a, const NonzeroStructure& b,
                              bool with_data_vertices) {
  require_stripped(a, b);
  std::vector<Coord> c;
  for_each_mult_row(a, b, [&](Index i, std::span<const Triple> row) {
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (t == 0 || row[t].j != row[t - 1].j) c.push_back({i, row[t].j});
    }
  });
  const auto sc = NonzeroStructure::from_coords(a.n_rows(), b.n_cols(), std::move(c));
  return assemble_fine(a, b, sc, with_data_vertices);
}

Hypergraph build_masked(const NonzeroStructure& a, const NonzeroStructure& b,
                        const NonzeroStructure& keep, bool with_data_vertices) {
  if (a.n_cols() != b.n_rows()) throw DimensionError("inner dimensions differ");
  if (keep.n_rows() != a.n_rows() || keep.n_cols() != b.n_cols()) {
    throw DimensionError("mask dimensions differ from C");
  }
  const SymbolicProduct prod = symbolic_multiply(a, b);
  for (const Coord& ij : keep.coords()) {
    if (!prod.c.contains(ij.row, ij.col)) {
      throw InputError("mask entry (" + std::to_string(ij.row) + "," + std::to_string(ij.col) +
                       ") is not a nonzero of C");
    }
  }
  return assemble_fine(a, b, keep, with_data_vertices);
}

Hypergraph build_restricted(const NonzeroStructure& a, const NonzeroStructure& b,
                            const ModelSpec& spec) {
  if (spec.kind == ModelKind::Masked) throw InputError("masked models are built with build_masked");
  require_stripped(a, b);
  Hypergraph h = build_restricted_with_data(a, b, spec.kind);
  return spec.with_data_vertices ? h : drop_data_vertices(h);
}

Hypergraph build_spmv_finegrain(const NonzeroStructure& a) {
  if (a.n_rows() != a.n_cols()) throw DimensionError("SpMV fine-grain model needs a square matrix");
  const Index n = a.n_rows();
  HypergraphBuilder hb;
  std::vector<Index> row_key, col_key;  // per vertex
  std::vector<VertexId> diag(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    auto r = a.row(i);
    const bool has_diag = std::binary_search(r.begin(), r.end(), i);
    auto place_diag = [&] {
      diag[i] = hb.add_vertex(Label::coarse("diag", {i}), has_diag ? 1 : 0, has_diag ? 3 : 2);
      row_key.push_back(i);
      col_key.push_back(i);
    };
    bool placed = false;
    for (Index k : r) {
      if (!placed && k >= i) {
        place_diag();
        placed = true;
      }
      if (k == i) continue;
      hb.add_vertex(Label::nz_a(i, k), 1, 1);
      row_key.push_back(i);
      col_key.push_back(k);
    }
    if (!placed) place_diag();
  }
  Buckets rows(static_cast<std::size_t>(n), row_key);
  Buckets cols(static_cast<std::size_t>(n), col_key);
  for (Index i = 0; i < n; ++i) {
    if (rows[i].size() > 1) hb.add_net(Label::coarse("row", {i}), 1, rows[i]);
  }
  for (Index k = 0; k < n; ++k) {
    if (cols[k].size() > 1) hb.add_net(Label::coarse("col", {k}), 1, cols[k]);
  }
  return std::move(hb).build();
}

Hypergraph build_model(const NonzeroStructure& a, const NonzeroStructure& b, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::FineGrained: return build_fine_grained(a, b, spec.with_data_vertices);
    case ModelKind::SpMVFineGrain: return build_spmv_finegrain(a);
    case ModelKind::Masked:
      if (!spec.mask) throw InputError("masked model needs a mask structure");
      return build_masked(a, b, *spec.mask, spec.with_data_vertices);
    default: return build_restricted(a, b, spec);
  }
}

}  // namespace spgemm_hg
