#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "spgemm_hg/hypergraph.hpp"
#include "spgemm_hg/sparse.hpp"

namespace spgemm_hg {

enum class ModelKind {
  FineGrained,
  RowWise,
  ColWise,
  OuterProduct,
  MonoA,
  MonoB,
  MonoC,
  SpMVFineGrain,
  Masked,
};

// CLI names: fine, row, col, outer, mono-a, mono-b, mono-c, spmv, masked.
std::string_view model_name(ModelKind kind);
// Throws InputError naming the token when it is not a known model.
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::FineGrained;
  bool with_data_vertices = true;
  std::optional<NonzeroStructure> mask;  // the kept subset S, for Masked
};

// The fine-grained SpGEMM hypergraph. Vertices are the multiplications in
// (i, j, k) order (w_comp 1), then, if requested, the nonzeros of A, B and C
// in row-major order (w_mem 1). Nets are n^A, n^B, n^C in row-major order,
// unit cost, multiplication pins first and the nonzero's own vertex last.
// Without data vertices every net is kept, including singletons.
//
// Requires is_stripped(a, b); throws DimensionError otherwise.
Hypergraph build_fine_grained(const NonzeroStructure& a, const NonzeroStructure& b,
                              bool with_data_vertices = true);

// 1D and 2D models built directly from their closed-form definitions:
//   RowWise (RrR)      v_i, v^B_k           nets n^B_k, cost |B row k|
//   OuterProduct (CRf) v_k, v^C_ij          nets n^C_ij, unit cost
//   MonoA (Frf)        v_ik, v^B_k, v^C_ij  nets n^B_k, n^C_ij
//   MonoC (ffF)        v_ij, v^A_ik, v^B_kj nets n^A_ik, n^B_kj
// ColWise and MonoB are RowWise and MonoA applied to (B^T, A^T) with labels
// mirrored back. Without data vertices, the zero-computation vertices are
// dropped and the nets renormalized as in coarsen().
Hypergraph build_restricted(const NonzeroStructure& a, const NonzeroStructure& b,
                            const ModelSpec& spec);

// Fine-grain SpMV model of a square matrix: one vertex per nonzero, with the
// diagonal vertex (or a dummy when the diagonal is zero) absorbing the input
// and output vector entries of its index. Row and column nets, singletons
// omitted.
Hypergraph build_spmv_finegrain(const NonzeroStructure& a);

// Fine-grained hypergraph restricted to the output entries in `keep`
// (keep must be a subset of S_C). Input nonzeros that no longer take part in
// any multiplication are removed together with their nets.
Hypergraph build_masked(const NonzeroStructure& a, const NonzeroStructure& b,
                        const NonzeroStructure& keep, bool with_data_vertices = true);

// Dispatches on spec.kind.
Hypergraph build_model(const NonzeroStructure& a, const NonzeroStructure& b, const ModelSpec& spec);

struct CoarseningMap {
  std::vector<std::uint32_t> group_of;  // source vertex -> group
  std::vector<Label> group_labels;      // optional; defaults to x.g <group>
};

// Vertex coarsening. Coarse weights are component-wise sums; a coarse vertex
// is a pin of every net that had one of its constituents as a pin. Nets whose
// pin sets coincide are combined (costs summed, label of the first kept) and
// singleton nets are dropped. Throws InputError if the map is not a
// partition of the vertex set onto groups 0..g-1.
Hypergraph coarsen(const Hypergraph& h, const CoarseningMap& map);

// The grouping of the fine-grained hypergraph (with or without data
// vertices) that corresponds to a restricted model, derived from vertex labels.
CoarseningMap natural_coarsening(const Hypergraph& fine, ModelKind kind);

// Mirror of a label through transposition of the whole product (C^T = B^T A^T).
Label mirror_label(const Label& l);

struct ParallelizationFlags {
  bool row = false;    // R: every {(i,*,*)} monochrome
  bool col = false;    // L: every {(*,*,j)} monochrome
  bool outer = false;  // U: every {(*,k,*)} monochrome
  bool mono_a = false; // A: every {(i,k,*)} monochrome
  bool mono_b = false; // B: every {(*,k,j)} monochrome
  bool mono_c = false; // C: every {(i,*,j)} monochrome

  std::string to_string() const;  // e.g. "ABU", "" for none
  friend bool operator==(const ParallelizationFlags&, const ParallelizationFlags&) = default;
};

// part_of[t] is the part of mults.triples[t].
ParallelizationFlags classify_parallelization(const MultTripleSet& mults,
                                              std::span<const PartId> part_of);

}  // namespace spgemm_hg
