#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spgemm_hg {

using Index = std::int64_t;

struct Coord {
  Index row;
  Index col;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Nonzero pattern of a sparse matrix, stored in compressed row form.
// Coordinates are 0-based, unique, and iterate in (row, col) order.
class NonzeroStructure {
 public:
  NonzeroStructure() = default;
  NonzeroStructure(Index n_rows, Index n_cols);

  // Sorts and deduplicates; throws DimensionError on out-of-range coordinates.
  static NonzeroStructure from_coords(Index n_rows, Index n_cols, std::vector<Coord> coords);

  Index n_rows() const { return n_rows_; }
  Index n_cols() const { return n_cols_; }
  Index nnz() const { return static_cast<Index>(col_idx_.size()); }

  std::span<const Index> row(Index i) const {
    return {col_idx_.data() + row_ptr_[i], col_idx_.data() + row_ptr_[i + 1]};
  }
  Index row_nnz(Index i) const { return row_ptr_[i + 1] - row_ptr_[i]; }
  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }

  // Position of (i, k) in the row-major nonzero order, or -1.
  Index find(Index i, Index k) const;
  bool contains(Index i, Index k) const { return find(i, k) >= 0; }

  std::vector<Coord> coords() const;
  std::vector<Index> col_counts() const;

  friend bool operator==(const NonzeroStructure&, const NonzeroStructure&) = default;

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
};

NonzeroStructure transpose(const NonzeroStructure& s);

struct Triple {
  Index i;
  Index k;
  Index j;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// The nontrivial multiplications of an SpGEMM instance, ordered by (i, j, k).
struct MultTripleSet {
  std::vector<Triple> triples;
  Index count() const { return static_cast<Index>(triples.size()); }
};

struct SymbolicProduct {
  NonzeroStructure c;
  MultTripleSet mults;
};

// Streams the multiplications of row i of C in (j, k) order, one row at a time.
// Memory is bounded by the largest row of intermediate products.
void for_each_mult_row(const NonzeroStructure& a, const NonzeroStructure& b,
                       const std::function<void(Index i, std::span<const Triple>)>& fn);

// Row-by-row Gustavson expansion. Throws DimensionError if a.n_cols != b.n_rows.
SymbolicProduct symbolic_multiply(const NonzeroStructure& a, const NonzeroStructure& b);

// Counts |V^m| without materializing the triples.
Index count_mults(const NonzeroStructure& a, const NonzeroStructure& b);

struct StrippedPair {
  NonzeroStructure a;
  NonzeroStructure b;
  std::vector<Index> row_map;    // new row of A -> original row
  std::vector<Index> inner_map;  // new inner index k -> original k
  std::vector<Index> col_map;    // new column of B -> original column
};

// Removes rows of A, columns of B and inner indices that take part in no
// multiplication. Repeats until nothing changes; the multiplication count is
// preserved.
StrippedPair strip_empty(const NonzeroStructure& a, const NonzeroStructure& b);

// True when strip_empty would leave the pair unchanged: no empty row of A,
// no empty column of B, and every inner index used by both.
bool is_stripped(const NonzeroStructure& a, const NonzeroStructure& b);

// Matrix Market coordinate format. Values are ignored; symmetric,
// skew-symmetric and hermitian files are expanded to their full pattern.
NonzeroStructure load_matrix_market(std::string_view text);
NonzeroStructure load_matrix_market_file(const std::string& path);
std::string write_matrix_market(const NonzeroStructure& s);

// Grid points are linearized x-fastest: point (x, y, z) has index
// x + N*(y + N*z). Coarse points of the aggregation use the same order on the
// (N/3)^3 grid, and fine point (x, y, z) belongs to aggregate (x/3, y/3, z/3).
NonzeroStructure gen_stencil27(Index n);
NonzeroStructure gen_sa_prolongator(Index n);

// Every entry of an n x n matrix is nonzero with probability d/n.
NonzeroStructure gen_erdos_renyi(Index n, double d, std::uint64_t seed);

}  // namespace spgemm_hg
