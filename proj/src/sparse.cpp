#include "spgemm_hg/sparse.hpp"

#include <algorithm>

#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

NonzeroStructure::NonzeroStructure(Index n_rows, Index n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(static_cast<std::size_t>(n_rows) + 1, 0) {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
}

NonzeroStructure NonzeroStructure::from_coords(Index n_rows, Index n_cols,
                                               std::vector<Coord> coords) {
  NonzeroStructure s(n_rows, n_cols);
  for (const auto& c : coords) {
    if (c.row < 0 || c.row >= n_rows || c.col < 0 || c.col >= n_cols) {
      throw DimensionError("coordinate (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                           ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    }
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  s.col_idx_.reserve(coords.size());
  for (const auto& c : coords) {
    ++s.row_ptr_[c.row + 1];
    s.col_idx_.push_back(c.col);
  }
  for (Index i = 0; i < n_rows; ++i) s.row_ptr_[i + 1] += s.row_ptr_[i];
  return s;
}

Index NonzeroStructure::find(Index i, Index k) const {
  if (i < 0 || i >= n_rows_) return -1;
  auto r = row(i);
  auto it = std::lower_bound(r.begin(), r.end(), k);
  if (it == r.end() || *it != k) return -1;
  return row_ptr_[i] + (it - r.begin());
}

std::vector<Coord> NonzeroStructure::coords() const {
  std::vector<Coord> out;
  out.reserve(col_idx_.size());
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index k : row(i)) out.push_back({i, k});
  }
  return out;
}

std::vector<Index> NonzeroStructure::col_counts() const {
  std::vector<Index> counts(static_cast<std::size_t>(n_cols_), 0);
  for (Index k : col_idx_) ++counts[k];
  return counts;
}

NonzeroStructure transpose(const NonzeroStructure& s) {
  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(s.nnz()));
  for (Index i = 0; i < s.n_rows(); ++i) {
    for (Index k : s.row(i)) coords.push_back({k, i});
  }
  return NonzeroStructure::from_coords(s.n_cols(), s.n_rows(), std::move(coords));
}

void for_each_mult_row(const NonzeroStructure& a, const NonzeroStructure& b,
                       const std::function<void(Index, std::span<const Triple>)>& fn) {
  if (a.n_cols() != b.n_rows()) {
    throw DimensionError("inner dimensions differ: A is " + std::to_string(a.n_rows()) + "x" +
                         std::to_string(a.n_cols()) + ", B is " + std::to_string(b.n_rows()) +
                         "x" + std::to_string(b.n_cols()));
  }
  std::vector<Triple> row;
  for (Index i = 0; i < a.n_rows(); ++i) {
    row.clear();
    for (Index k : a.row(i)) {
      for (Index j : b.row(k)) row.push_back({i, k, j});
    }
    std::sort(row.begin(), row.end(), [](const Triple& x, const Triple& y) {
      return x.j != y.j ? x.j < y.j : x.k < y.k;
    });
    fn(i, row);
  }
}

SymbolicProduct symbolic_multiply(const NonzeroStructure& a, const NonzeroStructure& b) {
  SymbolicProduct out;
  std::vector<Coord> c;
  for_each_mult_row(a, b, [&](Index i, std::span<const Triple> row) {
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (t == 0 || row[t].j != row[t - 1].j) c.push_back({i, row[t].j});
    }
    out.mults.triples.insert(out.mults.triples.end(), row.begin(), row.end());
  });
  out.c = NonzeroStructure::from_coords(a.n_rows(), b.n_cols(), std::move(c));
  return out;
}

Index count_mults(const NonzeroStructure& a, const NonzeroStructure& b) {
  if (a.n_cols() != b.n_rows()) throw DimensionError("inner dimensions differ");
  Index total = 0;
  for (Index i = 0; i < a.n_rows(); ++i) {
    for (Index k : a.row(i)) total += b.row_nnz(k);
  }
  return total;
}

namespace {

std::vector<Index> kept_indices(const std::vector<bool>& keep) {
  std::vector<Index> out;
  for (std::size_t t = 0; t < keep.size(); ++t) {
    if (keep[t]) out.push_back(static_cast<Index>(t));
  }
  return out;
}

NonzeroStructure restrict_structure(const NonzeroStructure& s, const std::vector<Index>& rows,
                                    const std::vector<Index>& cols) {
  std::vector<Index> new_col(static_cast<std::size_t>(s.n_cols()), -1);
  for (std::size_t t = 0; t < cols.size(); ++t) new_col[cols[t]] = static_cast<Index>(t);
  std::vector<Coord> coords;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Index k : s.row(rows[r])) {
      if (new_col[k] >= 0) coords.push_back({static_cast<Index>(r), new_col[k]});
    }
  }
  return NonzeroStructure::from_coords(static_cast<Index>(rows.size()),
                                       static_cast<Index>(cols.size()), std::move(coords));
}

}  // namespace

StrippedPair strip_empty(const NonzeroStructure& a, const NonzeroStructure& b) {
  if (a.n_cols() != b.n_rows()) throw DimensionError("inner dimensions differ");
  std::vector<bool> keep_i(static_cast<std::size_t>(a.n_rows()), true);
  std::vector<bool> keep_k(static_cast<std::size_t>(a.n_cols()), true);
  std::vector<bool> keep_j(static_cast<std::size_t>(b.n_cols()), true);

  // A nonzero (i,k) is live if i and k are kept; likewise (k,j) for B.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Index> a_row(keep_i.size(), 0), a_col(keep_k.size(), 0);
    std::vector<Index> b_row(keep_k.size(), 0), b_col(keep_j.size(), 0);
    for (Index i = 0; i < a.n_rows(); ++i) {
      if (!keep_i[i]) continue;
      for (Index k : a.row(i)) {
        if (keep_k[k]) ++a_row[i], ++a_col[k];
      }
    }
    for (Index k = 0; k < b.n_rows(); ++k) {
      if (!keep_k[k]) continue;
      for (Index j : b.row(k)) {
        if (keep_j[j]) ++b_row[k], ++b_col[j];
      }
    }
    for (std::size_t i = 0; i < keep_i.size(); ++i) {
      if (keep_i[i] && a_row[i] == 0) keep_i[i] = false, changed = true;
    }
    for (std::size_t k = 0; k < keep_k.size(); ++k) {
      if (keep_k[k] && (a_col[k] == 0 || b_row[k] == 0)) keep_k[k] = false, changed = true;
    }
    for (std::size_t j = 0; j < keep_j.size(); ++j) {
      if (keep_j[j] && b_col[j] == 0) keep_j[j] = false, changed = true;
    }
  }

  StrippedPair out;
  out.row_map = kept_indices(keep_i);
  out.inner_map = kept_indices(keep_k);
  out.col_map = kept_indices(keep_j);
  out.a = restrict_structure(a, out.row_map, out.inner_map);
  out.b = restrict_structure(b, out.inner_map, out.col_map);
  return out;
}

bool is_stripped(const NonzeroStructure& a, const NonzeroStructure& b) {
  if (a.n_cols() != b.n_rows()) return false;
  for (Index i = 0; i < a.n_rows(); ++i) {
    if (a.row_nnz(i) == 0) return false;
  }
  auto b_cols = b.col_counts();
  if (std::find(b_cols.begin(), b_cols.end(), 0) != b_cols.end()) return false;
  auto a_cols = a.col_counts();
  for (Index k = 0; k < a.n_cols(); ++k) {
    if (a_cols[k] == 0 || b.row_nnz(k) == 0) return false;
  }
  return true;
}

}  // namespace spgemm_hg
