#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rlmem/fm_index.hpp"
#include "rlmem/wavelet_tree.hpp"

namespace rlmem {

struct grid_point {
  uint64_t row, col;
  uint32_t sa;
  friend bool operator==(const grid_point&, const grid_point&) = default;
};

// One point per suffix-array row at (row, column) with the row's SA value
// as payload, where the column is the counting-formula image
//
//   column(row) = C[bwt[row]] + rank(bwt[row], row).
//
// For nucleotide rows that is LF; for sentinel rows it maps the t-th
// sentinel in BWT order to column t rather than to the sentinel's own
// string, keeping every backward-step window [C[c]+rank(c,s-1)+1,
// C[c]+rank(c,e)] — the sentinel one included — a contiguous column
// interval. The formula is injective per symbol and buckets are disjoint,
// so the columns form a permutation of [1, n].
class mem_grid {
 public:
  explicit mem_grid(const fm_index& fm) : n_(fm.size()), payload_(fm.sa()) {
    std::vector<uint64_t> cols(n_);
    for (uint64_t row = 1; row <= n_; ++row) {
      uint8_t c = fm.bwt_at(row);
      cols[row - 1] = fm.c_of(c) + fm.bwt().rank(c, row);
    }
    cols_ = wavelet_tree(cols, uint32_t(n_));
  }

  uint64_t size() const { return n_; }

  uint64_t column_of(uint64_t row) const { return cols_.access(row); }

  uint32_t payload_at(uint64_t row) const {
    if (row < 1 || row > n_)
      throw std::out_of_range("mem_grid: row " + std::to_string(row) + " out of [1," +
                              std::to_string(n_) + "]");
    return payload_[row - 1];
  }

  // All points with row in [rows.s, rows.e] and column in [cols.s, cols.e],
  // ascending by row.
  std::vector<grid_point> report_area(sa_range rows, sa_range cols) const {
    std::vector<grid_point> out;
    if (rows.empty() || cols.empty()) return out;
    for (const auto& e : cols_.range_list(rows.s, rows.e, uint32_t(cols.s), uint32_t(cols.e)))
      for (uint64_t t = e.rank_before + 1; t <= e.rank_through; ++t) {
        uint64_t row = cols_.select(e.symbol, t);
        out.push_back({row, e.symbol, payload_[row - 1]});
      }
    std::sort(out.begin(), out.end(),
              [](const grid_point& a, const grid_point& b) { return a.row < b.row; });
    return out;
  }

 private:
  uint64_t n_ = 0;
  wavelet_tree cols_;
  std::vector<uint32_t> payload_;
};

}  // namespace rlmem
