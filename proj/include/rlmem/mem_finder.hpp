#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/bibwt.hpp"
#include "rlmem/fm_index.hpp"
#include "rlmem/grid.hpp"
#include "rlmem/rle.hpp"

namespace rlmem {

enum class report_mode { sa, grid };
enum class coord_space { rle, expanded, both };

struct mem_params {
  uint64_t tau = 2;         // minimum match length, compressed symbols
  uint64_t max_excess = 0;  // largest tolerated run-length excess
  report_mode mode = report_mode::sa;
  coord_space coords = coord_space::rle;
  unsigned threads = 1;
};

// One maximal exact match between two strings of the collection. start_*
// are 1-based compressed-symbol positions local to their string; exp_*
// bound the expanded span from the first base of the first run to the last
// base of the last run. Field order makes the defaulted comparison sort by
// (id_a, start_a, id_b, start_b): ties on those four agree on the rest.
struct mem_record {
  uint32_t id_a = 0;
  uint32_t start_a = 0;
  uint32_t id_b = 0;
  uint32_t start_b = 0;
  uint32_t length = 0;
  uint32_t excess = 0;
  uint64_t exp_start_a = 0, exp_end_a = 0;
  uint64_t exp_start_b = 0, exp_end_b = 0;
  friend auto operator<=>(const mem_record&, const mem_record&) = default;
};

// Largest absolute run-length difference over two aligned compressed spans.
// The spans must carry the same nucleotides run for run (meta flags may
// differ); crossing a sentinel is a caller error.
inline uint32_t run_length_excess(const rlc_collection& rlc, uint64_t pos_a, uint64_t pos_b,
                                  uint64_t d) {
  uint32_t excess = 0;
  for (uint64_t i = 0; i < d; ++i) {
    if (rlc.symbol(pos_a + i) == hp_sentinel || rlc.symbol(pos_b + i) == hp_sentinel)
      throw std::out_of_range("run_length_excess: span crosses a string boundary");
    assert(hp_to_base(rlc.symbol(pos_a + i)) == hp_to_base(rlc.symbol(pos_b + i)));
    uint32_t la = rlc.run_length_at(pos_a + i), lb = rlc.run_length_at(pos_b + i);
    excess = std::max(excess, la > lb ? la - lb : lb - la);
  }
  return excess;
}

// Canonical form among the strand-symmetric variants of a record: map both
// sides to their mates (coordinates flip to the far end), order the sides
// by string id, keep the lexicographically smaller of the two orientations.
inline mem_record canonical_record(const rlc_collection& rlc, const mem_record& rec) {
  auto oriented = [](mem_record r) {
    if (r.id_a > r.id_b) {
      std::swap(r.id_a, r.id_b);
      std::swap(r.start_a, r.start_b);
      std::swap(r.exp_start_a, r.exp_start_b);
      std::swap(r.exp_end_a, r.exp_end_b);
    }
    return r;
  };
  mem_record m = rec;
  m.id_a = rec.id_a ^ 1;
  m.start_a = uint32_t(rlc.length(rec.id_a) - (rec.start_a + rec.length - 1) + 1);
  m.exp_start_a = rlc.expanded_length(rec.id_a) - rec.exp_end_a + 1;
  m.exp_end_a = rlc.expanded_length(rec.id_a) - rec.exp_start_a + 1;
  m.id_b = rec.id_b ^ 1;
  m.start_b = uint32_t(rlc.length(rec.id_b) - (rec.start_b + rec.length - 1) + 1);
  m.exp_start_b = rlc.expanded_length(rec.id_b) - rec.exp_end_b + 1;
  m.exp_end_b = rlc.expanded_length(rec.id_b) - rec.exp_start_b + 1;
  return std::min(oriented(rec), oriented(m));
}

// Canonical record for a match of d symbols at global positions pos_a and
// pos_b (both 1-based into the compressed text).
inline mem_record make_mem_record(const rlc_collection& rlc, uint64_t pos_a, uint64_t pos_b,
                                  uint64_t d, uint32_t excess) {
  mem_record rec;
  rec.length = uint32_t(d);
  rec.excess = excess;
  auto fill = [&](uint64_t pos, uint32_t& id, uint32_t& start, uint64_t& exp_start,
                  uint64_t& exp_end) {
    id = rlc.string_id_of(pos);
    uint64_t origin = rlc.expanded_coord(rlc.string_start(id));
    start = uint32_t(pos - rlc.string_start(id) + 1);
    exp_start = rlc.expanded_coord(pos) - origin + 1;
    exp_end = rlc.expanded_coord(pos + d - 1) + rlc.run_length_at(pos + d - 1) - 1 - origin + 1;
  };
  fill(pos_a, rec.id_a, rec.start_a, rec.exp_start_a, rec.exp_end_a);
  fill(pos_b, rec.id_b, rec.start_b, rec.exp_start_b, rec.exp_end_b);
  return canonical_record(rlc, rec);
}

struct traversal_stats {
  uint64_t nodes_visited = 0;
  uint64_t nodes_reported = 0;
  uint64_t records_emitted = 0;  // pre-deduplication
  uint64_t max_extends_per_node = 0;
  uint64_t max_grid_points_per_node = 0;
  // Reporting nodes where the grid yielded more points than the node has
  // occurrences; the per-node reporting budget is exactly one point per
  // occurrence, so anything above zero is a defect.
  uint64_t grid_nodes_over_budget = 0;
};

// All-vs-all MEM enumeration: one pass over the suffix-link tree, reporting
// at every node that is maximal on both sides and at least tau deep. At a
// reporting node the occurrences are split into cells by (left symbol,
// right symbol) context pair; two occurrences form a MEM exactly when both
// coordinates differ — with sentinel contexts always counting as fresh,
// since every string bounds itself with its own sentinel.
class mem_finder {
 public:
  mem_finder(const rlc_collection& rlc, const fm_index& fm)
      : rlc_(rlc), fm_(fm), bi_(fm) {
    if (rlc.size() != fm.size())
      throw std::invalid_argument("mem_finder: collection and index sizes differ");
  }

  std::vector<mem_record> run(const mem_params& params, traversal_stats* stats = nullptr) const {
    if (params.tau < 1) throw std::invalid_argument("mem_finder: tau must be at least 1");
    unsigned threads = std::max(1u, params.threads);
    std::optional<mem_grid> grid;
    if (params.mode == report_mode::grid) grid.emplace(fm_);

    // The root itself never reports (depth 0 < tau); its children seed the
    // workers, which own disjoint subtrees and private sinks.
    std::vector<bi_range> seeds;
    bi_range root = bi_.root();
    for (uint8_t c : bi_.enumerate_left(root)) {
      if (c == hp_sentinel) continue;
      bi_range u = bi_.extend_left(root, c);
      if (!u.empty() && bi_.is_right_maximal(u)) seeds.push_back(u);
    }

    const mem_grid* g = grid ? &*grid : nullptr;
    std::vector<worker_state> states(std::min<size_t>(threads, std::max<size_t>(seeds.size(), 1)));
    if (states.size() == 1) {
      for (const bi_range& s : seeds) walk(s, params, g, states[0]);
    } else {
      std::vector<std::thread> pool;
      for (size_t w = 0; w < states.size(); ++w)
        pool.emplace_back([&, w] {
          for (size_t i = w; i < seeds.size(); i += states.size())
            walk(seeds[i], params, g, states[w]);
        });
      for (std::thread& t : pool) t.join();
    }

    std::vector<mem_record> out;
    traversal_stats total;
    total.nodes_visited = 1;  // the root
    for (worker_state& ws : states) {
      out.insert(out.end(), ws.out.begin(), ws.out.end());
      total.nodes_visited += ws.stats.nodes_visited;
      total.nodes_reported += ws.stats.nodes_reported;
      total.records_emitted += ws.stats.records_emitted;
      total.max_extends_per_node = std::max(total.max_extends_per_node,
                                            ws.stats.max_extends_per_node);
      total.max_grid_points_per_node = std::max(total.max_grid_points_per_node,
                                                ws.stats.max_grid_points_per_node);
      total.grid_nodes_over_budget += ws.stats.grid_nodes_over_budget;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (stats) *stats = total;
    return out;
  }

 private:
  // Occurrence starts (global compressed positions) sharing one context pair.
  struct context_cell {
    uint8_t left, right;
    std::vector<uint64_t> occs;
  };

  struct worker_state {
    std::vector<mem_record> out;
    traversal_stats stats;
    uint64_t extends = 0;
  };

  void walk(const bi_range& start, const mem_params& params, const mem_grid* grid,
            worker_state& w) const {
    std::vector<bi_range> stack{start};
    while (!stack.empty()) {
      bi_range v = stack.back();
      stack.pop_back();
      ++w.stats.nodes_visited;
      if (v.depth >= params.tau && bi_.is_left_maximal(v) && bi_.is_right_maximal(v))
        report_node(v, params, grid, w);
      // Follow explicit Weiner links only: cW is pushed when it is itself a
      // suffix-link-tree node, i.e. right-maximal.
      for (uint8_t c : bi_.enumerate_left(v)) {
        if (c == hp_sentinel) continue;
        bi_range u = bi_.extend_left(v, c);
        if (!u.empty() && bi_.is_right_maximal(u)) stack.push_back(u);
      }
    }
  }

  void report_node(const bi_range& v, const mem_params& params, const mem_grid* grid,
                   worker_state& w) const {
    ++w.stats.nodes_reported;
    w.extends = 0;
    std::vector<context_cell> cells =
        grid ? collect_cells_grid(v, *grid, w) : collect_cells_sa(v, w);
    w.stats.max_extends_per_node = std::max(w.stats.max_extends_per_node, w.extends);
    emit_pairs(cells, v.depth, params, w);
  }

  // Mode A: occurrence lists straight from the suffix array. Children of v
  // come first ($-bounded block, then nucleotides ascending); inside a
  // child the Weiner symbols ascend. Occurrences behind a nucleotide Weiner
  // link sit one symbol left of the link's range, hence SA + 1; occurrences
  // with a sentinel on either side are read off the child rows themselves.
  std::vector<context_cell> collect_cells_sa(const bi_range& v, worker_state& w) const {
    std::vector<context_cell> cells;

    bi_range end_block = bi_.extend_right(v, hp_sentinel);
    ++w.extends;
    if (!end_block.empty()) {
      for (const auto& e : fm_.bwt().range_list(end_block.fwd.s, end_block.fwd.e)) {
        context_cell cell{uint8_t(e.symbol), hp_sentinel, {}};
        for (uint64_t t = e.rank_before + 1; t <= e.rank_through; ++t)
          cell.occs.push_back(fm_.sa_at(fm_.bwt().select(e.symbol, t)));
        cells.push_back(std::move(cell));
      }
    }

    for (uint8_t c : bi_.enumerate_right(v)) {
      if (c == hp_sentinel) continue;
      bi_range child = bi_.extend_right(v, c);
      ++w.extends;
      for (const auto& e : fm_.bwt().range_list(child.fwd.s, child.fwd.e)) {
        context_cell cell{uint8_t(e.symbol), c, {}};
        if (e.symbol == hp_sentinel) {
          for (uint64_t t = e.rank_before + 1; t <= e.rank_through; ++t)
            cell.occs.push_back(fm_.sa_at(fm_.bwt().select(e.symbol, t)));
        } else {
          bi_range u = bi_.extend_left(child, uint8_t(e.symbol));
          ++w.extends;
          for (uint64_t x = u.fwd.s; x <= u.fwd.e; ++x)
            cell.occs.push_back(fm_.sa_at(x) + 1);
        }
        cells.push_back(std::move(cell));
      }
    }
    return cells;
  }

  // Mode B: the same cells read off the grid. The children of v partition
  // its rows (Q); each distinct bwt symbol of v's rows owns one contiguous
  // column window (L, the backward-step image). Every row of v has its
  // point in exactly one L window, and the point's payload is the
  // occurrence position itself — the row holds X, not its extension.
  std::vector<context_cell> collect_cells_grid(const bi_range& v, const mem_grid& grid,
                                               worker_state& w) const {
    struct row_block {
      uint8_t symbol;
      sa_range rows;
    };
    std::vector<row_block> q;
    bi_range end_block = bi_.extend_right(v, hp_sentinel);
    ++w.extends;
    if (!end_block.empty()) q.push_back({hp_sentinel, end_block.fwd});
    for (uint8_t c : bi_.enumerate_right(v)) {
      if (c == hp_sentinel) continue;
      bi_range child = bi_.extend_right(v, c);
      ++w.extends;
      q.push_back({c, child.fwd});
    }

    std::vector<context_cell> cells;
    uint64_t points_seen = 0;
    for (const auto& e : fm_.bwt().range_list(v.fwd.s, v.fwd.e)) {
      sa_range cols{fm_.c_of(uint8_t(e.symbol)) + e.rank_before + 1,
                    fm_.c_of(uint8_t(e.symbol)) + e.rank_through};
      size_t qi = 0;
      for (const grid_point& pt : grid.report_area(v.fwd, cols)) {
        ++points_seen;
        while (qi < q.size() && q[qi].rows.e < pt.row) ++qi;
        assert(qi < q.size() && q[qi].rows.s <= pt.row);
        if (cells.empty() || cells.back().left != e.symbol ||
            cells.back().right != q[qi].symbol)
          cells.push_back({uint8_t(e.symbol), q[qi].symbol, {}});
        cells.back().occs.push_back(pt.sa);
      }
    }
    w.stats.max_grid_points_per_node = std::max(w.stats.max_grid_points_per_node, points_seen);
    if (points_seen > v.fwd.size()) ++w.stats.grid_nodes_over_budget;
    return cells;
  }

  void emit_pairs(const std::vector<context_cell>& cells, uint64_t d, const mem_params& params,
                  worker_state& w) const {
    for (size_t i = 0; i < cells.size(); ++i) {
      // Sentinel contexts on both sides are pairwise distinct, so the cell
      // pairs with itself: full strings matching other full strings.
      if (cells[i].left == hp_sentinel && cells[i].right == hp_sentinel)
        for (size_t x = 0; x < cells[i].occs.size(); ++x)
          for (size_t y = x + 1; y < cells[i].occs.size(); ++y)
            try_emit(cells[i].occs[x], cells[i].occs[y], d, params, w);
      for (size_t j = i + 1; j < cells.size(); ++j) {
        bool left_ok = cells[i].left != cells[j].left || cells[i].left == hp_sentinel;
        bool right_ok = cells[i].right != cells[j].right || cells[i].right == hp_sentinel;
        if (!left_ok || !right_ok) continue;
        for (uint64_t x : cells[i].occs)
          for (uint64_t y : cells[j].occs) try_emit(x, y, d, params, w);
      }
    }
  }

  void try_emit(uint64_t pos_a, uint64_t pos_b, uint64_t d, const mem_params& params,
                worker_state& w) const {
    uint32_t id_a = rlc_.string_id_of(pos_a), id_b = rlc_.string_id_of(pos_b);
    if (id_a == id_b || (id_a ^ 1) == id_b) return;
    check_soundness(pos_a, pos_b, d);
    uint32_t excess = run_length_excess(rlc_, pos_a, pos_b, d);
    if (excess > params.max_excess) return;
    ++w.stats.records_emitted;
    w.out.push_back(make_mem_record(rlc_, pos_a, pos_b, d, excess));
  }

  void check_soundness(uint64_t pos_a, uint64_t pos_b, uint64_t d) const {
#ifndef NDEBUG
    const std::vector<uint8_t>& t = rlc_.text();
    for (uint64_t i = 0; i < d; ++i) assert(t[pos_a - 1 + i] == t[pos_b - 1 + i]);
    uint8_t la = pos_a == 1 || t[pos_a - 2] == hp_sentinel ? hp_sentinel : t[pos_a - 2];
    uint8_t lb = pos_b == 1 || t[pos_b - 2] == hp_sentinel ? hp_sentinel : t[pos_b - 2];
    assert(la != lb || la == hp_sentinel);
    uint8_t ra = t[pos_a - 1 + d], rb = t[pos_b - 1 + d];
    assert(ra != rb || ra == hp_sentinel);
#else
    (void)pos_a;
    (void)pos_b;
    (void)d;
#endif
  }

  const rlc_collection& rlc_;
  const fm_index& fm_;
  bi_index bi_;
};

}  // namespace rlmem
