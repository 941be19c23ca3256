#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/fm_index.hpp"

namespace rlmem {

// Synchronized pair of SA ranges in ONE suffix array: fwd holds the suffixes
// prefixed by a string X, rc those prefixed by its reverse complement X̂.
// depth = |X| in compressed symbols. The collection contains both strands of
// every read, so |fwd| = |rc| whenever X is sentinel-free.
struct bi_range {
  sa_range fwd, rc;
  uint64_t depth = 0;
  bool empty() const { return fwd.empty(); }
  friend bool operator==(const bi_range&, const bi_range&) = default;
};

// Bi-directional view of the FM-index. A left extension runs one backward
// step on fwd; the rc side moves without a second search, and vice versa.
//
// Synchronization: inside the range of X̂, the sub-blocks grouped by the
// symbol following X̂ are consecutive and ascending, with X̂-at-string-end
// (followed by its own sentinel) first. Occurrences of X preceded by d pair
// with occurrences of X̂ followed by $ when d = $, and by complement(d)
// otherwise. Hence the block of X̂·complement(c) starts after the $ block
// and the blocks of followers below complement(c), i.e. after
//
//   y = count of $ in bwt[fwd] + count of symbols > c in bwt[fwd],
//
// counted over the X range because the follower blocks of X̂ mirror the
// left contexts of X with the order reversed by complementation.
class bi_index {
 public:
  explicit bi_index(const fm_index& fm) : fm_(fm) {}

  const fm_index& fm() const { return fm_; }

  bi_range root() const { return {fm_.full_range(), fm_.full_range(), 0}; }

  // Range pair of cX. Sentinel extensions are empty: no suffix continues
  // past a sentinel, so "$X" occurs nowhere (and $* occurs nowhere at all).
  bi_range extend_left(const bi_range& b, uint8_t c) const {
    check_symbol(c);
    if (b.empty()) return none(b.depth + 1);
    check_synchronized(b);
    if (c == hp_sentinel || c == hp_sentinel_meta) return none(b.depth + 1);
    sa_range fwd = fm_.backward_step(b.fwd, c);
    if (fwd.empty()) return none(b.depth + 1);
    uint64_t y = sentinels_in(b.fwd) + fm_.bwt().range_count(b.fwd.s, b.fwd.e, c + 1, hp_sigma);
    return {fwd, {b.rc.s + y, b.rc.s + y + fwd.size() - 1}, b.depth + 1};
  }

  // Range pair of Xc. Extending right by $ selects the occurrences of X
  // flush against a string end: they form the first block of fwd, and their
  // count equals the sentinel count in bwt[rc] (X at the end of a string
  // pairs with X̂ at the start of its mate). The result has no rc side —
  // (X$)-hat would contain $*, which never occurs — so it cannot be
  // extended further; it exists for boundary handling during reporting.
  bi_range extend_right(const bi_range& b, uint8_t c) const {
    check_symbol(c);
    if (b.empty()) return none(b.depth + 1);
    check_synchronized(b);
    if (c == hp_sentinel_meta) return none(b.depth + 1);
    if (c == hp_sentinel) {
      uint64_t z = sentinels_in(b.rc);
      if (z == 0) return none(b.depth + 1);
      return {{b.fwd.s, b.fwd.s + z - 1}, {1, 0}, b.depth + 1};
    }
    uint8_t cb = complement_hp(c);
    sa_range rc = fm_.backward_step(b.rc, cb);
    if (rc.empty()) return none(b.depth + 1);
    uint64_t y = sentinels_in(b.rc) + fm_.bwt().range_count(b.rc.s, b.rc.e, cb + 1, hp_sigma);
    return {{b.fwd.s + y, b.fwd.s + y + rc.size() - 1}, rc, b.depth + 1};
  }

  // Distinct symbols preceding X, ascending ($ stands for the occurrences
  // at string starts).
  std::vector<uint8_t> enumerate_left(const bi_range& b) const {
    std::vector<uint8_t> out;
    if (b.empty()) return out;
    for (const auto& e : fm_.bwt().range_list(b.fwd.s, b.fwd.e)) out.push_back(uint8_t(e.symbol));
    return out;
  }

  // Distinct symbols following X, ascending ($ stands for the occurrences
  // at string ends). Read off bwt[rc]: a $ there marks X̂ at a string start,
  // i.e. X at a string end; a nucleotide d marks follower complement(d).
  std::vector<uint8_t> enumerate_right(const bi_range& b) const {
    std::vector<uint8_t> out;
    if (b.rc.empty()) return out;
    for (const auto& e : fm_.bwt().range_list(b.rc.s, b.rc.e))
      out.push_back(e.symbol == hp_sentinel ? hp_sentinel : complement_hp(uint8_t(e.symbol)));
    std::sort(out.begin(), out.end());
    return out;
  }

  // X is left-maximal when its occurrences have at least two distinct left
  // contexts. Sentinel contexts are pairwise distinct (each string has its
  // own), so two $ entries already qualify; otherwise one access plus one
  // rank probe decides whether a second symbol exists.
  bool is_left_maximal(const bi_range& b) const { return branching(b.fwd); }

  bool is_right_maximal(const bi_range& b) const { return branching(b.rc); }

  // Proper, non-root ancestors of the suffix-tree node at v, ascending by
  // depth. Walking lf_inverse from row v.fwd.s spells label(v) left to
  // right; extending the root right by the spelled symbols rebuilds the
  // synchronized pair of every prefix, and each right-maximal prefix of
  // depth < v.depth is exactly an ancestor node.
  std::vector<bi_range> ancestors(const bi_range& v) const {
    std::vector<bi_range> out;
    if (v.empty() || v.depth == 0) return out;
    check_synchronized(v);
    uint64_t row = v.fwd.s;
    bi_range cur = root();
    for (uint64_t t = 1; t <= v.depth; ++t) {
      uint8_t c = fm_.first_column_symbol(row);
      if (c == hp_sentinel)
        throw std::out_of_range("bi_index: node depth " + std::to_string(v.depth) +
                                " runs past a string end");
      cur = extend_right(cur, c);
      if (t < v.depth) {
        if (is_right_maximal(cur)) out.push_back(cur);
        row = fm_.lf_inverse(row);
      }
    }
    return out;
  }

 private:
  static bi_range none(uint64_t depth) { return {{1, 0}, {1, 0}, depth}; }

  uint64_t sentinels_in(sa_range r) const {
    return fm_.bwt().range_count(r.s, r.e, hp_sentinel, hp_sentinel);
  }

  bool branching(sa_range r) const {
    if (r.size() < 2) return false;
    uint8_t c = uint8_t(fm_.bwt().access(r.s));
    if (c == hp_sentinel) return true;
    return fm_.bwt().rank(c, r.e) - fm_.bwt().rank(c, r.s - 1) < r.size();
  }

  static void check_symbol(uint8_t c) {
    if (!is_hp_code(c))
      throw std::invalid_argument("bi_index: symbol code " + std::to_string(c) +
                                  " out of range");
  }

  void check_synchronized(const bi_range& b) const {
    if (b.rc.empty())
      throw std::invalid_argument("bi_index: range lost its reverse-complement side "
                                  "(sentinel-extended ranges cannot be extended)");
  }

  const fm_index& fm_;
};

}  // namespace rlmem
