#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlmem/bit_vector.hpp"

namespace rlmem {

// Balanced wavelet tree over symbols [1, sigma]. Positions and ranks are
// 1-based; rank arguments are prefix lengths. Each node splits its value
// interval [lo, hi] at mid = (lo+hi)/2 and stores one bit per symbol of its
// subsequence (1 = symbol > mid). Leaves and empty subsequences store
// nothing, so child pointers may be null. Immutable after construction.
class wavelet_tree {
 public:
  struct list_entry {
    uint32_t symbol;
    uint64_t rank_before;   // occurrences of symbol before the queried range
    uint64_t rank_through;  // occurrences of symbol up to the range end
  };

  wavelet_tree() = default;

  template <class Sym>
  wavelet_tree(const std::vector<Sym>& seq, uint32_t sigma) : n_(seq.size()), sigma_(sigma) {
    if (sigma_ < 1) throw std::invalid_argument("wavelet_tree: sigma must be positive");
    std::vector<uint32_t> syms(seq.begin(), seq.end());
    for (uint32_t s : syms)
      if (s < 1 || s > sigma_)
        throw std::invalid_argument("wavelet_tree: symbol " + std::to_string(s) +
                                    " out of [1," + std::to_string(sigma_) + "]");
    root_ = build(syms, 1, sigma_);
  }

  uint64_t size() const { return n_; }
  uint32_t sigma() const { return sigma_; }

  uint32_t access(uint64_t pos) const {
    if (pos < 1 || pos > n_)
      throw std::out_of_range("wavelet_tree::access: position " + std::to_string(pos) +
                              " out of [1," + std::to_string(n_) + "]");
    const node* cur = root_.get();
    uint32_t lo = 1, hi = sigma_;
    while (lo < hi) {
      uint32_t mid = lo + (hi - lo) / 2;
      if (cur->bits.test(pos)) {
        pos = cur->bits.rank1(pos);
        cur = cur->right.get();
        lo = mid + 1;
      } else {
        pos = cur->bits.rank0(pos);
        cur = cur->left.get();
        hi = mid;
      }
    }
    return lo;
  }

  // Occurrences of c among positions [1, prefix].
  uint64_t rank(uint32_t c, uint64_t prefix) const {
    check_symbol(c);
    if (prefix > n_)
      throw std::out_of_range("wavelet_tree::rank: prefix " + std::to_string(prefix) +
                              " exceeds size " + std::to_string(n_));
    const node* cur = root_.get();
    uint32_t lo = 1, hi = sigma_;
    while (lo < hi) {
      if (!cur || prefix == 0) return 0;
      uint32_t mid = lo + (hi - lo) / 2;
      if (c <= mid) {
        prefix = cur->bits.rank0(prefix);
        cur = cur->left.get();
        hi = mid;
      } else {
        prefix = cur->bits.rank1(prefix);
        cur = cur->right.get();
        lo = mid + 1;
      }
    }
    return prefix;
  }

  // Position of the r-th occurrence of c, 1 <= r <= rank(c, size()).
  uint64_t select(uint32_t c, uint64_t r) const {
    check_symbol(c);
    if (r < 1 || r > rank(c, n_))
      throw std::out_of_range("wavelet_tree::select: occurrence " + std::to_string(r) +
                              " of symbol " + std::to_string(c) + " does not exist");
    return select_walk(root_.get(), 1, sigma_, c, r);
  }

  // One triplet per distinct symbol in positions [i, j], ascending by symbol:
  // (symbol, rank(symbol, i-1), rank(symbol, j)). Empty ranges (i = j+1) are
  // allowed and yield an empty list.
  std::vector<list_entry> range_list(uint64_t i, uint64_t j) const {
    std::vector<list_entry> out;
    if (i > j) return out;
    check_range(i, j, "range_list");
    list_walk(root_.get(), 1, sigma_, i, j, out);
    return out;
  }

  // Restriction of range_list to symbols in [a, b]. The walk prunes
  // subtrees outside the symbol interval, so cost scales with the entries
  // reported rather than with the distinct symbols in [i, j].
  std::vector<list_entry> range_list(uint64_t i, uint64_t j, uint32_t a, uint32_t b) const {
    std::vector<list_entry> out;
    if (i > j) return out;
    check_range(i, j, "range_list");
    a = std::max<uint32_t>(a, 1);
    b = std::min(b, sigma_);
    if (a <= b) bounded_list_walk(root_.get(), 1, sigma_, i, j, a, b, out);
    return out;
  }

  // Positions p in [i, j] whose symbol lies in [a, b]. Empty position or
  // symbol ranges yield 0.
  uint64_t range_count(uint64_t i, uint64_t j, uint32_t a, uint32_t b) const {
    if (i > j) return 0;
    check_range(i, j, "range_count");
    a = std::max<uint32_t>(a, 1);
    b = std::min(b, sigma_);
    return count_walk(root_.get(), 1, sigma_, i, j, a, b);
  }

 private:
  struct node {
    bit_vector bits;
    std::unique_ptr<node> left, right;
  };

  static std::unique_ptr<node> build(std::vector<uint32_t>& seq, uint32_t lo, uint32_t hi) {
    if (seq.empty() || lo == hi) return nullptr;
    uint32_t mid = lo + (hi - lo) / 2;
    auto nd = std::make_unique<node>();
    nd->bits = bit_vector(seq.size());
    std::vector<uint32_t> low, high;
    for (uint64_t k = 0; k < seq.size(); ++k) {
      if (seq[k] > mid) {
        nd->bits.set(k + 1);
        high.push_back(seq[k]);
      } else {
        low.push_back(seq[k]);
      }
    }
    nd->bits.build();
    nd->left = build(low, lo, mid);
    nd->right = build(high, mid + 1, hi);
    return nd;
  }

  static uint64_t select_walk(const node* cur, uint32_t lo, uint32_t hi, uint32_t c, uint64_t r) {
    if (lo == hi) return r;
    uint32_t mid = lo + (hi - lo) / 2;
    if (c <= mid) return cur->bits.select0(select_walk(cur->left.get(), lo, mid, c, r));
    return cur->bits.select1(select_walk(cur->right.get(), mid + 1, hi, c, r));
  }

  static void list_walk(const node* cur, uint32_t lo, uint32_t hi, uint64_t i, uint64_t j,
                        std::vector<list_entry>& out) {
    if (i > j) return;
    if (lo == hi) {
      // Leaf positions of a symbol coincide with its occurrence ranks.
      out.push_back({lo, i - 1, j});
      return;
    }
    if (!cur) return;
    uint32_t mid = lo + (hi - lo) / 2;
    list_walk(cur->left.get(), lo, mid, cur->bits.rank0(i - 1) + 1, cur->bits.rank0(j), out);
    list_walk(cur->right.get(), mid + 1, hi, cur->bits.rank1(i - 1) + 1, cur->bits.rank1(j), out);
  }

  static void bounded_list_walk(const node* cur, uint32_t lo, uint32_t hi, uint64_t i,
                                uint64_t j, uint32_t a, uint32_t b,
                                std::vector<list_entry>& out) {
    if (i > j || b < lo || hi < a) return;
    if (lo == hi) {
      out.push_back({lo, i - 1, j});
      return;
    }
    if (!cur) return;
    uint32_t mid = lo + (hi - lo) / 2;
    bounded_list_walk(cur->left.get(), lo, mid, cur->bits.rank0(i - 1) + 1, cur->bits.rank0(j),
                      a, b, out);
    bounded_list_walk(cur->right.get(), mid + 1, hi, cur->bits.rank1(i - 1) + 1,
                      cur->bits.rank1(j), a, b, out);
  }

  static uint64_t count_walk(const node* cur, uint32_t lo, uint32_t hi, uint64_t i, uint64_t j,
                             uint32_t a, uint32_t b) {
    if (i > j || a > b || b < lo || hi < a) return 0;
    if (a <= lo && hi <= b) return j - i + 1;
    if (!cur) return 0;
    uint32_t mid = lo + (hi - lo) / 2;
    return count_walk(cur->left.get(), lo, mid, cur->bits.rank0(i - 1) + 1, cur->bits.rank0(j),
                      a, b) +
           count_walk(cur->right.get(), mid + 1, hi, cur->bits.rank1(i - 1) + 1,
                      cur->bits.rank1(j), a, b);
  }

  void check_symbol(uint32_t c) const {
    if (c < 1 || c > sigma_)
      throw std::invalid_argument("wavelet_tree: symbol " + std::to_string(c) + " out of [1," +
                                  std::to_string(sigma_) + "]");
  }

  void check_range(uint64_t i, uint64_t j, const char* what) const {
    if (i < 1 || j > n_)
      throw std::out_of_range(std::string("wavelet_tree::") + what + ": range [" +
                              std::to_string(i) + "," + std::to_string(j) + "] out of [1," +
                              std::to_string(n_) + "]");
  }

  uint64_t n_ = 0;
  uint32_t sigma_ = 1;
  std::unique_ptr<node> root_;
};

}  // namespace rlmem
