#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/bit_vector.hpp"
#include "rlmem/rle.hpp"
#include "rlmem/wavelet_tree.hpp"

namespace rlmem {

// Closed interval of suffix-array rows; empty when e < s.
struct sa_range {
  uint64_t s = 1, e = 0;
  bool empty() const { return e < s; }
  uint64_t size() const { return empty() ? 0 : e - s + 1; }
  friend bool operator==(const sa_range&, const sa_range&) = default;
};

// FM-index over a sentinel-terminated string collection on the run-length
// alphabet. Multi-string suffix order: every string's suffixes end at its own
// sentinel, each sentinel sorts below all other symbols, and whole-sentinel
// suffixes tie-break by string id — so the first num_strings() rows form the
// sentinel bucket in id order. The BWT predecessor of a string's first symbol
// is that string's own sentinel, making LF a permutation that cycles within
// each string. Rows and text positions are 1-based.
class fm_index {
 public:
  explicit fm_index(const std::vector<uint8_t>& text) {
    init_layout(text);
    std::vector<uint32_t> doc(n_);
    for (uint64_t i = 0, d = 0; i < n_; ++i) {
      doc[i] = uint32_t(d);
      if (text[i] == hp_sentinel) ++d;
    }
    sa_.resize(n_);
    std::iota(sa_.begin(), sa_.end(), uint32_t(1));
    std::sort(sa_.begin(), sa_.end(), [&](uint32_t a, uint32_t b) {
      uint64_t i = a - 1, j = b - 1;
      while (true) {
        bool ea = text[i] == hp_sentinel, eb = text[j] == hp_sentinel;
        if (ea || eb) return ea && eb ? doc[i] < doc[j] : ea;
        if (text[i] != text[j]) return text[i] < text[j];
        ++i;
        ++j;
      }
    });
    std::vector<uint8_t> bwt_syms(n_);
    for (uint64_t r = 0; r < n_; ++r) {
      uint32_t p = sa_[r];
      bool at_start = p == 1 || text[p - 2] == hp_sentinel;
      bwt_syms[r] = at_start ? hp_sentinel : text[p - 2];
    }
    finish(bwt_syms);
  }

  explicit fm_index(const rlc_collection& r) : fm_index(r.text()) {}

  // Reassembles an index from a stored BWT and suffix array, reconstructing
  // the text and verifying the two parts cohere. Returns the index and text.
  static std::pair<fm_index, std::vector<uint8_t>> from_parts(
      const std::vector<uint8_t>& bwt_syms, std::vector<uint32_t> sa) {
    fm_index fm;
    fm.n_ = sa.size();
    if (fm.n_ == 0) throw std::runtime_error("fm_index: stored index is empty");
    if (bwt_syms.size() != fm.n_)
      throw std::runtime_error("fm_index: BWT and suffix array lengths differ");
    std::vector<bool> seen(fm.n_ + 1, false);
    for (uint32_t p : sa) {
      if (p < 1 || p > fm.n_ || seen[p])
        throw std::runtime_error("fm_index: stored suffix array is not a permutation");
      seen[p] = true;
    }
    fm.count_symbols(bwt_syms);
    std::vector<uint8_t> text(fm.n_);
    for (uint64_t j = 1; j <= fm.n_; ++j) text[sa[j - 1] - 1] = fm.first_column_symbol(j);
    try {
      fm.init_layout(text);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("fm_index: reconstructed text is malformed: ") +
                               e.what());
    }
    for (uint64_t j = 1; j <= fm.n_; ++j) {
      uint32_t p = sa[j - 1];
      bool at_start = p == 1 || text[p - 2] == hp_sentinel;
      uint8_t expect = at_start ? hp_sentinel : text[p - 2];
      if (bwt_syms[j - 1] != expect)
        throw std::runtime_error("fm_index: BWT does not match suffix array at row " +
                                 std::to_string(j));
      if (j <= fm.m_ && fm.doc_of(p) != j - 1)
        throw std::runtime_error("fm_index: sentinel bucket out of string-id order");
    }
    fm.sa_ = std::move(sa);
    fm.finish(bwt_syms);
    return {std::move(fm), std::move(text)};
  }

  uint64_t size() const { return n_; }
  uint32_t num_strings() const { return m_; }
  const wavelet_tree& bwt() const { return bwt_; }
  const std::vector<uint32_t>& sa() const { return sa_; }

  // Symbols with code strictly below c; c_of(sigma+1) = size().
  uint64_t c_of(uint8_t c) const {
    if (c < 1 || c > hp_sigma + 1)
      throw std::invalid_argument("fm_index: symbol " + std::to_string(c) + " out of range");
    return C_[c];
  }

  uint8_t bwt_at(uint64_t j) const {
    check_row(j);
    return uint8_t(bwt_.access(j));
  }

  uint32_t sa_at(uint64_t j) const {
    check_row(j);
    return sa_[j - 1];
  }

  // Symbol of the first suffix column at row j, i.e. the bucket holding j.
  uint8_t first_column_symbol(uint64_t j) const {
    check_row(j);
    for (uint8_t c = 1; c <= hp_sigma; ++c)
      if (C_[c + 1] >= j) return c;
    throw std::logic_error("fm_index: row outside all buckets");
  }

  // String id owning a text position.
  uint32_t doc_of(uint64_t pos) const {
    if (pos < 1 || pos > n_)
      throw std::out_of_range("fm_index: position " + std::to_string(pos) + " out of [1," +
                              std::to_string(n_) + "]");
    return uint32_t(bounds_.rank1(pos - 1));
  }

  // Row of the suffix one text position left of row j's suffix, wrapping
  // from a string's first symbol to its whole-sentinel suffix, which lives
  // at sentinel-bucket row id+1. Every string is one cycle of this map.
  uint64_t lf(uint64_t j) const {
    check_row(j);
    uint8_t c = uint8_t(bwt_.access(j));
    if (c == hp_sentinel) return doc_of(sa_[j - 1]) + 1;
    return C_[c] + bwt_.rank(c, j);
  }

  uint64_t lf_inverse(uint64_t j) const {
    check_row(j);
    if (j <= m_) return first_row_[j - 1];
    uint8_t c = first_column_symbol(j);
    return bwt_.select(c, j - C_[c]);
  }

  sa_range full_range() const { return {1, n_}; }

  // SA range of c·X given the range of X. Empty in, empty out.
  sa_range backward_step(sa_range r, uint8_t c) const {
    if (c < 1 || c > hp_sigma)
      throw std::invalid_argument("fm_index: symbol " + std::to_string(c) + " out of range");
    if (r.empty()) return {1, 0};
    check_row(r.s);
    check_row(r.e);
    sa_range out{C_[c] + bwt_.rank(c, r.s - 1) + 1, C_[c] + bwt_.rank(c, r.e)};
    return out.empty() ? sa_range{1, 0} : out;
  }

 private:
  fm_index() = default;

  void init_layout(const std::vector<uint8_t>& text) {
    n_ = text.size();
    if (n_ == 0) throw std::invalid_argument("fm_index: empty text");
    if (text.back() != hp_sentinel)
      throw std::invalid_argument("fm_index: text does not end with a sentinel");
    bounds_ = bit_vector(n_);
    m_ = 0;
    uint64_t start = 1;
    for (uint64_t p = 1; p <= n_; ++p) {
      uint8_t c = text[p - 1];
      if (!is_hp_code(c) || c == hp_sentinel_meta)
        throw std::invalid_argument("fm_index: invalid symbol code " + std::to_string(c) +
                                    " at position " + std::to_string(p));
      if (c == hp_sentinel) {
        if (p == start)
          throw std::invalid_argument("fm_index: empty string before position " +
                                      std::to_string(p));
        bounds_.set(p);
        ++m_;
        start = p + 1;
      }
    }
    bounds_.build();
  }

  void count_symbols(const std::vector<uint8_t>& syms) {
    C_.fill(0);
    for (uint8_t c : syms) ++C_[c + 1];
    for (size_t c = 1; c < C_.size(); ++c) C_[c] += C_[c - 1];
  }

  void finish(const std::vector<uint8_t>& bwt_syms) {
    count_symbols(bwt_syms);
    bwt_ = wavelet_tree(bwt_syms, hp_sigma);
    if (bwt_.rank(hp_sentinel, n_) != m_)
      throw std::runtime_error("fm_index: sentinel count mismatch between BWT and text");
    first_row_.assign(m_, 0);
    for (uint32_t t = 1; t <= m_; ++t) {
      uint64_t row = bwt_.select(hp_sentinel, t);
      first_row_[doc_of(sa_[row - 1])] = row;
    }
  }

  void check_row(uint64_t j) const {
    if (j < 1 || j > n_)
      throw std::out_of_range("fm_index: row " + std::to_string(j) + " out of [1," +
                              std::to_string(n_) + "]");
  }

  uint64_t n_ = 0;
  uint32_t m_ = 0;  // string count
  wavelet_tree bwt_;
  std::array<uint64_t, hp_sigma + 2> C_{};
  std::vector<uint32_t> sa_;
  bit_vector bounds_;               // sentinel positions in text order
  std::vector<uint64_t> first_row_;  // per string, the row of its full suffix
};

}  // namespace rlmem
