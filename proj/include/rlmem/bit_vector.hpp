#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlmem {

// Plain bit vector with rank/select support. Positions are 1-based; rank
// arguments are prefix lengths, so rank1(0) = 0 and rank1(size()) = ones().
// Bits are written with set() and frozen with build(); rank/select read the
// directories build() computes, so all set() calls must come first.
class bit_vector {
 public:
  bit_vector() = default;

  explicit bit_vector(uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}

  // Adopts prepacked words (little-endian bit order within each word).
  bit_vector(uint64_t n, std::vector<uint64_t> words) : n_(n), words_(std::move(words)) {
    if (words_.size() != (n_ + 63) / 64)
      throw std::invalid_argument("bit_vector: word count does not match size");
    build();
  }

  uint64_t size() const { return n_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return n_ - ones_; }
  const std::vector<uint64_t>& words() const { return words_; }

  void set(uint64_t pos) {
    check_pos(pos, "set");
    words_[(pos - 1) >> 6] |= uint64_t(1) << ((pos - 1) & 63);
  }

  bool test(uint64_t pos) const {
    check_pos(pos, "test");
    return (words_[(pos - 1) >> 6] >> ((pos - 1) & 63)) & 1;
  }

  void build() {
    super_rank_.assign(words_.size() / 8 + 1, 0);
    word_rank_.assign(words_.size(), 0);
    uint64_t total = 0;
    uint64_t in_block = 0;
    for (uint64_t w = 0; w < words_.size(); ++w) {
      if (w % 8 == 0) {
        super_rank_[w / 8] = total;
        in_block = 0;
      }
      word_rank_[w] = uint16_t(in_block);
      uint64_t pc = std::popcount(words_[w]);
      in_block += pc;
      total += pc;
    }
    ones_ = total;
  }

  // Set bits among positions [1, prefix].
  uint64_t rank1(uint64_t prefix) const {
    if (prefix > n_)
      throw std::out_of_range("bit_vector::rank1: prefix " + std::to_string(prefix) +
                              " exceeds size " + std::to_string(n_));
    if (prefix == 0) return 0;
    uint64_t last = prefix - 1;  // 0-based index of last included bit
    uint64_t w = last >> 6;
    uint64_t keep = (last & 63) + 1;
    uint64_t mask = keep == 64 ? ~uint64_t(0) : (uint64_t(1) << keep) - 1;
    return super_rank_[w >> 3] + word_rank_[w] + std::popcount(words_[w] & mask);
  }

  uint64_t rank0(uint64_t prefix) const { return prefix - rank1(prefix); }

  // Position of the r-th set bit, 1 <= r <= ones().
  uint64_t select1(uint64_t r) const {
    if (r < 1 || r > ones_)
      throw std::out_of_range("bit_vector::select1: rank " + std::to_string(r) +
                              " out of [1," + std::to_string(ones_) + "]");
    return search([this](uint64_t p) { return rank1(p); }, r);
  }

  // Position of the r-th clear bit, 1 <= r <= zeros().
  uint64_t select0(uint64_t r) const {
    if (r < 1 || r > zeros())
      throw std::out_of_range("bit_vector::select0: rank " + std::to_string(r) +
                              " out of [1," + std::to_string(zeros()) + "]");
    return search([this](uint64_t p) { return rank0(p); }, r);
  }

 private:
  void check_pos(uint64_t pos, const char* what) const {
    if (pos < 1 || pos > n_)
      throw std::out_of_range(std::string("bit_vector::") + what + ": position " +
                              std::to_string(pos) + " out of [1," + std::to_string(n_) + "]");
  }

  // Smallest position whose prefix rank reaches r; rank prefixes are
  // monotone, so the answer is the position of the r-th bit itself.
  template <class Rank>
  uint64_t search(Rank rank, uint64_t r) const {
    uint64_t lo = 1, hi = n_;
    while (lo < hi) {
      uint64_t mid = lo + (hi - lo) / 2;
      if (rank(mid) >= r)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  uint64_t n_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> super_rank_;  // ones before each 8-word block
  std::vector<uint16_t> word_rank_;   // ones before each word within its block
  uint64_t ones_ = 0;
};

}  // namespace rlmem
