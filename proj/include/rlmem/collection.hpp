#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/bit_vector.hpp"

namespace rlmem {

// Sentinel-terminated string collection over the base alphabet, holding each
// read followed by its reverse complement:
//
//   R_1 $ R̂_1 $ R_2 $ R̂_2 $ ...
//
// String ids are 0-based in layout order, so id 2i is read i and id 2i+1 its
// reverse complement; the two strands of a read are mates (id XOR 1). All
// text positions are 1-based.
class seq_collection {
 public:
  explicit seq_collection(std::vector<uint8_t> text) : text_(std::move(text)) {
    if (text_.empty()) throw std::invalid_argument("seq_collection: empty text");
    bounds_ = bit_vector(text_.size());
    uint64_t sentinels = 0;
    uint64_t start = 1;
    for (uint64_t p = 1; p <= text_.size(); ++p) {
      uint8_t c = text_[p - 1];
      if (!is_base_code(c))
        throw std::invalid_argument("seq_collection: invalid symbol code " + std::to_string(c) +
                                    " at position " + std::to_string(p));
      if (c == base_sentinel) {
        if (p == start)
          throw std::invalid_argument("seq_collection: empty string before position " +
                                      std::to_string(p));
        bounds_.set(p);
        ++sentinels;
        start = p + 1;
      }
    }
    if (text_.back() != base_sentinel)
      throw std::invalid_argument("seq_collection: text does not end with a sentinel");
    if (sentinels % 2 != 0)
      throw std::invalid_argument("seq_collection: odd number of strings");
    bounds_.build();
    k_ = uint32_t(sentinels / 2);
    for (uint32_t id = 0; id < num_strings(); id += 2) check_mates(id);
  }

  explicit seq_collection(const std::vector<std::vector<uint8_t>>& reads)
      : seq_collection(interleave(reads)) {}

  const std::vector<uint8_t>& text() const { return text_; }
  uint64_t size() const { return text_.size(); }
  uint32_t k() const { return k_; }
  uint32_t num_strings() const { return 2 * k_; }
  const bit_vector& boundaries() const { return bounds_; }

  uint8_t symbol(uint64_t pos) const {
    check_pos(pos);
    return text_[pos - 1];
  }

  // Id of the string containing pos; a sentinel belongs to its own string.
  uint32_t string_id_of(uint64_t pos) const {
    check_pos(pos);
    return uint32_t(bounds_.rank1(pos - 1));
  }

  // The paired forward/reverse-complement string.
  uint32_t mate_of(uint32_t id) const {
    check_id(id);
    return id ^ 1;
  }

  uint64_t string_start(uint32_t id) const {
    check_id(id);
    return id == 0 ? 1 : bounds_.select1(id) + 1;
  }

  // Position of the string's sentinel.
  uint64_t string_end(uint32_t id) const {
    check_id(id);
    return bounds_.select1(id + 1);
  }

  // Symbols before the sentinel.
  uint64_t length(uint32_t id) const { return string_end(id) - string_start(id); }

 private:
  static std::vector<uint8_t> interleave(const std::vector<std::vector<uint8_t>>& reads) {
    if (reads.empty()) throw std::invalid_argument("seq_collection: no reads");
    std::vector<uint8_t> text;
    for (size_t i = 0; i < reads.size(); ++i) {
      const auto& read = reads[i];
      if (read.empty())
        throw std::invalid_argument("seq_collection: read " + std::to_string(i) + " is empty");
      for (uint8_t c : read)
        if (c < base_a || c > base_t)
          throw std::invalid_argument("seq_collection: read " + std::to_string(i) +
                                      " contains invalid code " + std::to_string(c));
      text.insert(text.end(), read.begin(), read.end());
      text.push_back(base_sentinel);
      for (auto it = read.rbegin(); it != read.rend(); ++it)
        text.push_back(complement_base(*it));
      text.push_back(base_sentinel);
    }
    return text;
  }

  void check_mates(uint32_t id) const {
    uint64_t fwd = string_start(id), rc = string_start(id + 1);
    uint64_t len = length(id);
    if (len != length(id + 1))
      throw std::invalid_argument("seq_collection: strings " + std::to_string(id) + " and " +
                                  std::to_string(id + 1) + " are not mates");
    for (uint64_t i = 0; i < len; ++i)
      if (text_[rc - 1 + i] != complement_base(text_[fwd - 1 + len - 1 - i]))
        throw std::invalid_argument("seq_collection: strings " + std::to_string(id) + " and " +
                                    std::to_string(id + 1) + " are not mates");
  }

  void check_pos(uint64_t pos) const {
    if (pos < 1 || pos > text_.size())
      throw std::out_of_range("seq_collection: position " + std::to_string(pos) + " out of [1," +
                              std::to_string(text_.size()) + "]");
  }

  void check_id(uint32_t id) const {
    if (id >= num_strings())
      throw std::out_of_range("seq_collection: string id " + std::to_string(id) + " out of [0," +
                              std::to_string(num_strings()) + ")");
  }

  std::vector<uint8_t> text_;
  bit_vector bounds_;
  uint32_t k_ = 0;
};

}  // namespace rlmem
