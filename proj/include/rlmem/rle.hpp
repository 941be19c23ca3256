#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/bit_vector.hpp"
#include "rlmem/collection.hpp"

namespace rlmem {

// Homopolymer-compressed collection over the run-length alphabet. Every
// maximal run of ℓ > 1 equal symbols becomes one metasymbol whose length is
// appended to the run-length array; runs of length 1 keep the plain symbol.
// Sentinels always stand alone. Positions are 1-based.
class rlc_collection {
 public:
  rlc_collection(std::vector<uint8_t> text, std::vector<uint32_t> run_lengths)
      : text_(std::move(text)), h_(std::move(run_lengths)) {
    if (text_.empty()) throw std::invalid_argument("rlc_collection: empty text");
    meta_ = bit_vector(text_.size());
    bounds_ = bit_vector(text_.size());
    uint64_t sentinels = 0, metas = 0;
    uint64_t start = 1;
    for (uint64_t p = 1; p <= text_.size(); ++p) {
      uint8_t c = text_[p - 1];
      if (!is_hp_code(c) || c == hp_sentinel_meta)
        throw std::invalid_argument("rlc_collection: invalid symbol code " + std::to_string(c) +
                                    " at position " + std::to_string(p));
      if (is_meta(c)) {
        meta_.set(p);
        ++metas;
      }
      if (c == hp_sentinel) {
        if (p == start)
          throw std::invalid_argument("rlc_collection: empty string before position " +
                                      std::to_string(p));
        bounds_.set(p);
        ++sentinels;
        start = p + 1;
      } else if (p > start && text_[p - 2] != hp_sentinel &&
                 hp_to_base(c) == hp_to_base(text_[p - 2])) {
        throw std::runtime_error("rlc_collection: adjacent runs of the same nucleotide at "
                                 "position " + std::to_string(p));
      }
    }
    if (text_.back() != hp_sentinel)
      throw std::invalid_argument("rlc_collection: text does not end with a sentinel");
    if (sentinels % 2 != 0) throw std::invalid_argument("rlc_collection: odd number of strings");
    if (metas != h_.size())
      throw std::runtime_error("rlc_collection: run-length array holds " +
                               std::to_string(h_.size()) + " entries for " +
                               std::to_string(metas) + " metasymbols");
    for (uint32_t len : h_)
      if (len < 2)
        throw std::runtime_error("rlc_collection: run length " + std::to_string(len) +
                                 " below metasymbol threshold");
    meta_.build();
    bounds_.build();
    k_ = uint32_t(sentinels / 2);

    exp_prefix_.resize(text_.size() + 1);
    exp_prefix_[0] = 0;
    for (uint64_t p = 1; p <= text_.size(); ++p)
      exp_prefix_[p] = exp_prefix_[p - 1] + run_length_at(p);

    for (uint32_t id = 0; id < num_strings(); id += 2) check_mates(id);
  }

  const std::vector<uint8_t>& text() const { return text_; }
  const std::vector<uint32_t>& run_lengths() const { return h_; }
  const bit_vector& meta() const { return meta_; }
  const bit_vector& boundaries() const { return bounds_; }
  uint64_t size() const { return text_.size(); }
  uint64_t expanded_size() const { return exp_prefix_.back(); }
  uint32_t k() const { return k_; }
  uint32_t num_strings() const { return 2 * k_; }

  uint8_t symbol(uint64_t p) const {
    check_pos(p);
    return text_[p - 1];
  }

  bool is_meta_at(uint64_t p) const {
    check_pos(p);
    return meta_.test(p);
  }

  uint32_t run_length_at(uint64_t p) const {
    check_pos(p);
    return meta_.test(p) ? h_[meta_.rank1(p) - 1] : 1;
  }

  // Position in the uncompressed collection of the first symbol of the run
  // that p encodes.
  uint64_t expanded_coord(uint64_t p) const {
    check_pos(p);
    return exp_prefix_[p - 1] + 1;
  }

  uint32_t string_id_of(uint64_t p) const {
    check_pos(p);
    return uint32_t(bounds_.rank1(p - 1));
  }

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

  // Compressed symbols before the sentinel.
  uint64_t length(uint32_t id) const { return string_end(id) - string_start(id); }

  // Uncompressed bases before the sentinel.
  uint64_t expanded_length(uint32_t id) const {
    return exp_prefix_[string_end(id) - 1] - exp_prefix_[string_start(id) - 1];
  }

 private:
  // A string and its mate must mirror each other: reversed symbols under
  // complementation, reversed run lengths.
  void check_mates(uint32_t id) const {
    uint64_t fwd = string_start(id), rc = string_start(id + 1);
    uint64_t len = length(id);
    bool ok = len == length(id + 1);
    for (uint64_t i = 0; ok && i < len; ++i) {
      uint64_t a = fwd + len - 1 - i, b = rc + i;
      ok = text_[b - 1] == complement_hp(text_[a - 1]) &&
           run_length_at(b) == run_length_at(a);
    }
    if (!ok)
      throw std::runtime_error("rlc_collection: strings " + std::to_string(id) + " and " +
                               std::to_string(id + 1) + " are not mates");
  }

  void check_pos(uint64_t p) const {
    if (p < 1 || p > text_.size())
      throw std::out_of_range("rlc_collection: position " + std::to_string(p) + " out of [1," +
                              std::to_string(text_.size()) + "]");
  }

  void check_id(uint32_t id) const {
    if (id >= num_strings())
      throw std::out_of_range("rlc_collection: string id " + std::to_string(id) + " out of [0," +
                              std::to_string(num_strings()) + ")");
  }

  std::vector<uint8_t> text_;
  std::vector<uint32_t> h_;
  bit_vector meta_;
  bit_vector bounds_;
  std::vector<uint64_t> exp_prefix_;  // expanded length of each text prefix
  uint32_t k_ = 0;
};

inline rlc_collection compress(const seq_collection& c) {
  std::vector<uint8_t> text;
  std::vector<uint32_t> h;
  uint64_t p = 1;
  while (p <= c.size()) {
    uint8_t b = c.symbol(p);
    uint64_t len = 1;
    while (b != base_sentinel && p + len <= c.size() && c.symbol(p + len) == b) ++len;
    if (len == 1) {
      text.push_back(base_to_hp(b));
    } else {
      text.push_back(base_to_hp_meta(b));
      h.push_back(uint32_t(len));
    }
    p += len;
  }
  return rlc_collection(std::move(text), std::move(h));
}

inline seq_collection decompress(const rlc_collection& r) {
  std::vector<uint8_t> text;
  text.reserve(r.expanded_size());
  for (uint64_t p = 1; p <= r.size(); ++p)
    text.insert(text.end(), r.run_length_at(p), hp_to_base(r.symbol(p)));
  return seq_collection(std::move(text));
}

}  // namespace rlmem
