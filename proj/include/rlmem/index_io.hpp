#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/fm_index.hpp"
#include "rlmem/rle.hpp"

namespace rlmem {

// On-disk index layout, all integers little-endian:
//
//   magic   8 bytes   "RLMEMIDX"
//   version u32       1
//   n_h     u64       text length
//   sigma   u32       10
//   C       11 x u64  C[1..11] (symbols with code < c; C[11] = n_h)
//   bwt     ceil(n_h/2) bytes, 4-bit codes, low nibble first
//   sa      n_h x u32
//   H       u64 count, then count x u32 run lengths
//   meta    ceil(n_h/64) x u64 metasymbol bit words
//
// The loader rebuilds the text from (C, sa), then verifies every stored
// section against the reconstruction; any disagreement is corruption.

inline constexpr char index_magic[8] = {'R', 'L', 'M', 'E', 'M', 'I', 'D', 'X'};
inline constexpr uint32_t index_version = 1;

// Wrong magic or version: the file is not an index this build can read, as
// opposed to one that is readable but corrupt.
struct index_format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void put_bytes(std::ostream& out, uint64_t v, int nbytes) {
  char b[8];
  for (int i = 0; i < nbytes; ++i) b[i] = char(v >> (8 * i));
  out.write(b, nbytes);
}

inline void put_u32(std::ostream& out, uint32_t v) { put_bytes(out, v, 4); }
inline void put_u64(std::ostream& out, uint64_t v) { put_bytes(out, v, 8); }

inline uint64_t get_bytes(std::istream& in, int nbytes) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), nbytes))
    throw std::runtime_error("index: truncated file");
  uint64_t v = 0;
  for (int i = 0; i < nbytes; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

inline uint32_t get_u32(std::istream& in) { return uint32_t(get_bytes(in, 4)); }
inline uint64_t get_u64(std::istream& in) { return get_bytes(in, 8); }

}  // namespace detail

inline void save_index(std::ostream& out, const rlc_collection& rlc, const fm_index& fm) {
  if (rlc.size() != fm.size())
    throw std::invalid_argument("index: collection and index sizes differ");
  uint64_t n = fm.size();
  if (n >= UINT32_MAX) throw std::invalid_argument("index: text too large for 32-bit layout");

  out.write(index_magic, sizeof index_magic);
  detail::put_u32(out, index_version);
  detail::put_u64(out, n);
  detail::put_u32(out, hp_sigma);
  for (uint8_t c = 1; c <= hp_sigma + 1; ++c) detail::put_u64(out, fm.c_of(c));

  for (uint64_t j = 1; j <= n; j += 2) {
    uint8_t lo = fm.bwt_at(j);
    uint8_t hi = j + 1 <= n ? fm.bwt_at(j + 1) : 0;
    out.put(char(lo | hi << 4));
  }

  for (uint64_t j = 1; j <= n; ++j) detail::put_u32(out, fm.sa_at(j));

  detail::put_u64(out, rlc.run_lengths().size());
  for (uint32_t len : rlc.run_lengths()) detail::put_u32(out, len);

  for (uint64_t w : rlc.meta().words()) detail::put_u64(out, w);

  if (!out) throw std::runtime_error("index: write failed");
}

struct index_bundle {
  rlc_collection rlc;
  fm_index fm;
};

inline index_bundle load_index(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, index_magic))
    throw index_format_error("index: bad magic, not an index file");
  uint32_t version = detail::get_u32(in);
  if (version != index_version)
    throw index_format_error("index: unsupported version " + std::to_string(version));
  uint64_t n = detail::get_u64(in);
  if (n == 0 || n >= UINT32_MAX) throw std::runtime_error("index: implausible text length");
  if (detail::get_u32(in) != hp_sigma) throw std::runtime_error("index: unexpected alphabet");

  std::vector<uint64_t> stored_c(hp_sigma + 1);
  for (auto& v : stored_c) v = detail::get_u64(in);

  std::vector<uint8_t> bwt_syms(n);
  for (uint64_t j = 0; j < n; j += 2) {
    uint64_t byte = detail::get_bytes(in, 1);
    bwt_syms[j] = uint8_t(byte & 0xf);
    if (j + 1 < n)
      bwt_syms[j + 1] = uint8_t(byte >> 4);
    else if (byte >> 4)
      throw std::runtime_error("index: nonzero padding in BWT");
  }
  for (uint8_t c : bwt_syms)
    if (!is_hp_code(c)) throw std::runtime_error("index: invalid BWT symbol");

  std::vector<uint32_t> sa(n);
  for (auto& v : sa) v = detail::get_u32(in);

  std::vector<uint32_t> h(detail::get_u64(in));
  for (auto& v : h) v = detail::get_u32(in);

  std::vector<uint64_t> meta_words((n + 63) / 64);
  for (auto& w : meta_words) w = detail::get_u64(in);

  auto [fm, text] = fm_index::from_parts(bwt_syms, std::move(sa));
  for (uint8_t c = 1; c <= hp_sigma + 1; ++c)
    if (fm.c_of(c) != stored_c[c - 1])
      throw std::runtime_error("index: stored symbol counts do not match BWT");

  rlc_collection rlc(std::move(text), std::move(h));
  if (rlc.meta().words() != meta_words)
    throw std::runtime_error("index: stored metasymbol bits do not match text");

  return {std::move(rlc), std::move(fm)};
}

inline void save_index_file(const std::string& path, const rlc_collection& rlc,
                            const fm_index& fm) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("index: cannot write '" + path + "'");
  save_index(out, rlc, fm);
}

inline index_bundle load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("index: cannot open '" + path + "'");
  return load_index(in);
}

}  // namespace rlmem
