#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

// Two integer alphabets, both with rank 1 reserved for the string terminator.
//
// Base alphabet [1,5]:          $ < A < C < G < T
// Run-length alphabet [1,10]:   $ < A < A* < C < C* < G* < G < T* < T < $*
//
// In the run-length alphabet a plain letter encodes a run of length 1 and a
// starred letter (metasymbol) the head of a run of length >= 2. The ordering
// interleaves the two families so that complementation is the rank reversal
// k -> 11-k, an involution. $* never occurs in any text; it exists so the
// reversal stays a permutation of the full alphabet.

namespace rlmem {

inline constexpr uint8_t base_sentinel = 1;
inline constexpr uint8_t base_a = 2;
inline constexpr uint8_t base_c = 3;
inline constexpr uint8_t base_g = 4;
inline constexpr uint8_t base_t = 5;
inline constexpr uint8_t base_sigma = 5;

inline constexpr uint8_t hp_sentinel = 1;
inline constexpr uint8_t hp_a = 2;
inline constexpr uint8_t hp_a_meta = 3;
inline constexpr uint8_t hp_c = 4;
inline constexpr uint8_t hp_c_meta = 5;
inline constexpr uint8_t hp_g_meta = 6;
inline constexpr uint8_t hp_g = 7;
inline constexpr uint8_t hp_t_meta = 8;
inline constexpr uint8_t hp_t = 9;
inline constexpr uint8_t hp_sentinel_meta = 10;
inline constexpr uint8_t hp_sigma = 10;

constexpr bool is_base_code(uint8_t c) { return c >= 1 && c <= base_sigma; }
constexpr bool is_hp_code(uint8_t c) { return c >= 1 && c <= hp_sigma; }

// $ -> $, A <-> T, C <-> G.
constexpr uint8_t complement_base(uint8_t c) {
  if (!is_base_code(c)) throw std::invalid_argument("complement_base: code out of range");
  return c == base_sentinel ? base_sentinel : uint8_t(7 - c);
}

// Rank reversal of the run-length alphabet; pairs plain with plain and
// metasymbol with metasymbol on nucleotides, and $ with $*.
constexpr uint8_t complement_hp(uint8_t c) {
  if (!is_hp_code(c)) throw std::invalid_argument("complement_hp: code out of range");
  return uint8_t(11 - c);
}

constexpr bool is_meta(uint8_t c) {
  if (!is_hp_code(c)) throw std::invalid_argument("is_meta: code out of range");
  return c == hp_a_meta || c == hp_c_meta || c == hp_g_meta || c == hp_t_meta ||
         c == hp_sentinel_meta;
}

// Projection onto the base alphabet: strips the star.
constexpr uint8_t hp_to_base(uint8_t c) {
  constexpr std::array<uint8_t, 11> g{0, 1, 2, 2, 3, 3, 4, 4, 5, 5, 1};
  if (!is_hp_code(c)) throw std::invalid_argument("hp_to_base: code out of range");
  return g[c];
}

// Run-length encoding of a base: plain form for runs of length 1,
// metasymbol form for runs of length >= 2.
constexpr uint8_t base_to_hp(uint8_t c) {
  constexpr std::array<uint8_t, 6> plain{0, hp_sentinel, hp_a, hp_c, hp_g, hp_t};
  if (!is_base_code(c)) throw std::invalid_argument("base_to_hp: code out of range");
  return plain[c];
}

constexpr uint8_t base_to_hp_meta(uint8_t c) {
  constexpr std::array<uint8_t, 6> meta{0,         hp_sentinel_meta, hp_a_meta,
                                        hp_c_meta, hp_g_meta,        hp_t_meta};
  if (!is_base_code(c)) throw std::invalid_argument("base_to_hp_meta: code out of range");
  return meta[c];
}

constexpr bool is_nucleotide(char a) {
  return a == 'A' || a == 'a' || a == 'C' || a == 'c' || a == 'G' || a == 'g' || a == 'T' ||
         a == 't';
}

inline uint8_t encode_base(char a) {
  switch (a) {
    case 'A': case 'a': return base_a;
    case 'C': case 'c': return base_c;
    case 'G': case 'g': return base_g;
    case 'T': case 't': return base_t;
    default:
      throw std::invalid_argument(std::string("encode_base: invalid nucleotide '") + a + "'");
  }
}

inline char decode_base(uint8_t c) {
  constexpr std::array<char, 6> chars{0, '$', 'A', 'C', 'G', 'T'};
  if (!is_base_code(c)) throw std::invalid_argument("decode_base: code out of range");
  return chars[c];
}

// Readable form of a run-length symbol, e.g. "A", "A*", "$*".
inline std::string hp_to_string(uint8_t c) {
  std::string s(1, decode_base(hp_to_base(c)));
  if (is_meta(c)) s += '*';
  return s;
}

}  // namespace rlmem
