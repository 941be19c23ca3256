#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rlmem/alphabet.hpp"
#include "rlmem/mem_finder.hpp"
#include "rlmem/rle.hpp"

// Reference implementations used by the test suites: direct, quadratic,
// independent of the index machinery they check.
namespace rlmem::oracle {

// Suffix order by materialized keys. A suffix runs up to its own string's
// sentinel; sentinel of string d gets key d, nucleotide c gets key m + c,
// so sentinels sort below everything and among themselves by string id.
inline std::vector<uint32_t> suffix_array(const std::vector<uint8_t>& text) {
  uint64_t n = text.size();
  std::vector<uint32_t> doc(n);
  uint32_t m = 0;
  for (uint64_t i = 0; i < n; ++i) {
    doc[i] = m;
    if (text[i] == hp_sentinel) ++m;
  }
  std::vector<std::vector<uint32_t>> keys(n);
  for (uint64_t p = 0; p < n; ++p) {
    for (uint64_t q = p;; ++q) {
      if (text[q] == hp_sentinel) {
        keys[p].push_back(doc[q]);
        break;
      }
      keys[p].push_back(m + text[q]);
    }
  }
  std::vector<uint32_t> sa(n);
  std::iota(sa.begin(), sa.end(), uint32_t(1));
  std::sort(sa.begin(), sa.end(),
            [&](uint32_t a, uint32_t b) { return keys[a - 1] < keys[b - 1]; });
  return sa;
}

// BWT with the own-sentinel rule: the predecessor of a string's first
// symbol is that string's sentinel.
inline std::vector<uint8_t> bwt_of(const std::vector<uint8_t>& text) {
  std::vector<uint32_t> sa = suffix_array(text);
  std::vector<uint8_t> bwt(text.size());
  for (uint64_t r = 0; r < sa.size(); ++r) {
    uint32_t p = sa[r];
    bool at_start = p == 1 || text[p - 2] == hp_sentinel;
    bwt[r] = at_start ? hp_sentinel : text[p - 2];
  }
  return bwt;
}

// 1-based start positions of exact, sentinel-free pattern matches; a match
// never crosses a sentinel, so it lies inside one string.
inline std::vector<uint64_t> occurrences(const std::vector<uint8_t>& text,
                                         const std::vector<uint8_t>& pattern) {
  std::vector<uint64_t> hits;
  if (pattern.empty() || pattern.size() > text.size()) return hits;
  for (uint64_t p = 0; p + pattern.size() <= text.size(); ++p) {
    bool match = true;
    for (uint64_t i = 0; match && i < pattern.size(); ++i)
      match = text[p + i] == pattern[i] && text[p + i] != hp_sentinel;
    if (match) hits.push_back(p + 1);
  }
  return hits;
}

// One symbol per occurrence of the pattern, sorted: the symbol before it
// ($ when the occurrence starts a string — the own-sentinel rule again).
inline std::vector<uint8_t> left_contexts(const std::vector<uint8_t>& text,
                                          const std::vector<uint8_t>& pattern) {
  std::vector<uint8_t> out;
  for (uint64_t p : occurrences(text, pattern)) {
    bool at_start = p == 1 || text[p - 2] == hp_sentinel;
    out.push_back(at_start ? hp_sentinel : text[p - 2]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// One symbol per occurrence, sorted: the symbol after it. A sentinel-free
// match always has a successor inside its string, a sentinel at the latest.
inline std::vector<uint8_t> right_contexts(const std::vector<uint8_t>& text,
                                           const std::vector<uint8_t>& pattern) {
  std::vector<uint8_t> out;
  for (uint64_t p : occurrences(text, pattern))
    out.push_back(text[p + pattern.size() - 1]);
  std::sort(out.begin(), out.end());
  return out;
}

// Brute-force MEM enumeration over every pair of global positions: extend
// the strict symbol match as far as it goes, then keep it when neither side
// can grow (sentinels bound a side and are never shared across strings),
// the length reaches tau, and the run-length excess stays within bounds.
inline std::vector<mem_record> naive_mems(const rlc_collection& rlc, uint64_t tau,
                                          uint64_t max_excess) {
  const std::vector<uint8_t>& t = rlc.text();
  uint64_t n = t.size();
  std::vector<mem_record> out;
  for (uint64_t p = 1; p <= n; ++p) {
    if (t[p - 1] == hp_sentinel) continue;
    for (uint64_t q = p + 1; q <= n; ++q) {
      if (t[q - 1] == hp_sentinel) continue;
      uint32_t id_a = rlc.string_id_of(p), id_b = rlc.string_id_of(q);
      if (id_a == id_b || (id_a ^ 1) == id_b) continue;

      uint8_t la = p == 1 || t[p - 2] == hp_sentinel ? hp_sentinel : t[p - 2];
      uint8_t lb = q == 1 || t[q - 2] == hp_sentinel ? hp_sentinel : t[q - 2];
      if (la == lb && la != hp_sentinel) continue;

      uint64_t d = 0;
      while (t[p + d - 1] != hp_sentinel && t[p + d - 1] == t[q + d - 1]) ++d;
      if (d < tau) continue;

      uint32_t excess = 0;
      for (uint64_t i = 0; i < d; ++i) {
        uint32_t ra = rlc.run_length_at(p + i), rb = rlc.run_length_at(q + i);
        excess = std::max(excess, ra > rb ? ra - rb : rb - ra);
      }
      if (excess > max_excess) continue;
      out.push_back(make_mem_record(rlc, p, q, d, excess));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rlmem::oracle
