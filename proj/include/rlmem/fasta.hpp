#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlmem/alphabet.hpp"

namespace rlmem {

struct fasta_record {
  std::string name;
  std::vector<uint8_t> bases;
};

// Multi-line FASTA. Record order defines read ids. Only A/C/G/T (either
// case) are accepted; anything else is reported with the record and the
// 1-based offset within its sequence.
inline std::vector<fasta_record> read_fasta(std::istream& in) {
  std::vector<fasta_record> records;
  std::string line;
  uint64_t lineno = 0;
  auto describe = [&](const fasta_record& r) {
    std::string s = "record " + std::to_string(&r - records.data() + 1);
    if (!r.name.empty()) s += " '" + r.name + "'";
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      std::string name = line.substr(1);
      records.push_back({name.substr(0, name.find_first_of(" \t")), {}});
      continue;
    }
    if (records.empty())
      throw std::runtime_error("fasta: line " + std::to_string(lineno) +
                               ": sequence before first header");
    auto& rec = records.back();
    for (char a : line) {
      if (!is_nucleotide(a))
        throw std::invalid_argument("fasta: " + describe(rec) + ", offset " +
                                    std::to_string(rec.bases.size() + 1) +
                                    ": invalid symbol '" + a + "'");
      rec.bases.push_back(encode_base(a));
    }
  }
  for (const auto& r : records)
    if (r.bases.empty())
      throw std::invalid_argument("fasta: " + describe(r) + " has no sequence");
  return records;
}

inline std::vector<fasta_record> read_fasta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fasta: cannot open '" + path + "'");
  return read_fasta(in);
}

}  // namespace rlmem
