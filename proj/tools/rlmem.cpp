#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "rlmem/fasta.hpp"
#include "rlmem/index_io.hpp"
#include "rlmem/mem_finder.hpp"

namespace {

rlmem::index_bundle build_from_fasta(const std::string& path) {
  std::vector<rlmem::fasta_record> records = rlmem::read_fasta_file(path);
  std::vector<std::vector<uint8_t>> reads;
  reads.reserve(records.size());
  for (auto& r : records) reads.push_back(std::move(r.bases));
  rlmem::rlc_collection rlc = rlmem::compress(rlmem::seq_collection(reads));
  rlmem::fm_index fm(rlc);
  return {std::move(rlc), std::move(fm)};
}

struct span {
  uint64_t s, e;
};

// Matches on odd (reverse-complement) strings are reported in the
// coordinates of the forward read, so [s,e] within a string of length len
// maps to [len-e+1, len-s+1] when flipped.
span oriented(uint64_t s, uint64_t e, uint64_t len, bool flip) {
  return flip ? span{len - e + 1, len - s + 1} : span{s, e};
}

std::string read_id(uint32_t string_id) {
  return "r" + std::to_string(string_id / 2) + (string_id % 2 ? "-" : "+");
}

void write_tsv(std::ostream& out, const std::vector<rlmem::mem_record>& records,
               const rlmem::rlc_collection& rlc, rlmem::coord_space coords) {
  bool rle = coords != rlmem::coord_space::expanded;
  bool expanded = coords != rlmem::coord_space::rle;

  out << "idA\t" << (rle ? "startA\tendA\t" : "expStartA\texpEndA\t") << "idB\t"
      << (rle ? "startB\tendB\t" : "expStartB\texpEndB\t") << "lengthRlc\texcess";
  if (rle && expanded) out << "\texpStartA\texpEndA\texpStartB\texpEndB";
  out << "\n";

  for (const rlmem::mem_record& m : records) {
    bool flip_a = m.id_a % 2, flip_b = m.id_b % 2;
    span a = oriented(m.start_a, m.start_a + m.length - 1, rlc.length(m.id_a), flip_a);
    span b = oriented(m.start_b, m.start_b + m.length - 1, rlc.length(m.id_b), flip_b);
    span xa = oriented(m.exp_start_a, m.exp_end_a, rlc.expanded_length(m.id_a), flip_a);
    span xb = oriented(m.exp_start_b, m.exp_end_b, rlc.expanded_length(m.id_b), flip_b);

    out << read_id(m.id_a) << '\t';
    if (rle)
      out << a.s << '\t' << a.e << '\t';
    else
      out << xa.s << '\t' << xa.e << '\t';
    out << read_id(m.id_b) << '\t';
    if (rle)
      out << b.s << '\t' << b.e << '\t';
    else
      out << xb.s << '\t' << xb.e << '\t';
    out << m.length << '\t' << m.excess;
    if (rle && expanded)
      out << '\t' << xa.s << '\t' << xa.e << '\t' << xb.s << '\t' << xb.e;
    out << '\n';
  }
}

struct mems_config {
  std::string input, index, output;
  uint64_t tau = 0;
  uint64_t max_excess = 0;
  std::string mode = "sa";
  std::string coords = "rle";
  unsigned threads = 1;
};

int run_mems(const mems_config& cfg) {
  try {
    rlmem::index_bundle bundle =
        cfg.index.empty() ? build_from_fasta(cfg.input) : rlmem::load_index_file(cfg.index);

    rlmem::mem_params params;
    params.tau = cfg.tau;
    params.max_excess = cfg.max_excess;
    params.mode = cfg.mode == "grid" ? rlmem::report_mode::grid : rlmem::report_mode::sa;
    params.coords = cfg.coords == "expanded" ? rlmem::coord_space::expanded
                    : cfg.coords == "both"   ? rlmem::coord_space::both
                                             : rlmem::coord_space::rle;
    params.threads = cfg.threads;

    std::vector<rlmem::mem_record> records = rlmem::mem_finder(bundle.rlc, bundle.fm).run(params);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw std::runtime_error("cannot write '" + cfg.output + "'");
      out = &file;
    }
    write_tsv(*out, records, bundle.rlc, params.coords);
    out->flush();
    if (!*out) throw std::runtime_error("write failed");
    return 0;
  } catch (const rlmem::index_format_error& e) {
    std::cerr << "rlmem: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rlmem: " << e.what() << '\n';
    return 1;
  }
}

int run_index(const std::string& input, const std::string& output) {
  try {
    rlmem::index_bundle bundle = build_from_fasta(input);
    rlmem::save_index_file(output, bundle.rlc, bundle.fm);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "rlmem: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "All-vs-all maximal exact matches among DNA reads, tolerant of\n"
      "homopolymer run-length errors. Reads are matched in homopolymer-\n"
      "compressed space on both strands; all coordinates are 1-based\n"
      "inclusive, and matches on the reverse strand are reported in\n"
      "forward-read coordinates under ids with a '-' suffix."};
  app.require_subcommand(1);
  int rc = 0;

  mems_config cfg;
  CLI::App* mems = app.add_subcommand("mems", "Enumerate maximal exact matches as TSV");
  CLI::Option_group* source = mems->add_option_group("source", "Collection to search");
  source->add_option("-i,--input", cfg.input, "FASTA file with one record per read");
  source->add_option("--index", cfg.index, "Prebuilt index file (from `rlmem index`)");
  source->require_option(1);
  mems->add_option("--min-mem", cfg.tau, "Minimum match length in compressed symbols")
      ->required()
      ->check(CLI::PositiveNumber);
  mems->add_option("--max-excess", cfg.max_excess, "Largest tolerated run-length difference")
      ->required();
  mems->add_option("--mode", cfg.mode, "Occurrence reporting strategy")
      ->check(CLI::IsMember({"sa", "grid"}))
      ->capture_default_str();
  mems->add_option("--coords", cfg.coords, "Coordinate space of reported spans")
      ->check(CLI::IsMember({"rle", "expanded", "both"}))
      ->capture_default_str();
  mems->add_option("-t,--threads", cfg.threads, "Traversal worker threads")
      ->envname("RLMEM_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mems->add_option("-o,--output", cfg.output, "Output TSV path (default: stdout)");
  mems->callback([&] { rc = run_mems(cfg); });

  std::string index_input, index_output;
  CLI::App* index = app.add_subcommand("index", "Build and save the collection index");
  index->add_option("-i,--input", index_input, "FASTA file with one record per read")->required();
  index->add_option("-o,--output", index_output, "Index file to write")->required();
  index->callback([&] { rc = run_index(index_input, index_output); });

  CLI11_PARSE(app, argc, argv);
  return rc;
}
