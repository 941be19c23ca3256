#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "rlmem/fm_index.hpp"
#include "rlmem/mem_finder.hpp"
#include "rlmem/oracle.hpp"
#include "rlmem/rle.hpp"

namespace {

using namespace rlmem;

struct cli_result {
  int status = -1;
  std::string output;
};

// Runs the rlmem binary through the shell with stderr folded into stdout.
cli_result run_cli(const std::string& args) {
  std::string cmd = std::string(RLMEM_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  cli_result r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "cli_" + name; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  ASSERT_TRUE(out) << path;
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << path;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Two reads whose only length-3 match sits on r1's reverse strand:
// revcomp(TTACG) = CGTAA shares CGT with AACGT.
const char* kPairFasta = ">r0\nAACGT\n>r1\nTTACG\n";

// Six reads with shared homopolymer-perturbed segments on both strands.
const char* kSixFasta =
    ">a\nAACGTTAGGCAT\n"
    ">b\nAAACGTTAGCATT\n"
    ">c\nATGCCTAACGTT\n"
    ">d\nGGCATCCAACG\n"
    ">e\nCGTTAGGGCATCC\n"
    ">f\nTTAGCATTGGA\n";

const char* kBothHeader =
    "idA\tstartA\tendA\tidB\tstartB\tendB\tlengthRlc\texcess\t"
    "expStartA\texpEndA\texpStartB\texpEndB\n";

TEST(CliMems, HandDerivedPairWithReverseStrand) {
  std::string fa = temp_path("pair.fa");
  write_file(fa, kPairFasta);
  cli_result r = run_cli("mems -i " + fa + " --min-mem 3 --max-excess 0 --coords both");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.output, std::string(kBothHeader) + "r0+\t2\t4\tr1-\t2\t4\t3\t0\t3\t5\t3\t5\n");
}

TEST(CliMems, CoordSpacesSelectColumns) {
  std::string fa = temp_path("coords.fa");
  write_file(fa, kPairFasta);

  cli_result rle = run_cli("mems -i " + fa + " --min-mem 3 --max-excess 0 --coords rle");
  EXPECT_EQ(rle.status, 0);
  EXPECT_EQ(rle.output,
            "idA\tstartA\tendA\tidB\tstartB\tendB\tlengthRlc\texcess\n"
            "r0+\t2\t4\tr1-\t2\t4\t3\t0\n");

  cli_result exp = run_cli("mems -i " + fa + " --min-mem 3 --max-excess 0 --coords expanded");
  EXPECT_EQ(exp.status, 0);
  EXPECT_EQ(exp.output,
            "idA\texpStartA\texpEndA\tidB\texpStartB\texpEndB\tlengthRlc\texcess\n"
            "r0+\t3\t5\tr1-\t3\t5\t3\t0\n");
}

TEST(CliMems, TauBeyondReadLengthGivesHeaderOnly) {
  std::string fa = temp_path("tau.fa");
  write_file(fa, kPairFasta);
  cli_result r = run_cli("mems -i " + fa + " --min-mem 50 --max-excess 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.output, "idA\tstartA\tendA\tidB\tstartB\tendB\tlengthRlc\texcess\n");
}

// Parses a both-coords TSV back into records, undoing the reverse-strand
// flip, and checks set equality with the brute-force oracle.
TEST(CliMems, RowsRoundTripToOracleRecords) {
  std::vector<std::vector<uint8_t>> reads = {{2, 2, 3, 4, 5}, {2, 2, 2, 3, 4, 5, 5}};
  std::string fa = temp_path("oracle.fa");
  write_file(fa, ">r0\nAACGT\n>r1\nAAACGTT\n");
  rlc_collection rlc = compress(seq_collection(reads));

  cli_result r = run_cli("mems -i " + fa + " --min-mem 3 --max-excess 1 --coords both");
  ASSERT_EQ(r.status, 0);

  std::istringstream lines(r.output);
  std::string line;
  ASSERT_TRUE(std::getline(lines, line));
  ASSERT_EQ(line + "\n", kBothHeader);

  auto parse_id = [](const std::string& field, uint32_t& id, bool& flip) {
    ASSERT_EQ(field.front(), 'r');
    flip = field.back() == '-';
    id = 2 * uint32_t(std::stoul(field.substr(1, field.size() - 2))) + (flip ? 1 : 0);
  };
  auto unflip = [](uint64_t s, uint64_t e, uint64_t len, bool flip) {
    return flip ? std::pair<uint64_t, uint64_t>{len - e + 1, len - s + 1}
                : std::pair<uint64_t, uint64_t>{s, e};
  };

  std::vector<mem_record> parsed;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string f[12];
    for (auto& field : f) ASSERT_TRUE(std::getline(row, field, '\t')) << line;
    EXPECT_FALSE(std::getline(row, line, '\t'));

    mem_record m;
    bool flip_a = false, flip_b = false;
    parse_id(f[0], m.id_a, flip_a);
    parse_id(f[3], m.id_b, flip_b);
    m.length = uint32_t(std::stoul(f[6]));
    m.excess = uint32_t(std::stoul(f[7]));
    auto a = unflip(std::stoull(f[1]), std::stoull(f[2]), rlc.length(m.id_a), flip_a);
    auto b = unflip(std::stoull(f[4]), std::stoull(f[5]), rlc.length(m.id_b), flip_b);
    EXPECT_EQ(a.second - a.first + 1, m.length);
    m.start_a = uint32_t(a.first);
    m.start_b = uint32_t(b.first);
    std::tie(m.exp_start_a, m.exp_end_a) =
        unflip(std::stoull(f[8]), std::stoull(f[9]), rlc.expanded_length(m.id_a), flip_a);
    std::tie(m.exp_start_b, m.exp_end_b) =
        unflip(std::stoull(f[10]), std::stoull(f[11]), rlc.expanded_length(m.id_b), flip_b);
    parsed.push_back(m);
  }

  std::vector<mem_record> expected = oracle::naive_mems(rlc, 3, 1);
  EXPECT_FALSE(expected.empty());
  EXPECT_EQ(parsed, expected);
}

TEST(CliMems, MissingInputFileFails) {
  cli_result r = run_cli("mems -i " + temp_path("absent.fa") + " --min-mem 3 --max-excess 0");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("cannot open"), std::string::npos);
}

TEST(CliMems, InvalidSymbolNamesRecordAndOffset) {
  std::string fa = temp_path("badsym.fa");
  write_file(fa, ">oops\nACGXT\n");
  cli_result r = run_cli("mems -i " + fa + " --min-mem 2 --max-excess 0");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("record 1"), std::string::npos);
  EXPECT_NE(r.output.find("offset 4"), std::string::npos);
  EXPECT_NE(r.output.find("'X'"), std::string::npos);
}

TEST(CliMems, SourceIsExactlyOneOfInputOrIndex) {
  std::string fa = temp_path("src.fa");
  write_file(fa, kPairFasta);
  std::string idx = temp_path("src.idx");
  ASSERT_EQ(run_cli("index -i " + fa + " -o " + idx).status, 0);

  EXPECT_NE(run_cli("mems --min-mem 3 --max-excess 0").status, 0);
  EXPECT_NE(run_cli("mems -i " + fa + " --index " + idx + " --min-mem 3 --max-excess 0").status,
            0);
}

TEST(CliMems, ThreadCountAndEnvDoNotChangeBytes) {
  std::string fa = temp_path("threads.fa");
  write_file(fa, kSixFasta);
  std::string base = "mems -i " + fa + " --min-mem 3 --max-excess 1 --coords both";

  cli_result one = run_cli(base + " -t 1");
  ASSERT_EQ(one.status, 0);
  EXPECT_GT(std::count(one.output.begin(), one.output.end(), '\n'), 2);

  cli_result four = run_cli(base + " -t 4");
  EXPECT_EQ(four.status, 0);
  EXPECT_EQ(four.output, one.output);

  cli_result env = run_cli(base);
  // popen goes through the shell, so an env prefix works.
  env = [&] {
    cli_result r;
    std::string cmd = "RLMEM_THREADS=3 " + std::string(RLMEM_BIN) + " " + base + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    r.status = WEXITSTATUS(pclose(pipe));
    return r;
  }();
  EXPECT_EQ(env.status, 0);
  EXPECT_EQ(env.output, one.output);

  EXPECT_NE(run_cli(base + " -t 0").status, 0);
}

TEST(CliMems, GridModeMatchesSaMode) {
  std::string fa = temp_path("mode.fa");
  write_file(fa, kSixFasta);
  std::string base = "mems -i " + fa + " --min-mem 2 --max-excess 2 --coords both";
  cli_result sa = run_cli(base + " --mode sa");
  cli_result grid = run_cli(base + " --mode grid");
  ASSERT_EQ(sa.status, 0);
  ASSERT_EQ(grid.status, 0);
  EXPECT_EQ(grid.output, sa.output);
  EXPECT_NE(run_cli(base + " --mode turbo").status, 0);
}

TEST(CliMems, OutputFileMatchesStdout) {
  std::string fa = temp_path("out.fa");
  write_file(fa, kSixFasta);
  std::string tsv = temp_path("out.tsv");
  std::string base = "mems -i " + fa + " --min-mem 3 --max-excess 0";

  cli_result direct = run_cli(base);
  ASSERT_EQ(direct.status, 0);
  cli_result to_file = run_cli(base + " -o " + tsv);
  EXPECT_EQ(to_file.status, 0);
  EXPECT_EQ(to_file.output, "");
  EXPECT_EQ(read_file(tsv), direct.output);

  cli_result bad = run_cli(base + " -o " + temp_path("no_dir/out.tsv"));
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.output.find("cannot write"), std::string::npos);
}

TEST(CliIndex, RoundTripMatchesOneShot) {
  std::string fa = temp_path("rt.fa");
  write_file(fa, kSixFasta);
  std::string idx = temp_path("rt.idx");
  std::string query = " --min-mem 3 --max-excess 1 --coords both";

  ASSERT_EQ(run_cli("index -i " + fa + " -o " + idx).status, 0);
  cli_result oneshot = run_cli("mems -i " + fa + query);
  cli_result saved = run_cli("mems --index " + idx + query);
  ASSERT_EQ(oneshot.status, 0);
  ASSERT_EQ(saved.status, 0);
  EXPECT_EQ(saved.output, oneshot.output);

  std::string again = temp_path("rt2.idx");
  ASSERT_EQ(run_cli("index -i " + fa + " -o " + again).status, 0);
  EXPECT_EQ(read_file(again), read_file(idx));
}

TEST(CliIndex, FormatRefusalsExitTwo) {
  std::string fa = temp_path("fmt.fa");
  write_file(fa, kPairFasta);
  std::string idx = temp_path("fmt.idx");
  ASSERT_EQ(run_cli("index -i " + fa + " -o " + idx).status, 0);
  std::string good = read_file(idx);
  std::string query = " --min-mem 3 --max-excess 0";

  std::string bad_magic = good;
  bad_magic[0] = 'Z';
  write_file(temp_path("magic.idx"), bad_magic);
  cli_result magic = run_cli("mems --index " + temp_path("magic.idx") + query);
  EXPECT_EQ(magic.status, 2);
  EXPECT_NE(magic.output.find("bad magic"), std::string::npos);

  std::string bad_version = good;
  bad_version[8] = 99;  // version u32 sits right after the 8-byte magic
  write_file(temp_path("version.idx"), bad_version);
  cli_result version = run_cli("mems --index " + temp_path("version.idx") + query);
  EXPECT_EQ(version.status, 2);
  EXPECT_NE(version.output.find("unsupported version 99"), std::string::npos);

  write_file(temp_path("trunc.idx"), good.substr(0, 16));
  cli_result trunc = run_cli("mems --index " + temp_path("trunc.idx") + query);
  EXPECT_EQ(trunc.status, 1);
  EXPECT_NE(trunc.output.find("truncated"), std::string::npos);
}

}  // namespace
