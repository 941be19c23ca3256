#include "rlmem/index_io.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rlmem/collection.hpp"
#include "rlmem/fm_index.hpp"
#include "rlmem/rle.hpp"
#include "test_util.hpp"

namespace rlmem {
namespace {

std::string serialized(const rlc_collection& rlc, const fm_index& fm) {
  std::ostringstream out(std::ios::binary);
  save_index(out, rlc, fm);
  return out.str();
}

TEST(IndexIo, RoundTrip) {
  std::mt19937_64 rng(20240529);
  for (int iter = 0; iter < 10; ++iter) {
    rlc_collection rlc = compress(seq_collection(testutil::random_reads(rng, 1, 6, 1, 30)));
    fm_index fm(rlc);
    std::string bytes = serialized(rlc, fm);

    std::istringstream in(bytes);
    index_bundle loaded = load_index(in);
    EXPECT_EQ(loaded.rlc.text(), rlc.text());
    EXPECT_EQ(loaded.rlc.run_lengths(), rlc.run_lengths());
    EXPECT_EQ(loaded.fm.sa(), fm.sa());
    for (uint64_t j = 1; j <= fm.size(); ++j) EXPECT_EQ(loaded.fm.bwt_at(j), fm.bwt_at(j));

    // Serialize-load-serialize is byte-identical.
    EXPECT_EQ(serialized(loaded.rlc, loaded.fm), bytes);
  }
}

TEST(IndexIo, RefusesForeignAndCorruptFiles) {
  std::mt19937_64 rng(20240530);
  rlc_collection rlc = compress(seq_collection(testutil::random_reads(rng, 2, 4, 4, 20)));
  fm_index fm(rlc);
  std::string bytes = serialized(rlc, fm);

  auto load_bytes = [](std::string data) {
    std::istringstream in(std::move(data));
    return load_index(in);
  };

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(load_bytes(bad_magic), std::runtime_error);

  std::string bad_version = bytes;
  bad_version[8] = 2;
  EXPECT_THROW(load_bytes(bad_version), std::runtime_error);

  EXPECT_THROW(load_bytes(bytes.substr(0, bytes.size() / 2)), std::runtime_error);
  EXPECT_THROW(load_bytes(bytes.substr(0, 4)), std::runtime_error);

  // One count in the stored C array off by one.
  std::string bad_c = bytes;
  ++bad_c[8 + 4 + 8 + 4];
  EXPECT_THROW(load_bytes(bad_c), std::runtime_error);

  // A metasymbol bit cleared somewhere in the trailing meta section.
  std::string bad_meta = bytes;
  size_t meta_bytes = (rlc.size() + 63) / 64 * 8;
  bool flipped = false;
  for (size_t i = bytes.size() - meta_bytes; !flipped && i < bytes.size(); ++i) {
    if (uint8_t hold = uint8_t(bad_meta[i]); hold != 0) {
      bad_meta[i] = char(hold & (hold - 1));
      flipped = true;
    }
  }
  ASSERT_TRUE(flipped);  // random runs guarantee at least one metasymbol
  EXPECT_THROW(load_bytes(bad_meta), std::runtime_error);
}

TEST(IndexIo, FileHelpers) {
  std::mt19937_64 rng(20240531);
  rlc_collection rlc = compress(seq_collection(testutil::random_reads(rng, 1, 3, 2, 15)));
  fm_index fm(rlc);

  std::string path = ::testing::TempDir() + "rlmem_index_io_test.idx";
  save_index_file(path, rlc, fm);
  index_bundle loaded = load_index_file(path);
  EXPECT_EQ(loaded.rlc.text(), rlc.text());
  EXPECT_THROW(load_index_file(path + ".missing"), std::runtime_error);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace rlmem
