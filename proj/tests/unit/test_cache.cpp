#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "df/special_numbers.hpp"

using namespace df;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dfcache-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

char mutate(char c, std::mt19937& rng) {
  static const std::string alphabet = "0123456789-/ \nabcxyz\t+.";
  char m = c;
  while (m == c) m = alphabet[rng() % alphabet.size()];
  return m;
}

}  // namespace

TEST_CASE("cache round trips are bit-exact") {
  TempDir dir;
  for (SequenceKind k : {SequenceKind::bernoulli, SequenceKind::euler, SequenceKind::partition}) {
    const SequenceCache c = make_cache(k, 2000);
    const fs::path p = dir.path / cache_file_name(k);
    cache_store(c, p);
    const SequenceCache back = cache_load(p, k);
    CHECK(back == c);
    // Storing the loaded copy reproduces the same bytes.
    const fs::path p2 = dir.path / "again.dfcache";
    cache_store(back, p2);
    CHECK(slurp(p) == slurp(p2));
  }
}

TEST_CASE("every single-character mutation of a small cache is detected") {
  TempDir dir;
  std::mt19937 rng(3);
  for (SequenceKind k : {SequenceKind::bernoulli, SequenceKind::euler, SequenceKind::partition}) {
    const fs::path p = dir.path / cache_file_name(k);
    cache_store(make_cache(k, 40), p);
    const std::string good = slurp(p);
    for (std::size_t i = 0; i < good.size(); ++i) {
      for (int trial = 0; trial < 3; ++trial) {
        std::string bad = good;
        bad[i] = mutate(good[i], rng);
        spit(p, bad);
        INFO("kind " << to_string(k) << " offset " << i << " -> '" << bad[i] << "'");
        CHECK_THROWS_AS(cache_load(p), FormatError);
      }
    }
  }
}

TEST_CASE("random single-character mutations of large caches are detected") {
  TempDir dir;
  std::mt19937 rng(5);
  for (SequenceKind k : {SequenceKind::bernoulli, SequenceKind::euler}) {
    const fs::path p = dir.path / cache_file_name(k);
    cache_store(make_cache(k, 2000), p);
    const std::string good = slurp(p);
    for (int trial = 0; trial < 40; ++trial) {
      std::string bad = good;
      const std::size_t i = rng() % good.size();
      bad[i] = mutate(good[i], rng);
      spit(p, bad);
      INFO("offset " << i);
      CHECK_THROWS_AS(cache_load(p), FormatError);
    }
  }
}

TEST_CASE("truncation, trailing data and kind mismatch") {
  TempDir dir;
  const fs::path p = dir.path / "b.dfcache";
  cache_store(make_cache(SequenceKind::bernoulli, 100), p);
  const std::string good = slurp(p);

  spit(p, good.substr(0, good.size() / 2));
  try {
    cache_load(p);
    FAIL("truncated file accepted");
  } catch (const FormatError& e) {
    CHECK(e.record_index().has_value());
  }

  spit(p, good + "102 1/2\n");
  CHECK_THROWS_AS(cache_load(p), FormatError);

  spit(p, good);
  CHECK_NOTHROW(cache_load(p, SequenceKind::bernoulli));
  CHECK_THROWS_AS(cache_load(p, SequenceKind::euler), KindMismatch);
  CHECK_THROWS_AS(cache_load(dir.path / "missing.dfcache"), FormatError);
}

TEST_CASE("a consistent but wrong value is reported with its record index") {
  TempDir dir;
  const fs::path p = dir.path / "e.dfcache";
  SequenceCache c = make_cache(SequenceKind::euler, 20);
  c.records[3] = -c.records[3];  // breaks sign alternation, checksum recomputed on store
  cache_store(c, p);
  try {
    cache_load(p);
    FAIL("wrong sign accepted");
  } catch (const FormatError& e) {
    REQUIRE(e.record_index().has_value());
    CHECK(*e.record_index() == 3);
  }
}

TEST_CASE("seeding from a directory skips corrupted files with a warning") {
  TempDir dir;
  cache_store(make_cache(SequenceKind::bernoulli, 60), dir.path / cache_file_name(SequenceKind::bernoulli));
  cache_store(make_cache(SequenceKind::euler, 60), dir.path / cache_file_name(SequenceKind::euler));
  const fs::path e = dir.path / cache_file_name(SequenceKind::euler);
  std::string text = slurp(e);
  text[text.size() - 3] = text[text.size() - 3] == '1' ? '2' : '1';
  spit(e, text);
  const auto warnings = seed_tables_from_directory(dir.path);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("euler") != std::string::npos);
  CHECK(euler(10) == -50521);
}
