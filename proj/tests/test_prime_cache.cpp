#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "heis/prime_cache.hpp"
#include "heis/primes.hpp"
#include "test_util.hpp"

using namespace heis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("heis_cache_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("cache round trip") {
  TempDir dir;
  const auto first = standard_primes_up_to(2000, dir.path);
  const fs::path file = dir.path / kPrimeCacheFile;
  REQUIRE(fs::exists(file));
  CHECK(first.size() == primes_one_mod(2000, 3).size());
  CHECK(load_prime_cache(file) == first);

  const std::string text = slurp(file);
  CHECK(text.rfind("7\t2\t3\t4\n13\t-1\t3\t9\n", 0) == 0);

  // Reading again changes nothing; a shorter request is served from the file.
  CHECK(standard_primes_up_to(2000, dir.path) == first);
  CHECK(slurp(file) == text);
  const auto shorter = standard_primes_up_to(100, dir.path);
  CHECK(shorter.size() == 11);
  CHECK(slurp(file) == text);

  // A longer request extends the table in place.
  const auto longer = standard_primes_up_to(5000, dir.path);
  CHECK(longer.size() == primes_one_mod(5000, 3).size());
  CHECK(load_prime_cache(file) == longer);
  CHECK(std::equal(first.begin(), first.end(), longer.begin()));

  // Without a directory the same table is computed.
  CHECK(standard_primes_up_to(5000, std::nullopt) == longer);
}

TEST_CASE("corrupt cache lines are rejected with their line number") {
  TempDir dir;
  const fs::path file = dir.path / kPrimeCacheFile;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"7\t2\t3\t4\n13\t-1\t3\t2\n", ":2:"},           // wrong r
      {"7\t2\t3\t4\n13\t3\t-1\t9\n", ":2:"},           // not the standard prime
      {"7\t2\t3\n", ":1:"},                            // missing field
      {"7\t2\t3\t4\textra\n", ":1:"},                  // extra field
      {"7\t2\tx\t4\n", ":1:"},                         // malformed integer
      {"13\t-1\t3\t9\n7\t2\t3\t4\n", ":2:"},           // unsorted
      {"7\t2\t3\t4\n7\t2\t3\t4\n", ":2:"},             // duplicate
      {"11\t2\t3\t4\n", ":1:"},                        // p = 2 mod 3
      {"7\t2\t3\t4 \n", ":1:"},                        // trailing space
  };
  for (const auto& [text, where] : cases) {
    CAPTURE(text);
    write(file, text);
    try {
      load_prime_cache(file);
      FAIL("accepted a corrupt file");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  }
}

TEST_CASE("a table with gaps is rejected") {
  TempDir dir;
  const fs::path file = dir.path / kPrimeCacheFile;
  save_prime_cache(file, {standard_decompose(7), standard_decompose(19)});
  REQUIRE(load_prime_cache(file).size() == 2);
  CHECK_THROWS_AS(standard_primes_up_to(100, dir.path), std::runtime_error);
}

TEST_CASE("missing cache file is not an error") {
  TempDir dir;
  CHECK_THROWS_AS(load_prime_cache(dir.path / "absent.tsv"), std::runtime_error);
  CHECK(standard_primes_up_to(50, dir.path / "nested").size() == 6);
  CHECK(fs::exists(dir.path / "nested" / kPrimeCacheFile));
}
