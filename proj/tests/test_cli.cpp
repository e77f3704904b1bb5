#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" HEIS_CLI_PATH "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("heis_cli_test_" + std::to_string(rd()));
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

}  // namespace

TEST_CASE("decompose") {
  const Run r = run("decompose --p 13");
  CHECK(r.code == 0);
  CHECK(r.out == "p=13 pi=-1+3j r=9\n");
  CHECK(run("decompose --p 7 --format json").out == "{\"p\":7,\"a\":2,\"b\":3,\"r\":4}\n");
  CHECK(run("decompose --p 11").code == 1);
  CHECK(run("decompose --p 91").code == 1);
  CHECK(run("decompose").code == 2);
}

TEST_CASE("count") {
  const Run r = run("count --x 1000000 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"count\":0") != std::string::npos);
  const Run big = run("count --x 6e12");
  CHECK(big.out.find("\"raw_total\":108,\"count\":1,") != std::string::npos);
  const Run star = run("count --x 6e12 --weight-mode omega-star --format csv");
  CHECK(star.out.find("6000000000000,omega-star,72,2/3,false") != std::string::npos);
  CHECK(run("count --x 1.5e3").code == 0);
  CHECK(run("count --x 1.5").code == 2);
  CHECK(run("count --x abc").code == 2);
  CHECK(run("count --x 0").code == 1);
  CHECK(run("count --x 2e18").code == 1);
  CHECK(run("count --x 10 --weight-mode nope").code == 2);
  CHECK(run("count --x 10 --bogus").code == 2);
  CHECK(run("count --x 10 --format yaml").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("output is byte-identical across thread counts") {
  const Run a = run("terms --x 1e16 --threads 1");
  const Run b = run("terms --x 1e16 --threads 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("subsums --x 1e17 --threads 1").out == run("subsums --x 1e17 --threads 3").out);
}

TEST_CASE("terms limit") {
  const Run r = run("terms --x 6e12 --limit 2 --format csv");
  CHECK(r.code == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 3);
  CHECK(run("terms --x 6e12 --format json").out.find("\"total_terms\":24") != std::string::npos);
}

TEST_CASE("symbol and ksum") {
  CHECK(run("symbol --p 7 --n 2").out == "p=7 n=2 chi=ROOT(1)\n");
  CHECK(run("symbol --p 7 --n 14").out == "p=7 n=14 chi=ZERO\n");
  CHECK(run("symbol --p 7 --n -1").out == "p=7 n=-1 chi=ROOT(0)\n");
  CHECK(run("ksum --x 100 --ell 3 --d 7").out == "{\"x\":100,\"ell\":3,\"d\":7,\"k\":21,\"psi\":\"7/9\"}\n");
  CHECK(run("ksum --x 100 --ell 4").code == 1);
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify --suite reciprocity --bound 10000").code == 0);
  CHECK(run("verify --suite ksum --bound 100000").code == 0);
  CHECK(run("verify --suite nope").code == 2);
}

TEST_CASE("--out writes the report to a file") {
  TempDir dir;
  const fs::path file = dir.path / "count.json";
  const Run r = run("count --x 6e12 --out \"" + file.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(file) == run("count --x 6e12").out);
}

TEST_CASE("the prime cache changes nothing but timing") {
  TempDir dir;
  const std::string flag = "--cache-dir \"" + dir.path.string() + "\"";
  const std::string plain = run("count --x 1e16 --format csv").out;
  CHECK(run("count --x 1e16 --format csv " + flag).out == plain);
  CHECK(fs::exists(dir.path / "standard_primes.tsv"));
  CHECK(run("count --x 1e16 --format csv " + flag).out == plain);

  // The environment variable is honoured, and the flag wins over it.
  TempDir env_dir;
  CHECK(run("decompose --p 13", "HEIS_CACHE_DIR=\"" + env_dir.path.string() + "\"").out == "p=13 pi=-1+3j r=9\n");
  CHECK(fs::exists(env_dir.path / "standard_primes.tsv"));
  TempDir other;
  run("decompose --p 19 " + flag, "HEIS_CACHE_DIR=\"" + other.path.string() + "\"");
  CHECK_FALSE(fs::exists(other.path / "standard_primes.tsv"));

  // A corrupt cache is a domain error, not a silent recomputation.
  std::ofstream(dir.path / "standard_primes.tsv") << "7\t2\t3\t5\n";
  CHECK(run("count --x 1e16 " + flag).code == 1);
}

TEST_CASE("report emits the ratio table") {
  const Run r = run("report --x-min 1e12 --x-max 1e14 --points 3 --delta-max 100 --p-max 10000");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,count,x_quarter,ratio,c_estimate,ratio_over_c\n1000000000000,0,", 0) == 0);
  CHECK(run("report --x-min 1e14 --x-max 1e12 --points 3").code == 1);
}
