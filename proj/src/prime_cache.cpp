#include "heis/prime_cache.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include "heis/primes.hpp"

namespace heis {

namespace {

template <typename T>
bool parse_field(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void corrupt(const std::filesystem::path& file, std::size_t line, const std::string& why) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

std::vector<StandardPrime> load_prime_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<StandardPrime> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest = rest.substr(tab + 1);
    }
    if (fields.size() != 4) corrupt(file, lineno, "expected 4 tab-separated fields");
    StandardPrime sp;
    long long a = 0, b = 0;
    if (!parse_field(fields[0], sp.p) || !parse_field(fields[1], a) || !parse_field(fields[2], b) ||
        !parse_field(fields[3], sp.r)) {
      corrupt(file, lineno, "malformed integer");
    }
    sp.pi = {a, b};
    if (!is_valid_standard_prime(sp)) corrupt(file, lineno, "record fails standard prime invariants");
    if (!out.empty() && out.back().p >= sp.p) corrupt(file, lineno, "records not strictly sorted by p");
    out.push_back(sp);
  }
  return out;
}

void save_prime_cache(const std::filesystem::path& file, const std::vector<StandardPrime>& primes) {
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    for (const auto& sp : primes) {
      out << sp.p << '\t' << static_cast<long long>(sp.pi.a) << '\t' << static_cast<long long>(sp.pi.b) << '\t'
          << sp.r << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::vector<StandardPrime> standard_primes_up_to(std::uint64_t limit,
                                                 const std::optional<std::filesystem::path>& cache_dir) {
  std::vector<StandardPrime> table;
  std::filesystem::path file;
  if (cache_dir) {
    file = *cache_dir / kPrimeCacheFile;
    if (std::filesystem::exists(file)) table = load_prime_cache(file);
  }
  // The table must hold every p = 1 mod 3 up to its last entry.
  std::uint64_t covered = table.empty() ? 0 : table.back().p;
  if (covered) {
    const auto expected = primes_one_mod(covered, 3);
    if (expected.size() != table.size()) {
      throw std::runtime_error(file.string() + ": table skips primes below " + std::to_string(covered));
    }
  }
  bool extended = false;
  if (covered < limit) {
    for (std::uint32_t p : primes_one_mod(limit, 3)) {
      if (p <= covered) continue;
      table.push_back(standard_decompose(p));
      extended = true;
    }
  }
  preload_standard_primes(table);
  if (cache_dir && extended) {
    std::filesystem::create_directories(*cache_dir);
    save_prime_cache(file, table);
  }
  std::vector<StandardPrime> out;
  for (const auto& sp : table) {
    if (sp.p > limit) break;
    out.push_back(sp);
  }
  return out;
}

}  // namespace heis
