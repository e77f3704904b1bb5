#pragma once

// Property suites shared by the command line `verify` subcommand and the
// acceptance runner.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "heis/numeric.hpp"

namespace heis {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;  // first failures and summary lines

  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  bool ok() const { return failures == 0 && checks > 0; }
  void expect(bool cond, const std::function<std::string()>& describe);
  void note(std::string line) { notes.push_back(std::move(line)); }
};

/// Cubic reciprocity and conjugation over all primary primes of norm <= bound.
SuiteResult verify_reciprocity(std::uint64_t bound);

/// Decomposition invariants for p <= bound, exhaustive lattice search for
/// p <= min(bound, 10^4), dual symbol paths on random cases, multiplicativity
/// and the rational cube test for q <= min(bound, 10^4), r <= 100.
SuiteResult verify_symbols(std::uint64_t bound, std::uint64_t random_cases = 10000);

/// Indicator values, symmetry, GL2(F3) span invariance and the splitting
/// criterion on pairs built from {3} and primes q = 1 mod 3 up to bound.
SuiteResult verify_indicator(std::uint64_t bound, unsigned threads = 0);

/// 108 | raw_total (full weight), monotone counts on a log grid in [10^9, x_max],
/// and an empty census at 10^9.
SuiteResult verify_integrality(u128 x_max, unsigned points = 20, unsigned threads = 0);

/// Class sums against the total and the 3-adic shift identities on a log grid.
SuiteResult verify_subsum_identities(u128 x_max, unsigned points = 5, unsigned threads = 0);

/// Exact K(x; 3, d) values and the asymptotic K ~ alpha3 psi3(d) x at x.
SuiteResult verify_ksum(std::uint64_t x);

/// Dispatch by suite name; bound = 0 selects the suite default.
SuiteResult run_suite(const std::string& name, u128 bound, unsigned threads = 0);

const std::vector<std::string>& suite_names();

}  // namespace heis
