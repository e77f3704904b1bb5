// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "heis/analytic.hpp"
#include "heis/char_space.hpp"
#include "heis/counter.hpp"
#include "heis/report.hpp"
#include "heis/verify.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += "; over time budget";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s (%.1fs/%.0fs) %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, budget_s, o.detail.c_str());
  std::fflush(stdout);
}

std::string suite_detail(const SuiteResult& r) {
  std::ostringstream s;
  s << r.name << ": " << r.checks << " checks, " << r.failures << " failures";
  if (!r.ok()) {
    for (const auto& n : r.notes) s << "; " << n;
  }
  return s.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "exact arithmetic", 60, [] {
    const SuiteResult sym = verify_symbols(1'000'000, 10'000);
    const SuiteResult rec = verify_reciprocity(10'000);
    return Outcome{sym.ok() && rec.ok(), suite_detail(sym) + "; " + suite_detail(rec)};
  });

  criterion(2, "indicator", 60, [] {
    const SuiteResult r = verify_indicator(200);
    return Outcome{r.ok(), suite_detail(r)};
  });

  criterion(3, "census integrality", 300, [] {
    const u128 x6 = 6'000'000'000'000;
    // The exhaustive scan fixes the expected values first.
    const auto star_o = oracle::census(x6, false), full_o = oracle::census(x6, true);
    const bool oracle_ok = star_o.raw_total == 72 && full_o.raw_total == 108;
    const SuiteResult r = verify_integrality(10'000'000'000'000'000, 20);
    const CountReport star = heis_total(x6, WeightMode::OmegaStar);
    const CountReport full = heis_total(x6, WeightMode::OmegaFull);
    const bool match = star.raw_total == star_o.raw_total && full.raw_total == full_o.raw_total &&
                       star.subsums == star_o.subsums && full.subsums == full_o.subsums;
    const bool diverge = !star.divisible() && full.count_string() == "1";
    std::string d = suite_detail(r) + "; 6e12 oracle star/full raw " + to_string(star_o.raw_total) + "/" +
                    to_string(full_o.raw_total) + ", census " + to_string(star.raw_total) + "/" +
                    to_string(full.raw_total);
    return Outcome{oracle_ok && r.ok() && match && diverge, d};
  });

  criterion(4, "subsum identities", 300, [] {
    const SuiteResult r = verify_subsum_identities(10'000'000'000'000'000, 5);
    // Report where C1 first becomes nonzero, which decides whether the C8 shift
    // relation is exercised with nonzero values inside the census range.
    u128 lo = 1'000'000'000, hi = kMaxCensusX;
    if (heis_total(hi, WeightMode::OmegaStar).subsums[0] == 0) {
      lo = hi;
    } else {
      while (hi - lo > 1) {
        const u128 mid = lo + (hi - lo) / 2;
        (heis_total(mid, WeightMode::OmegaStar).subsums[0] ? hi : lo) = mid;
      }
    }
    std::string d = suite_detail(r) + "; first C1 term at X=" + to_string(hi) + ", so C8 is nonzero only for X >= " +
                    to_string(hi * 531441) + (hi * 531441 > kMaxCensusX ? " (beyond the census range)" : "");
    return Outcome{r.ok(), d};
  });

  criterion(5, "K(x; 3, d) asymptotics", 120, [] {
    const SuiteResult r = verify_ksum(10'000'000);
    std::string d = suite_detail(r);
    for (const auto& n : r.notes) d += "; " + n;
    return Outcome{r.ok(), d};
  });

  ConstantReport constants;
  criterion(6, "constant pipeline", 600, [&] {
    std::vector<std::string> bad;
    const TruncationParams params;
    constants = h_constants(params);
    TruncationParams doubled = params;
    doubled.p_max *= 2;
    const double a2 = alpha_ell(3, doubled);
    if (!(std::abs(a2 - constants.alpha3) <= 1e-4)) bad.push_back("alpha3 moves under p_max doubling");

    const auto l_closed = l_one_closed_form(legendre_three());
    const auto l_series = l_one_series(legendre_three(), params.series_terms);
    if (!(std::abs(l_closed.real() - 0.60459979) <= 1e-6 && std::abs(l_series.real() - 0.60459979) <= 1e-6 &&
          std::abs(l_closed - l_series) <= 1e-6)) {
      bad.push_back("L(1, (./3)) off");
    }

    // Every cubic character and its (./3) twist with conductor <= 500.
    const ResidueSymbols rs(500);
    double worst = 0;
    std::size_t chars = 0;
    for (const auto& d : enumerate_deltas(500)) {
      for (const SupportFunction& f : enumerate_V(d, false)) {
        if (f.is_zero()) continue;
        const DirichletCharacter chis[2] = {cubic_character(f, rs), twisted_cubic_character(f, rs)};
        for (const auto& chi : chis) {
          if (chi.modulus > 500) continue;
          worst = std::max(worst, std::abs(l_one_closed_form(chi) - l_one_series(chi, params.series_terms)));
          ++chars;
        }
      }
    }
    if (!(worst <= 1e-6)) bad.push_back("dual L-evaluation differs by " + fmt(worst));
    if (!(std::abs(constants.h0 - (constants.h1 + constants.h1_prime)) <= 1e-12 * constants.h0)) {
      bad.push_back("H0 != H1 + H1'");
    }
    if (!(constants.h0 > 0)) bad.push_back("H0 <= 0");
    const double rel = std::abs(constants.c_heis_star / constants.c_heis_star_h0_form - 1);
    if (!(rel <= 1e-3)) bad.push_back("C_Heis* forms differ by " + fmt(rel));
    if (!(constants.c_heis3 > 0)) bad.push_back("c(Heis3) <= 0");

    std::string d = "alpha3=" + fmt(constants.alpha3) + " (doubled p_max " + fmt(a2) + "), L(1,(./3))=" +
                    fmt(l_closed.real()) + ", " + std::to_string(chars) + " characters max |closed-series|=" +
                    fmt(worst) + ", H0=" + fmt(constants.h0) + ", C_Heis* rel diff=" + fmt(rel) +
                    ", c(Heis3)=" + fmt(constants.c_heis3);
    for (const auto& b : bad) d += "; " + b;
    return Outcome{bad.empty(), d};
  });

  criterion(7, "asymptotic trend", 300, [&] {
    if (!(constants.c_heis3 > 0)) return Outcome{false, "constant pipeline unavailable"};
    const auto grid = log_grid(1'000'000'000'000, 10'000'000'000'000'000, 9);
    const auto rows = ratio_report(grid, WeightMode::OmegaFull, constants);
    std::printf("  %s\n", csv_header_ratio().c_str());
    bool bounded = true;
    for (const auto& r : rows) {
      std::printf("  %s\n", to_csv_row(r).c_str());
      bounded = bounded && std::isfinite(r.ratio) && r.ratio <= 10 * r.c_estimate;
    }
    const double last = rows.back().ratio;
    const double vs_literal = last / constants.c_heis3;
    const double vs_full = rows.back().ratio_over_c;
    const bool same_order = vs_full >= 0.1 && vs_full <= 10 && vs_literal >= 0.1 && vs_literal <= 10;
    std::string d = "N(X)/X^(1/4) at X=1e16 is " + fmt(last) + ", ratio to c_full_omega " + fmt(vs_full) +
                    ", to c(Heis3) " + fmt(vs_literal) + (bounded ? "" : "; ratio exceeds 10c on the grid");
    return Outcome{bounded && same_order, d};
  });

  criterion(8, "cancellation probe", 120, [] {
    const std::vector<CancellationPattern> patterns = {
        {SupportFunction{{7, 1}}, 0, 0, {{1, 0}}},
        {SupportFunction{{7, 1}}, 1, 0, {{0, 1}}},
        {SupportFunction{{7, 1}, {13, 2}}, 0, 1, {{1, 0}, {0, 1}}},
    };
    bool ok = true;
    std::string d;
    for (const auto& p : patterns) {
      const double a = char_cancellation(p, 100'000).normalized();
      const double b = char_cancellation(p, 10'000'000).normalized();
      ok = ok && b < a;
      d += (d.empty() ? "" : "; ") + to_string(p.f) + ": " + fmt(a) + " -> " + fmt(b);
    }
    return Outcome{ok, d};
  });

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
