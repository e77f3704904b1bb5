// heis: command line front end for the census, the constant pipeline and the
// verification suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "heis/analytic.hpp"
#include "heis/counter.hpp"
#include "heis/eisenstein.hpp"
#include "heis/prime_cache.hpp"
#include "heis/report.hpp"
#include "heis/verify.hpp"

namespace {

using namespace heis;

enum class Format { Json, Csv, Text };

struct Options {
  unsigned threads = 0;
  std::string out;
  std::string cache_dir;
  std::string format;

  std::string x, x_min, x_max, bound, p, n, d = "1", ell;
  std::string weight_mode = "omega-full";
  std::string suite;
  std::uint64_t limit = 0;
  std::uint64_t points = 10;
  std::uint64_t delta_max = TruncationParams{}.delta_max;
  std::uint64_t p_max = TruncationParams{}.p_max;
  std::uint64_t series_terms = TruncationParams{}.series_terms;
};

// Thrown for malformed input that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u128 parse_integer(const std::string& flag, const std::string& text) {
  try {
    return parse_exact_integer(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + flag + ": expected an exact integer, got '" + text + "'");
  } catch (const OverflowError&) {
    throw UsageError("--" + flag + ": value out of range: '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& flag, const std::string& text) {
  const u128 v = parse_integer(flag, text);
  if (v > UINT64_MAX) throw UsageError("--" + flag + ": value out of range: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

Format parse_format(const std::string& s, Format fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw UsageError("--format: expected json, csv or text");
}

WeightMode weight_mode(const Options& o) {
  try {
    return parse_weight_mode(o.weight_mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::optional<std::filesystem::path> cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return std::filesystem::path(o.cache_dir);
  if (const char* env = std::getenv("HEIS_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void warm_cache(const Options& o, std::uint64_t limit) {
  if (auto dir = cache_dir(o)) standard_primes_up_to(limit, dir);
}

TruncationParams truncation(const Options& o) {
  TruncationParams t{o.delta_max, o.p_max, o.series_terms};
  t.validate();
  return t;
}

std::string symbol_name(CharValue v) { return v.is_zero() ? "ZERO" : "ROOT(" + std::to_string(v.exponent()) + ")"; }

// ---------------------------------------------------------------------------

void cmd_count(const Options& o, std::ostream& os) {
  const u128 x = parse_integer("x", o.x);
  warm_cache(o, census_prime_bound(x));
  const CountReport rep = heis_total(x, weight_mode(o), o.threads);
  switch (parse_format(o.format, Format::Json)) {
    case Format::Json: os << to_json(rep).dump() << '\n'; break;
    case Format::Csv: os << csv_header_count() << '\n' << to_csv_row(rep) << '\n'; break;
    case Format::Text: os << to_text(rep); break;
  }
}

void cmd_subsums(const Options& o, std::ostream& os) {
  const u128 x = parse_integer("x", o.x);
  warm_cache(o, census_prime_bound(x));
  const CountReport rep = heis_total(x, weight_mode(o), o.threads);
  switch (parse_format(o.format, Format::Json)) {
    case Format::Json: {
      ordered_json j;
      j["x"] = json_integer(rep.x);
      j["weight_mode"] = to_string(rep.mode);
      j["raw_total"] = json_integer(rep.raw_total);
      j["subsums"] = to_json(rep)["subsums"];
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      os << "class,subsum\n";
      for (int c = 1; c <= kNumClasses; ++c) os << class_name(c) << ',' << to_string(rep.subsums[c - 1]) << '\n';
      break;
    case Format::Text:
      for (int c = 1; c <= kNumClasses; ++c) os << class_name(c) << ' ' << to_string(rep.subsums[c - 1]) << '\n';
      os << "total " << to_string(rep.raw_total) << '\n';
      break;
  }
}

void cmd_terms(const Options& o, std::ostream& os) {
  const u128 x = parse_integer("x", o.x);
  warm_cache(o, census_prime_bound(x));
  const WeightMode mode = weight_mode(o);
  const std::vector<TermRecord> terms = enumerate_terms(x, mode, o.threads);
  const std::size_t shown = o.limit ? std::min<std::size_t>(o.limit, terms.size()) : terms.size();
  switch (parse_format(o.format, Format::Json)) {
    case Format::Json: {
      ordered_json j;
      j["x"] = json_integer(x);
      j["weight_mode"] = to_string(mode);
      j["total_terms"] = terms.size();
      ordered_json arr = ordered_json::array();
      for (std::size_t i = 0; i < shown; ++i) arr.push_back(to_json(terms[i]));
      j["terms"] = std::move(arr);
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
    case Format::Text:
      os << csv_header_terms() << '\n';
      for (std::size_t i = 0; i < shown; ++i) os << to_csv_row(terms[i]) << '\n';
      break;
  }
}

void cmd_constant(const Options& o, std::ostream& os) {
  const TruncationParams params = truncation(o);
  warm_cache(o, params.delta_max);
  const ConstantReport rep = h_constants(params, o.threads);
  switch (parse_format(o.format, Format::Json)) {
    case Format::Json: os << to_json(rep).dump() << '\n'; break;
    case Format::Csv: {
      os << "key,value\n";
      const ordered_json j = to_json(rep);
      for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
          for (const auto& [k2, v2] : v.items()) os << k << '.' << k2 << ',' << v2.dump() << '\n';
        } else {
          os << k << ',' << v.dump() << '\n';
        }
      }
      break;
    }
    case Format::Text: os << to_text(rep); break;
  }
}

void cmd_ksum(const Options& o, std::ostream& os) {
  const std::uint64_t x = parse_u64("x", o.x);
  const std::uint64_t ell = parse_u64("ell", o.ell);
  const std::uint64_t d = parse_u64("d", o.d);
  if (ell > UINT32_MAX || !is_prime_u64(ell)) throw std::invalid_argument("ksum: --ell must be a prime");
  const u128 k = k_direct(x, static_cast<std::uint32_t>(ell), d);
  const Rational psi = psi_ell(d, static_cast<std::uint32_t>(ell));
  const std::string psi_s = to_string(psi.num) + "/" + to_string(psi.den);
  switch (parse_format(o.format, Format::Json)) {
    case Format::Json: {
      ordered_json j;
      j["x"] = x;
      j["ell"] = ell;
      j["d"] = d;
      j["k"] = json_integer(k);
      j["psi"] = psi_s;
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv: os << "x,ell,d,k,psi\n" << x << ',' << ell << ',' << d << ',' << to_string(k) << ',' << psi_s << '\n'; break;
    case Format::Text: os << "K(" << x << "; " << ell << ", " << d << ") = " << to_string(k) << '\n'; break;
  }
}

void cmd_symbol(const Options& o, std::ostream& os) {
  const std::uint64_t p = parse_u64("p", o.p);
  const std::string& ntext = o.n;
  const bool negative = !ntext.empty() && ntext.front() == '-';
  const u128 mag = parse_integer("n", negative ? ntext.substr(1) : ntext);
  if (mag > static_cast<u128>(INT64_MAX)) throw UsageError("--n: value out of range");
  const i128 n = negative ? -static_cast<i128>(mag) : static_cast<i128>(mag);
  warm_cache(o, p);
  const CharValue v = chi_p(p, n);
  switch (parse_format(o.format, Format::Text)) {
    case Format::Json: {
      ordered_json j;
      j["p"] = p;
      j["n"] = to_string(n);
      j["value"] = symbol_name(v);
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv: os << "p,n,value\n" << p << ',' << to_string(n) << ',' << symbol_name(v) << '\n'; break;
    case Format::Text: os << "p=" << p << " n=" << to_string(n) << " chi=" << symbol_name(v) << '\n'; break;
  }
}

void cmd_decompose(const Options& o, std::ostream& os) {
  const std::uint64_t p = parse_u64("p", o.p);
  warm_cache(o, p);
  const StandardPrime& sp = standard_prime(p);
  switch (parse_format(o.format, Format::Text)) {
    case Format::Json: {
      ordered_json j;
      j["p"] = p;
      j["a"] = static_cast<std::int64_t>(sp.pi.a);
      j["b"] = static_cast<std::int64_t>(sp.pi.b);
      j["r"] = sp.r;
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      os << "p,a,b,r\n" << p << ',' << to_string(sp.pi.a) << ',' << to_string(sp.pi.b) << ',' << sp.r << '\n';
      break;
    case Format::Text:
      os << "p=" << p << " pi=" << to_string(sp.pi.a) << (sp.pi.b < 0 ? "" : "+") << to_string(sp.pi.b)
         << "j r=" << sp.r << '\n';
      break;
  }
}

bool cmd_verify(const Options& o, std::ostream& os) {
  const u128 bound = o.bound.empty() ? 0 : parse_integer("bound", o.bound);
  const SuiteResult res = run_suite(o.suite, bound, o.threads);
  switch (parse_format(o.format, Format::Text)) {
    case Format::Json: {
      ordered_json j;
      j["suite"] = res.name;
      j["checks"] = res.checks;
      j["failures"] = res.failures;
      j["ok"] = res.ok();
      j["notes"] = res.notes;
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      os << "suite,checks,failures,ok\n"
         << res.name << ',' << res.checks << ',' << res.failures << ',' << (res.ok() ? "true" : "false") << '\n';
      break;
    case Format::Text:
      os << "suite=" << res.name << " checks=" << res.checks << " failures=" << res.failures << ' '
         << (res.ok() ? "PASS" : "FAIL") << '\n';
      for (const auto& line : res.notes) os << "  " << line << '\n';
      break;
  }
  return res.ok();
}

void cmd_report(const Options& o, std::ostream& os) {
  const u128 lo = parse_integer("x-min", o.x_min);
  const u128 hi = parse_integer("x-max", o.x_max);
  if (o.points == 0 || o.points > 10'000) throw UsageError("--points must lie in 1..10000");
  if (lo < 1 || lo > hi) throw std::invalid_argument("report: need 1 <= x-min <= x-max");
  const TruncationParams params = truncation(o);
  warm_cache(o, std::max<std::uint64_t>(census_prime_bound(hi), params.delta_max));
  const WeightMode mode = weight_mode(o);
  const ConstantReport constants = h_constants(params, o.threads);
  const auto rows = ratio_report(log_grid(lo, hi, static_cast<unsigned>(o.points)), mode, constants, o.threads);
  switch (parse_format(o.format, Format::Csv)) {
    case Format::Json: {
      ordered_json j;
      j["weight_mode"] = to_string(mode);
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json e;
        e["x"] = json_integer(r.x);
        e["count"] = r.count;
        e["x_quarter"] = r.x_quarter;
        e["ratio"] = r.ratio;
        e["c_estimate"] = r.c_estimate;
        e["ratio_over_c"] = r.ratio_over_c;
        arr.push_back(std::move(e));
      }
      j["rows"] = std::move(arr);
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
    case Format::Text:
      os << csv_header_ratio() << '\n';
      for (const auto& r : rows) os << to_csv_row(r) << '\n';
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact census of nonic Heisenberg fields and its leading constant", "heis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", o.out, "Write the report to this file instead of stdout");
  app.add_option("--cache-dir", o.cache_dir, "Directory for the standard-prime cache (overrides HEIS_CACHE_DIR)");
  app.add_option("--format", o.format, "json, csv or text");

  auto* count = app.add_subcommand("count", "Census N(X)");
  count->add_option("--x", o.x, "Discriminant bound")->required();
  count->add_option("--weight-mode", o.weight_mode, "omega-star or omega-full");

  auto* subsums = app.add_subcommand("subsums", "All fourteen class subsums");
  subsums->add_option("--x", o.x, "Discriminant bound")->required();
  subsums->add_option("--weight-mode", o.weight_mode, "omega-star or omega-full");

  auto* terms = app.add_subcommand("terms", "Nonzero census terms");
  terms->add_option("--x", o.x, "Discriminant bound")->required();
  terms->add_option("--limit", o.limit, "Show at most this many terms (0 = all)");
  terms->add_option("--weight-mode", o.weight_mode, "omega-star or omega-full");

  auto add_truncation = [&](CLI::App* sub) {
    sub->add_option("--delta-max", o.delta_max, "Cutoff for sums over Delta");
    sub->add_option("--p-max", o.p_max, "Prime cutoff for Euler products");
    sub->add_option("--series-terms", o.series_terms, "Terms for direct L-series checks");
  };
  auto* constant = app.add_subcommand("constant", "Leading constant and its ingredients");
  add_truncation(constant);

  auto* ksum = app.add_subcommand("ksum", "K(x; l, d)");
  ksum->add_option("--x", o.x, "Upper limit")->required();
  ksum->add_option("--ell", o.ell, "Prime l")->required();
  ksum->add_option("--d", o.d, "Coprimality modulus");

  auto* symbol = app.add_subcommand("symbol", "Cubic character chi_p(n)");
  symbol->add_option("--p", o.p, "Prime = 1 mod 3")->required();
  symbol->add_option("--n", o.n, "Argument")->required();

  auto* decompose = app.add_subcommand("decompose", "Standard prime over p");
  decompose->add_option("--p", o.p, "Prime = 1 mod 3")->required();

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--bound", o.bound, "Suite bound");

  auto* report = app.add_subcommand("report", "N(X)/X^(1/4) against the constant");
  report->add_option("--x-min", o.x_min, "Smallest X")->required();
  report->add_option("--x-max", o.x_max, "Largest X")->required();
  report->add_option("--points", o.points, "Grid size");
  report->add_option("--weight-mode", o.weight_mode, "omega-star or omega-full");
  add_truncation(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ostringstream buf;
  bool ok = true;
  try {
    if (*count) cmd_count(o, buf);
    else if (*subsums) cmd_subsums(o, buf);
    else if (*terms) cmd_terms(o, buf);
    else if (*constant) cmd_constant(o, buf);
    else if (*ksum) cmd_ksum(o, buf);
    else if (*symbol) cmd_symbol(o, buf);
    else if (*decompose) cmd_decompose(o, buf);
    else if (*verify) ok = cmd_verify(o, buf);
    else if (*report) cmd_report(o, buf);
  } catch (const UsageError& e) {
    std::cerr << "heis: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "heis: " << e.what() << '\n';
    return 1;
  }

  if (o.out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << buf.str();
    if (!f) {
      std::cerr << "heis: cannot write " << o.out << '\n';
      return 1;
    }
  }
  return ok ? 0 : 1;
}
