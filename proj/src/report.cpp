#include "heis/report.hpp"

#include <charconv>
#include <sstream>

namespace heis {

ordered_json json_integer(u128 v) {
  if (v <= static_cast<u128>(UINT64_MAX)) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

ordered_json to_json(const CountReport& rep) {
  ordered_json j;
  j["x"] = json_integer(rep.x);
  j["weight_mode"] = to_string(rep.mode);
  j["raw_total"] = json_integer(rep.raw_total);
  if (rep.divisible()) {
    j["count"] = json_integer(rep.raw_total / kNormalization);
  } else {
    j["count"] = rep.count_string();
  }
  j["divisible_by_108"] = rep.divisible();
  ordered_json subs = ordered_json::object();
  for (int c = 1; c <= kNumClasses; ++c) subs[class_name(c)] = json_integer(rep.subsums[static_cast<std::size_t>(c - 1)]);
  j["subsums"] = subs;
  return j;
}

std::string csv_header_count() {
  std::string s = "x,weight_mode,raw_total,count,divisible_by_108";
  for (int c = 1; c <= kNumClasses; ++c) s += "," + class_name(c);
  return s;
}

std::string to_csv_row(const CountReport& rep) {
  std::string s = to_string(rep.x) + "," + to_string(rep.mode) + "," + to_string(rep.raw_total) + "," +
                  rep.count_string() + "," + (rep.divisible() ? "true" : "false");
  for (auto v : rep.subsums) s += "," + to_string(v);
  return s;
}

std::string to_text(const CountReport& rep) {
  std::ostringstream o;
  o << "x=" << to_string(rep.x) << " weight_mode=" << to_string(rep.mode) << " raw_total=" << to_string(rep.raw_total)
    << " count=" << rep.count_string() << " divisible_by_108=" << (rep.divisible() ? "true" : "false") << "\n";
  for (int c = 1; c <= kNumClasses; ++c) {
    o << class_name(c) << "=" << to_string(rep.subsums[static_cast<std::size_t>(c - 1)]) << "\n";
  }
  return o.str();
}

ordered_json to_json(const TermRecord& t) {
  ordered_json j;
  j["f"] = to_string(t.f);
  j["f_prime"] = to_string(t.g);
  j["three_divides_d"] = t.three_divides_d;
  j["D"] = json_integer(t.big_d);
  j["class"] = class_name(t.cls);
  j["union_weight"] = json_integer(t.union_weight);
  j["d_weight"] = json_integer(t.d_weight);
  j["k_sum"] = json_integer(t.k_sum);
  j["contribution"] = json_integer(t.contribution);
  return j;
}

std::string csv_header_terms() { return "f,f_prime,three_divides_d,D,class,union_weight,d_weight,k_sum,contribution"; }

std::string to_csv_row(const TermRecord& t) {
  return "\"" + to_string(t.f) + "\",\"" + to_string(t.g) + "\"," + (t.three_divides_d ? "true" : "false") + "," +
         to_string(t.big_d) + "," + class_name(t.cls) + "," + to_string(t.union_weight) + "," + to_string(t.d_weight) +
         "," + to_string(t.k_sum) + "," + to_string(t.contribution);
}

ordered_json to_json(const ConstantReport& rep) {
  ordered_json j;
  j["alpha3"] = rep.alpha3;
  j["h0"] = rep.h0;
  j["h1"] = rep.h1;
  j["h1_prime"] = rep.h1_prime;
  j["h2"] = rep.h2;
  j["c_heis3"] = rep.c_heis3;
  j["c_heis_star"] = rep.c_heis_star;
  j["c_heis_star_h0_form"] = rep.c_heis_star_h0_form;
  j["c_heis3_full_omega"] = rep.c_heis3_full_omega;
  j["l_one_chi3"] = rep.l_one_chi3;
  ordered_json cls = ordered_json::object();
  ordered_json cls_full = ordered_json::object();
  for (int c = 1; c <= kNumClasses; ++c) {
    cls[class_name(c)] = rep.class_constants[static_cast<std::size_t>(c - 1)];
    cls_full[class_name(c)] = rep.class_constants_full_omega[static_cast<std::size_t>(c - 1)];
  }
  j["class_constants"] = cls;
  j["class_constants_full_omega"] = cls_full;
  j["tails"] = {{"h0_delta_series", rep.tail_h0},
                {"h1_delta_series", rep.tail_h1},
                {"h2_delta_series", rep.tail_h2},
                {"euler_product_relative", rep.tail_euler_relative},
                {"alpha3_relative", rep.tail_alpha3_relative}};
  j["params"] = {{"delta_max", rep.params.delta_max},
                 {"p_max", rep.params.p_max},
                 {"series_terms", rep.params.series_terms},
                 {"characters", rep.characters}};
  return j;
}

std::string to_text(const ConstantReport& rep) {
  std::ostringstream o;
  o << "alpha3=" << format_double(rep.alpha3) << "\n"
    << "h0=" << format_double(rep.h0) << "\n"
    << "h1=" << format_double(rep.h1) << "\n"
    << "h1_prime=" << format_double(rep.h1_prime) << "\n"
    << "h2=" << format_double(rep.h2) << "\n"
    << "c_heis3=" << format_double(rep.c_heis3) << "\n"
    << "c_heis_star=" << format_double(rep.c_heis_star) << "\n"
    << "c_heis_star_h0_form=" << format_double(rep.c_heis_star_h0_form) << "\n"
    << "c_heis3_full_omega=" << format_double(rep.c_heis3_full_omega) << "\n";
  return o.str();
}

std::string csv_header_ratio() { return "x,count,x_quarter,ratio,c_estimate,ratio_over_c"; }

std::string to_csv_row(const RatioRow& row) {
  return to_string(row.x) + "," + row.count + "," + format_double(row.x_quarter) + "," + format_double(row.ratio) + "," +
         format_double(row.c_estimate) + "," + format_double(row.ratio_over_c);
}

}  // namespace heis
