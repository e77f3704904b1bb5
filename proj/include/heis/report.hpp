#pragma once

// JSON / CSV / text renderings of census and constant reports. Key order is
// fixed so identical inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "heis/analytic.hpp"
#include "heis/counter.hpp"

namespace heis {

using ordered_json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
ordered_json json_integer(u128 v);

ordered_json to_json(const CountReport& rep);
std::string csv_header_count();
std::string to_csv_row(const CountReport& rep);
std::string to_text(const CountReport& rep);

ordered_json to_json(const TermRecord& t);
std::string csv_header_terms();
std::string to_csv_row(const TermRecord& t);

ordered_json to_json(const ConstantReport& rep);
std::string to_text(const ConstantReport& rep);

std::string csv_header_ratio();
std::string to_csv_row(const RatioRow& row);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace heis
