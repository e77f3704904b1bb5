#pragma once

#include <doctest.h>

#include "heis/numeric.hpp"

namespace doctest {
template <>
struct StringMaker<heis::u128> {
  static String convert(heis::u128 v) { return heis::to_string(v).c_str(); }
};
template <>
struct StringMaker<heis::i128> {
  static String convert(heis::i128 v) { return heis::to_string(v).c_str(); }
};
}  // namespace doctest
