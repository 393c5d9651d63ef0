#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace jewelbox {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

/// 3^k for possibly negative k.
inline Rat pow3(int k) {
  Int p = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= 3;
  return k >= 0 ? Rat(p) : Rat(1, p);
}

inline std::string to_string(const Rat& q) {
  return q.str();
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

}  // namespace jewelbox
