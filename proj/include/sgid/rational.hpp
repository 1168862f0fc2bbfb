#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sgid {

/// Exact arbitrary-precision rational.  Repeat probabilities multiply dozens of
/// factors like (1/2)^12, so denominators quickly outgrow any fixed-width type.
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_pow(const Rat& base, unsigned exp) {
  Rat acc = 1;
  Rat b = base;
  while (exp != 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

/// Parses "a/b" or a plain integer.  Used for exact probability vectors in
/// configs and tests.
inline Rat parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(boost::multiprecision::cpp_int(s));
    }
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  }
}

}  // namespace sgid
