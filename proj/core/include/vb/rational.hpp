#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace vb {

// Exact arbitrary-precision rationals. Every identity in the engine is
// checked to literal zero, so floating point never appears.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace vb
