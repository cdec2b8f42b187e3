#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace relrep {

/// Exact rational arithmetic: arbitrary-precision numerator/denominator in
/// canonical form (reduced, positive denominator). No rounding anywhere.
using Rational = boost::multiprecision::cpp_rational;

inline Rational midpoint(const Rational& x, const Rational& y) {
    return (x + y) / 2;
}

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace relrep
