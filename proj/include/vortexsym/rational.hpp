#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace vortexsym {

// Exact rational scalar used throughout the expression kernel. All constant
// folding is exact; floating point appears only in the numeric sampling layer.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const Rational& r) { return rat_den(r) == 1; }

inline double rat_to_double(const Rational& r) { return r.template convert_to<double>(); }

// n must be >= 0; callers handle negative powers via reciprocal.
inline Rational rat_pow(const Rational& base, unsigned n) {
    Rational acc(1);
    Rational b = base;
    while (n != 0) {
        if (n & 1u) acc *= b;
        b *= b;
        n >>= 1u;
    }
    return acc;
}

inline std::string rat_to_string(const Rational& r) {
    if (rat_is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace vortexsym
