#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace opcalc {

// All arithmetic in this project is exact: arbitrary-precision integers and
// rationals, no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

#define OPC_REQUIRE(cond, msg)                                                 \
    do {                                                                       \
        if (!(cond)) throw ::opcalc::internal_error(msg);                      \
    } while (0)

inline Int factorial(long n) {
    OPC_REQUIRE(n >= 0, "factorial of negative argument");
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// x^e with the 0^0 = 1 convention used throughout.
inline Int pow_int(const Int& x, long e) {
    OPC_REQUIRE(e >= 0, "pow_int: negative exponent");
    Int r = 1, b = x;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// Division that must be exact; a nonzero remainder is a bug upstream.
inline Int exact_div(const Int& num, const Int& den, const char* what) {
    OPC_REQUIRE(den != 0, std::string("exact_div by zero in ") + what);
    Int q = num / den;
    OPC_REQUIRE(q * den == num, std::string("inexact division in ") + what);
    return q;
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace opcalc
