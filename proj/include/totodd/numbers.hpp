#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace totodd {

// All arithmetic in this library is exact: arbitrary-precision integers for
// matrix entries and series coefficients, rationals for polynomial
// coefficients and kernel back-substitution. No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k), zero outside 0 <= k <= n.
inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (n - k < k) k = n - k;
    Int result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // divides exactly: product of i consecutive integers
    }
    return result;
}

/// (-1)^e for possibly negative e.
inline int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

/// Quotient a / b, required to be exact. Fraction-free elimination relies on
/// every intermediate division being remainder-free; a nonzero remainder
/// indicates a corrupted elimination state and is reported loudly.
inline Int exact_div(const Int& a, const Int& b) {
    Int q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("exact_div: division left a remainder");
    return q;
}

inline std::string rat_to_string(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace totodd
