#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace crepant {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Representative of x modulo m in [0, m), independent of the sign of x.
inline Int mod_floor(const Int& x, const Int& m) {
    if (m <= 0) {
        throw std::domain_error("mod_floor: modulus must be positive");
    }
    Int v = x % m;
    if (v < 0) {
        v += m;
    }
    return v;
}

// Floor quotient: the unique q with x = q*m + mod_floor(x, m).
inline Int floor_div(const Int& x, const Int& m) {
    if (m <= 0) {
        throw std::domain_error("floor_div: divisor must be positive");
    }
    Int q = x / m;  // truncates toward zero
    if (x % m != 0 && x < 0) {
        --q;
    }
    return q;
}

// Ceiling of x/m for positive x, m.
inline Int ceil_div(const Int& x, const Int& m) {
    if (x <= 0 || m <= 0) {
        throw std::domain_error("ceil_div: arguments must be positive");
    }
    return (x + m - 1) / m;
}

// Narrows to int64 for wire formats; desk-scale values never come close.
inline std::int64_t to_int64(const Int& x) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("to_int64: value does not fit in 64 bits");
    }
    return x.convert_to<std::int64_t>();
}

inline std::string rat_to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/" + denominator(q).str();
    }
    return s;
}

}  // namespace crepant
