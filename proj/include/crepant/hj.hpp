#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crepant/numeric.hpp"

namespace crepant {

/// Hirzebruch-Jung (minus-sign) continued fraction of r/d:
/// r/d = a_1 - 1/(a_2 - 1/(... - 1/a_s)).
struct HJExpansion {
    Int r;
    Int d;
    std::vector<Int> entries;
};

inline HJExpansion hj_expand(Int r, Int d) {
    if (d <= 0 || d >= r) {
        throw std::invalid_argument("hj_expand: need 0 < d < r");
    }
    HJExpansion e{r, d, {}};
    Int a = r, b = d;
    while (b != 0) {
        Int q = ceil_div(a, b);
        Int next = q * b - a;  // in [0, b)
        e.entries.push_back(q);
        a = b;
        b = next;
    }
    return e;
}

/// Evaluates the nested expression right-to-left with exact rationals.
/// Round-trip oracle for hj_expand.
inline Rat hj_evaluate(const std::vector<Int>& entries) {
    if (entries.empty()) {
        throw std::invalid_argument("hj_evaluate: empty entry list");
    }
    Rat v = entries.back();
    for (auto it = entries.rbegin() + 1; it != entries.rend(); ++it) {
        if (v == 0) {
            throw std::domain_error("hj_evaluate: division by zero on malformed entries");
        }
        v = Rat(*it) - 1 / v;
    }
    return v;
}

inline Rat hj_evaluate(const HJExpansion& e) { return hj_evaluate(e.entries); }

/// True iff every entry is congruent to 2 modulo n-2. For n = 3 the modulus
/// is 1 and the criterion holds vacuously.
inline bool dlr_criterion(const HJExpansion& e, int n) {
    if (n < 3) {
        throw std::invalid_argument("dlr_criterion: dimension must be >= 3");
    }
    Int m = n - 2;
    for (const Int& a : e.entries) {
        if (mod_floor(a - 2, m) != 0) {
            return false;
        }
    }
    return true;
}

/// -q where q is the floor quotient of -r by d. Equals the first entry of
/// the expansion of r/d (and ceil(r/d)), but is computed through the floor
/// quotient on purpose so the two routes check each other.
inline Int first_entry(const Int& r, const Int& d) {
    if (d <= 0 || d >= r) {
        throw std::invalid_argument("first_entry: need 0 < d < r");
    }
    return -floor_div(-r, d);
}

}  // namespace crepant
