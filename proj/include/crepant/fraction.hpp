#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crepant/numeric.hpp"

namespace crepant {

/// An n-dimensional proper fraction a/r: a denominator r >= 1 together with
/// numerators 0 <= a_i <= r-1. The pair (r, a) is the identity of the object;
/// it is never reduced, since 1/4(2,2) and 1/2(1,1) are distinct group types.
class ProperFraction {
public:
    ProperFraction(Int r, std::vector<Int> numerators)
        : r_(std::move(r)), a_(std::move(numerators)) {
        if (r_ < 1) {
            throw std::invalid_argument("ProperFraction: denominator must be >= 1");
        }
        if (a_.empty()) {
            throw std::invalid_argument("ProperFraction: numerator list must be nonempty");
        }
        for (const Int& ai : a_) {
            if (ai < 0 || ai >= r_) {
                throw std::invalid_argument(
                    "ProperFraction: numerators must lie in [0, r-1], got " + ai.str() +
                    " with r = " + r_.str());
            }
        }
    }

    const Int& denominator() const { return r_; }
    const std::vector<Int>& numerators() const { return a_; }
    std::size_t dim() const { return a_.size(); }

    /// Numerator a_i, 1-based.
    const Int& numerator(std::size_t i) const {
        if (i < 1 || i > a_.size()) {
            throw std::out_of_range("ProperFraction: index out of range");
        }
        return a_[i - 1];
    }

    /// (sum of numerators) / r as an exact rational.
    Rat age() const {
        Int s = 0;
        for (const Int& ai : a_) {
            s += ai;
        }
        return Rat(s, r_);
    }

    /// True iff some numerator equals 1.
    bool is_semi_unimodular() const {
        for (const Int& ai : a_) {
            if (ai == 1) {
                return true;
            }
        }
        return false;
    }

    /// The excluded fraction (0,...,0)/1. r = 1 forces all numerators to 0.
    bool is_zero() const { return r_ == 1; }

    bool operator==(const ProperFraction& o) const { return r_ == o.r_ && a_ == o.a_; }
    bool operator!=(const ProperFraction& o) const { return !(*this == o); }

    /// Canonical text form "r:a1,a2,...,an".
    std::string to_string() const {
        std::string s = r_.str() + ":";
        for (std::size_t j = 0; j < a_.size(); ++j) {
            if (j > 0) {
                s += ",";
            }
            s += a_[j].str();
        }
        return s;
    }

    /// Display form "(a1,...,an)/r".
    std::string display() const {
        std::string s = "(";
        for (std::size_t j = 0; j < a_.size(); ++j) {
            if (j > 0) {
                s += ",";
            }
            s += a_[j].str();
        }
        s += ")/" + r_.str();
        return s;
    }

    /// Parses the canonical text form. Whitespace-insensitive; rejects
    /// trailing garbage and non-digit characters.
    static ProperFraction parse(std::string_view text) {
        std::string compact;
        compact.reserve(text.size());
        for (char c : text) {
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
                compact += c;
            }
        }
        auto colon = compact.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("type string: expected \"r:a1,a2,...\"");
        }
        Int r = parse_int(compact.substr(0, colon));
        std::vector<Int> nums;
        std::string rest = compact.substr(colon + 1);
        std::size_t pos = 0;
        while (true) {
            auto comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            nums.push_back(parse_int(tok));
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        return ProperFraction(std::move(r), std::move(nums));
    }

private:
    static Int parse_int(const std::string& tok) {
        if (tok.empty()) {
            throw std::invalid_argument("type string: empty number");
        }
        for (char c : tok) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("type string: invalid character '" +
                                            std::string(1, c) + "'");
            }
        }
        return Int(tok);
    }

    Int r_;
    std::vector<Int> a_;
};

/// A proper fraction or the infinite element. nullopt denotes infinity.
using MaybeFraction = std::optional<ProperFraction>;

/// The i-th remainder map (1-based index): infinity when a_i = 0, otherwise
/// the fraction with denominator a_i whose j-th numerator is a_j mod a_i for
/// j != i and whose i-th numerator is (-r) mod a_i, residues taken in [0, a_i).
inline MaybeFraction remainder_map(const ProperFraction& f, std::size_t i) {
    if (i < 1 || i > f.dim()) {
        throw std::out_of_range("remainder_map: index out of range");
    }
    const Int& ai = f.numerators()[i - 1];
    if (ai == 0) {
        return std::nullopt;
    }
    std::vector<Int> out;
    out.reserve(f.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) {
        if (j == i - 1) {
            out.push_back(mod_floor(-f.denominator(), ai));
        } else {
            out.push_back(mod_floor(f.numerators()[j], ai));
        }
    }
    return ProperFraction(ai, std::move(out));
}

}  // namespace crepant
