#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crepant/fraction.hpp"
#include "crepant/numeric.hpp"

namespace crepant {

/// Index word of a term: variable indices i_1,...,i_l (1-based), the empty
/// word being the constant term.
using Word = std::vector<int>;

/// Canonical word order: length first, then lexicographic. Gives the term
/// listing a deterministic, diffable order.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    }
};

inline std::string word_text(const Word& w) {
    if (w.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j > 0) {
            s += ".";
        }
        s += "x" + std::to_string(w[j]);
    }
    return s;
}

struct Term {
    Word word;
    ProperFraction coeff;

    bool operator==(const Term& o) const { return word == o.word && coeff == o.coeff; }

    std::string text() const {
        return word_text(word) + " : " + coeff.display() + " age=" + rat_to_string(coeff.age());
    }
};

/// The remainder polynomial of a proper fraction: the finite map from index
/// words to coefficients obtained by composing remainder maps, with the word
/// (i_1,...,i_l) carrying R_{i_l}(...(R_{i_1}(source))...). Terms whose
/// coefficient is the infinite element or the zero fraction are excluded,
/// and nothing is expanded beneath an excluded coefficient: the infinite
/// element is absorbing and the zero fraction only produces zero fractions,
/// so no includable descendant is lost.
class RemainderPolynomial {
public:
    using TermMap = std::map<Word, ProperFraction, WordOrder>;

    static RemainderPolynomial expand(const ProperFraction& source) {
        RemainderPolynomial p(source);
        if (!source.is_zero()) {
            p.terms_.emplace(Word{}, source);
            p.expand_below(Word{}, source);
        }
        return p;
    }

    const ProperFraction& source() const { return source_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// False when the source has no unit numerator; the expansion is still
    /// computed but sits outside the hypotheses of every decision theorem.
    bool source_semi_unimodular() const { return source_.is_semi_unimodular(); }

    std::optional<ProperFraction> coefficient(const Word& w) const {
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Terms whose word is a (possibly empty) power of a single variable.
    /// The constant term counts as iterated.
    std::vector<Term> iterated_terms() const {
        std::vector<Term> out;
        for (const auto& [w, coeff] : terms_) {
            bool pure = true;
            for (std::size_t j = 1; j < w.size(); ++j) {
                if (w[j] != w[0]) {
                    pure = false;
                    break;
                }
            }
            if (pure) {
                out.push_back(Term{w, coeff});
            }
        }
        return out;
    }

    /// True iff every stored coefficient has age exactly 1 (vacuously true
    /// for the empty polynomial).
    bool all_ages_one() const {
        for (const auto& [w, coeff] : terms_) {
            if (coeff.age() != 1) {
                return false;
            }
        }
        return true;
    }

    /// A term of maximal coefficient age; ties resolve to the shortest word,
    /// then lexicographically smallest. nullopt for the empty polynomial.
    std::optional<std::pair<Rat, Term>> max_age_witness() const {
        std::optional<std::pair<Rat, Term>> best;
        for (const auto& [w, coeff] : terms_) {
            Rat a = coeff.age();
            if (!best || a > best->first) {
                best = {a, Term{w, coeff}};
            }
        }
        return best;
    }

private:
    explicit RemainderPolynomial(ProperFraction source) : source_(std::move(source)) {}

    void expand_below(const Word& w, const ProperFraction& f) {
        const int n = static_cast<int>(f.dim());
        for (int i = 1; i <= n; ++i) {
            MaybeFraction child = remainder_map(f, static_cast<std::size_t>(i));
            if (!child || child->is_zero()) {
                continue;
            }
            Word wi = w;
            wi.push_back(i);
            auto [it, inserted] = terms_.emplace(std::move(wi), std::move(*child));
            (void)inserted;
            expand_below(it->first, it->second);
        }
    }

    ProperFraction source_;
    TermMap terms_;
};

}  // namespace crepant
