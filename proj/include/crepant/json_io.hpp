#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "crepant/criteria.hpp"
#include "crepant/fraction.hpp"
#include "crepant/hj.hpp"
#include "crepant/lattice.hpp"
#include "crepant/polynomial.hpp"
#include "crepant/scan.hpp"

namespace crepant {

using nlohmann::json;

inline json to_json(const ProperFraction& f) {
    json a = json::array();
    for (const Int& x : f.numerators()) {
        a.push_back(to_int64(x));
    }
    return json{{"r", to_int64(f.denominator())}, {"a", a}};
}

inline ProperFraction fraction_from_json(const json& j) {
    std::vector<Int> a;
    for (const auto& x : j.at("a")) {
        a.push_back(Int(x.get<std::int64_t>()));
    }
    return ProperFraction(Int(j.at("r").get<std::int64_t>()), std::move(a));
}

inline json to_json(const Rat& q) {
    return json{{"num", to_int64(numerator(q))}, {"den", to_int64(denominator(q))}};
}

inline json to_json(const Term& t) {
    return json{{"word", t.word}, {"coeff", to_json(t.coeff)}, {"age", to_json(t.coeff.age())}};
}

inline json to_json(const RemainderPolynomial& p) {
    json terms = json::array();
    for (const auto& [w, coeff] : p.terms()) {
        terms.push_back(to_json(Term{w, coeff}));
    }
    return json{{"source", to_json(p.source())}, {"terms", terms}};
}

/// Re-parses a polynomial payload: expands the source and verifies the
/// listed terms reproduce the expansion exactly.
inline RemainderPolynomial polynomial_from_json(const json& j) {
    RemainderPolynomial p = RemainderPolynomial::expand(fraction_from_json(j.at("source")));
    const json& terms = j.at("terms");
    if (terms.size() != p.size()) {
        throw std::invalid_argument("polynomial payload: term count mismatch");
    }
    std::size_t i = 0;
    for (const auto& [w, coeff] : p.terms()) {
        const json& jt = terms.at(i++);
        if (jt.at("word").get<Word>() != w || fraction_from_json(jt.at("coeff")) != coeff) {
            throw std::invalid_argument("polynomial payload: term mismatch");
        }
    }
    return p;
}

inline json to_json(const HJExpansion& e, const std::optional<bool>& dlr) {
    json entries = json::array();
    for (const Int& a : e.entries) {
        entries.push_back(to_int64(a));
    }
    json j{{"r", to_int64(e.r)}, {"d", to_int64(e.d)}, {"entries", entries}};
    if (dlr.has_value()) {
        j["dlr"] = *dlr;
    } else {
        j["dlr"] = nullptr;
    }
    return j;
}

inline HJExpansion hj_from_json(const json& j) {
    HJExpansion e;
    e.r = Int(j.at("r").get<std::int64_t>());
    e.d = Int(j.at("d").get<std::int64_t>());
    for (const auto& x : j.at("entries")) {
        e.entries.push_back(Int(x.get<std::int64_t>()));
    }
    return e;
}

inline json to_json(const Triangulation& t) {
    json simplices = json::array();
    for (const Simplex& s : t.simplices) {
        json verts = json::array();
        for (const LatticePoint& v : s.vertices) {
            json coords = json::array();
            for (const Int& x : v.scaled) {
                coords.push_back(to_int64(x));
            }
            verts.push_back(coords);
        }
        simplices.push_back(verts);
    }
    return simplices;
}

inline json oracle_to_json(const SearchOutcome& o, const Int& r) {
    json j;
    j["found"] = o.witness.has_value();
    j["simplices"] = o.witness ? to_json(*o.witness) : json::array();
    j["volume"] = o.witness ? to_int64(r) : 0;
    j["exhaustive"] = o.exhaustive;
    return j;
}

inline Triangulation triangulation_from_json(const json& simplices, const Int& r,
                                             const std::vector<Int>& weights) {
    Triangulation t;
    t.r = r;
    t.weights = weights;
    for (const auto& js : simplices) {
        Simplex s;
        for (const auto& jv : js) {
            std::vector<Int> scaled;
            for (const auto& x : jv) {
                scaled.push_back(Int(x.get<std::int64_t>()));
            }
            s.vertices.push_back(LatticePoint{std::move(scaled), r});
        }
        t.simplices.push_back(std::move(s));
    }
    return t;
}

inline json to_json(const ScanRecord& rec) {
    json j{{"n", rec.n},
           {"r", to_int64(rec.r)},
           {"d", to_int64(rec.d)},
           {"c", to_int64(rec.c)},
           {"verdict_poly", decision_name(rec.poly)},
           {"verdict_fast", decision_name(rec.fast)},
           {"agree", rec.agree},
           {"witness", rec.witness}};
    if (rec.hj.has_value()) {
        j["verdict_hj"] = *rec.hj ? "crepant" : "not-crepant";
    } else {
        j["verdict_hj"] = nullptr;
    }
    return j;
}

inline Decision decision_from_name(const std::string& name) {
    if (name == "crepant") {
        return Decision::Crepant;
    }
    if (name == "not-crepant") {
        return Decision::NotCrepant;
    }
    if (name == "indeterminate") {
        return Decision::Indeterminate;
    }
    throw std::invalid_argument("unknown decision name: " + name);
}

inline ScanRecord scan_record_from_json(const json& j) {
    ScanRecord rec;
    rec.n = j.at("n").get<int>();
    rec.r = Int(j.at("r").get<std::int64_t>());
    rec.d = Int(j.at("d").get<std::int64_t>());
    rec.c = Int(j.at("c").get<std::int64_t>());
    rec.poly = decision_from_name(j.at("verdict_poly").get<std::string>());
    rec.fast = decision_from_name(j.at("verdict_fast").get<std::string>());
    if (!j.at("verdict_hj").is_null()) {
        rec.hj = j.at("verdict_hj").get<std::string>() == "crepant";
    }
    rec.agree = j.at("agree").get<bool>();
    rec.witness = j.at("witness").get<std::string>();
    return rec;
}

}  // namespace crepant
