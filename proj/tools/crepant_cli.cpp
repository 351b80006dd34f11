#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crepant/crepant.hpp"
#include "crepant/json_io.hpp"

namespace {

using namespace crepant;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDisagreement = 3;

json witness_json(const Verdict& v) {
    json j;
    switch (v.decision) {
        case Decision::Crepant: {
            j["kind"] = "age-one-coefficients";
            j["count"] = v.age_one_coefficients.size();
            json terms = json::array();
            for (const Term& t : v.age_one_coefficients) {
                terms.push_back(to_json(t));
            }
            j["terms"] = terms;
            break;
        }
        case Decision::NotCrepant:
            if (v.offending_term) {
                j["kind"] = "offending-term";
                j["term"] = to_json(*v.offending_term);
            } else {
                j["kind"] = "note";
            }
            break;
        default:
            j["kind"] = "note";
            break;
    }
    if (!v.note.empty()) {
        j["note"] = v.note;
    }
    return j;
}

std::string witness_text(const Verdict& v) {
    switch (v.decision) {
        case Decision::Crepant:
            if (!v.age_one_coefficients.empty()) {
                return std::to_string(v.age_one_coefficients.size()) + " age-1 coefficients";
            }
            return v.note.empty() ? "none recorded" : v.note;
        case Decision::NotCrepant:
            return v.offending_term ? v.offending_term->text() : v.note;
        default:
            return v.note;
    }
}

void print_polynomial_text(const RemainderPolynomial& p, std::ostream& os) {
    for (const auto& [w, coeff] : p.terms()) {
        os << Term{w, coeff}.text() << "\n";
    }
}

int run_analyze(const std::string& type, bool with_poly, bool json_out) {
    ProperFraction input = ProperFraction::parse(type);

    json out;
    out["type"] = to_json(input);

    std::optional<UnitRotation> rot = rotate_unit_first(input);
    const ProperFraction& f = rot ? rot->fraction : input;
    Int sum = 0;
    for (const Int& a : f.numerators()) {
        sum += a;
    }
    bool gorenstein = sum == f.denominator();
    bool semi_unimodular = f.is_semi_unimodular();

    out["rotated"] = to_json(f);
    out["permutation"] = rot ? json(rot->permutation) : json(nullptr);
    out["gorenstein"] = gorenstein;
    out["semi_unimodular"] = semi_unimodular;

    RemainderPolynomial p = RemainderPolynomial::expand(f);
    if (with_poly) {
        out["polynomial"] = to_json(p);
    }

    std::optional<TwoParameterType> two = as_two_parameter(f);
    std::optional<CrossCheckReport> report;
    Verdict verdict;
    if (!gorenstein || !semi_unimodular) {
        verdict.decision = Decision::Indeterminate;
        verdict.note = !semi_unimodular
                           ? "no unit weight: outside the hypotheses of every criterion"
                           : "weights do not sum to r: the type is not Gorenstein in "
                             "normalized form";
        out["two_parameter"] = nullptr;
        out["verdict_fast"] = nullptr;
        out["hj"] = nullptr;
        out["agree"] = nullptr;
    } else if (two) {
        report = cross_check(*two);
        verdict = report->poly;
        out["two_parameter"] =
            json{{"n", two->n}, {"r", to_int64(two->r)}, {"d", to_int64(two->d)},
                 {"c", to_int64(two->c)}};
        out["verdict_fast"] = decision_name(report->fast.decision);
        out["hj"] = report->hj ? to_json(*report->hj, report->hj_crepant) : json(nullptr);
        out["agree"] = report->agree;
    } else {
        verdict = decide_general(f);
        out["two_parameter"] = nullptr;
        out["verdict_fast"] = nullptr;
        out["hj"] = nullptr;
        out["agree"] = nullptr;
    }
    out["verdict_poly"] = decision_name(verdict.decision);
    out["witness"] = witness_json(verdict);

    if (json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "type: " << input.to_string() << "\n";
        if (rot && rot->shift != 0) {
            std::cout << "rotated to: " << f.to_string() << "\n";
        }
        std::cout << "gorenstein: " << (gorenstein ? "yes" : "no") << "\n";
        std::cout << "semi-unimodular: " << (semi_unimodular ? "yes" : "no") << "\n";
        if (two) {
            std::cout << "two-parameter: n=" << two->n << " r=" << two->r << " d=" << two->d
                      << " c=" << two->c << "\n";
        }
        std::cout << "verdict[polynomial]: " << decision_name(verdict.decision) << "\n";
        if (report) {
            std::cout << "verdict[fast-path]: " << decision_name(report->fast.decision) << "\n";
            if (report->hj) {
                std::cout << "hj entries: [";
                for (std::size_t i = 0; i < report->hj->entries.size(); ++i) {
                    std::cout << (i ? ", " : "") << report->hj->entries[i];
                }
                std::cout << "]\n";
                std::cout << "hj congruence (mod " << two->n - 2
                          << "): " << (*report->hj_crepant ? "pass -> crepant side"
                                                           : "fail -> non-crepant side")
                          << "\n";
            } else {
                std::cout << "hj: skipped (" << report->hj_skip_reason << ")\n";
            }
            std::cout << "cross-check: " << (report->agree ? "agree" : "DISAGREE") << "\n";
        }
        std::cout << "witness: " << witness_text(verdict) << "\n";
        if (with_poly) {
            print_polynomial_text(p, std::cout);
        }
    }
    return report && !report->agree ? kExitDisagreement : kExitOk;
}

int run_poly(const std::string& type, bool json_out) {
    ProperFraction f = ProperFraction::parse(type);
    RemainderPolynomial p = RemainderPolynomial::expand(f);
    if (json_out) {
        std::cout << to_json(p).dump(2) << "\n";
    } else {
        print_polynomial_text(p, std::cout);
    }
    return kExitOk;
}

int run_hj(std::int64_t r, std::int64_t d, int dim, bool json_out) {
    HJExpansion e = hj_expand(Int(r), Int(d));
    std::optional<bool> dlr;
    if (dim > 0) {
        dlr = dlr_criterion(e, dim);
    }
    if (json_out) {
        std::cout << to_json(e, dlr).dump(2) << "\n";
    } else {
        std::cout << "[";
        for (std::size_t i = 0; i < e.entries.size(); ++i) {
            std::cout << (i ? ", " : "") << e.entries[i];
        }
        std::cout << "]";
        if (dlr.has_value()) {
            if (*dlr) {
                std::cout << " : all entries == 2 (mod " << dim - 2 << ") -> crepant side";
            } else {
                std::cout << " : some entry != 2 (mod " << dim - 2 << ") -> non-crepant side";
            }
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_scan(int dim, std::int64_t rmax, int jobs, bool json_out) {
    if (dim < 3) {
        throw std::invalid_argument("scan: --dim must be >= 3");
    }
    if (rmax < 1) {
        throw std::invalid_argument("scan: --rmax must be >= 1");
    }
    std::vector<ScanRecord> records = scan_family(dim, Int(rmax), jobs);
    ScanSummary summary = summarize(records);
    if (json_out) {
        json jrec = json::array();
        for (const ScanRecord& rec : records) {
            jrec.push_back(to_json(rec));
        }
        json out{{"records", jrec},
                 {"summary",
                  {{"total", summary.total},
                   {"crepant", summary.crepant},
                   {"not_crepant", summary.not_crepant},
                   {"hj_skipped", summary.hj_skipped},
                   {"disagreements", summary.disagreements}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const ScanRecord& rec : records) {
            std::cout << "n=" << rec.n << " r=" << rec.r << " d=" << rec.d << " c=" << rec.c
                      << " poly=" << decision_name(rec.poly)
                      << " fast=" << decision_name(rec.fast) << " hj="
                      << (rec.hj.has_value() ? (*rec.hj ? "crepant" : "not-crepant") : "skip")
                      << " agree=" << (rec.agree ? "yes" : "NO") << " witness=" << rec.witness
                      << "\n";
        }
        std::cout << "summary: total=" << summary.total << " crepant=" << summary.crepant
                  << " not-crepant=" << summary.not_crepant
                  << " hj-skipped=" << summary.hj_skipped
                  << " disagreements=" << summary.disagreements << "\n";
    }
    return summary.disagreements == 0 ? kExitOk : kExitDisagreement;
}

int run_oracle(const std::string& type, std::int64_t max_r, bool json_out) {
    ProperFraction f = ProperFraction::parse(type);
    SearchLimits limits;
    if (max_r > 0) {
        limits.max_r = max_r;
    }
    SearchOutcome out = search_triangulation(f.denominator(), f.numerators(), limits);
    if (json_out) {
        std::cout << oracle_to_json(out, f.denominator()).dump(2) << "\n";
    } else if (out.witness) {
        std::cout << "witness triangulation (" << out.witness->simplices.size()
                  << " cells, volume " << f.denominator() << "):\n";
        for (const Simplex& s : out.witness->simplices) {
            std::cout << " ";
            for (const LatticePoint& v : s.vertices) {
                std::cout << " (";
                for (std::size_t j = 0; j < v.scaled.size(); ++j) {
                    std::cout << (j ? "," : "") << v.scaled[j];
                }
                std::cout << ")";
            }
            std::cout << "\n";
        }
        std::cout << "exhaustive: yes\n";
    } else {
        std::cout << "NoWitnessFound (exhaustive: " << (out.exhaustive ? "yes" : "no") << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact crepancy decisions for Gorenstein cyclic quotient singularities"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false;
    int jobs = 1;
    app.add_flag("--json", json_out, "emit JSON instead of text");
    app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

    std::string type;
    bool with_poly = false;
    auto* analyze = app.add_subcommand("analyze", "decide crepancy for one type");
    analyze->add_option("type", type, "type string r:a1,a2,...,an")->required();
    analyze->add_flag("--poly", with_poly, "also print the remainder polynomial");

    auto* poly = app.add_subcommand("poly", "print the remainder polynomial");
    poly->add_option("type", type, "type string r:a1,a2,...,an")->required();

    std::int64_t hj_r = 0, hj_d = 0;
    int hj_dim = 0;
    auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung expansion of r/d");
    hj->add_option("r", hj_r, "numerator")->required();
    hj->add_option("d", hj_d, "denominator")->required();
    hj->add_option("--dim", hj_dim, "dimension for the congruence check");

    int scan_dim = 0;
    std::int64_t scan_rmax = 0;
    auto* scan = app.add_subcommand("scan", "sweep all two-parameter types up to rmax");
    scan->add_option("--dim", scan_dim, "dimension n >= 3")->required();
    scan->add_option("--rmax", scan_rmax, "largest group order")->required();

    std::int64_t oracle_max_r = 0;
    auto* oracle = app.add_subcommand("oracle", "search for a basic age-1 triangulation");
    oracle->add_option("type", type, "type string r:a1,a2,...,an")->required();
    oracle->add_option("--max-r", oracle_max_r, "raise the desk-scale order limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) {
            return run_analyze(type, with_poly, json_out);
        }
        if (poly->parsed()) {
            return run_poly(type, json_out);
        }
        if (hj->parsed()) {
            return run_hj(hj_r, hj_d, hj_dim, json_out);
        }
        if (scan->parsed()) {
            return run_scan(scan_dim, scan_rmax, jobs, json_out);
        }
        if (oracle->parsed()) {
            return run_oracle(type, oracle_max_r, json_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
