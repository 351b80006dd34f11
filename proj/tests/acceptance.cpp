// Acceptance suite: runs every contract criterion at full scale and prints
// one pass/fail line per criterion. Needs --cli <path> for the determinism
// criterion, which drives the installed command-line binary.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "crepant/crepant.hpp"

using namespace crepant;

namespace {

std::string g_cli_path;

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_command(const std::string& args) {
    RunResult res;
    std::string cmd = "\"" + g_cli_path + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return res;
    }
    std::array<char, 8192> buf;
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        res.output.append(buf.data(), k);
    }
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

ProperFraction pf(int r, std::initializer_list<int> a) {
    std::vector<Int> nums;
    for (int x : a) {
        nums.emplace_back(x);
    }
    return ProperFraction(Int(r), std::move(nums));
}

std::vector<TwoParameterType> coprime_family(int n, int rmax) {
    std::vector<TwoParameterType> out;
    for (int r = 2; r <= rmax; ++r) {
        for (int d = 1; d <= r - 1; ++d) {
            if ((r - 1 - d) % (n - 2) != 0 || gcd(Int(r), Int(d)) != 1) {
                continue;
            }
            int c = (r - 1 - d) / (n - 2);
            if (c > r - 1) {
                continue;
            }
            out.emplace_back(n, r, d, c);
        }
    }
    return out;
}

// fan a per-item check across workers; returns the first failures found
std::vector<std::string> parallel_check(
    const std::vector<TwoParameterType>& items,
    const std::function<std::optional<std::string>(const TwoParameterType&)>& check) {
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::vector<std::string> failures;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size()) {
                return;
            }
            std::optional<std::string> err = check(items[i]);
            if (err) {
                std::lock_guard<std::mutex> lock(mu);
                if (failures.size() < 5) {
                    failures.push_back(*err);
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    return failures;
}

std::string type_id(const TwoParameterType& t) {
    std::ostringstream os;
    os << "(n=" << t.n << ", r=" << t.r << ", d=" << t.d << ", c=" << t.c << ")";
    return os.str();
}

// ---- criteria ----

std::optional<std::string> remainder_map_golden_pair() {
    ProperFraction v = pf(8, {1, 2, 5, 7});
    if (remainder_map(v, 2) != MaybeFraction(pf(2, {1, 0, 1, 1}))) {
        return "R_2((1,2,5,7)/8) is wrong";
    }
    if (remainder_map(v, 3) != MaybeFraction(pf(5, {1, 2, 2, 2}))) {
        return "R_3((1,2,5,7)/8) is wrong";
    }
    return std::nullopt;
}

std::optional<std::string> ten_term_expansion_golden() {
    const std::vector<std::pair<Word, ProperFraction>> expected = {
        {{}, pf(15, {1, 2, 6, 6})},      {{2}, pf(2, {1, 1, 0, 0})},
        {{3}, pf(6, {1, 2, 3, 0})},      {{4}, pf(6, {1, 2, 0, 3})},
        {{3, 2}, pf(2, {1, 0, 1, 0})},   {{3, 3}, pf(3, {1, 2, 0, 0})},
        {{4, 2}, pf(2, {1, 0, 0, 1})},   {{4, 4}, pf(3, {1, 2, 0, 0})},
        {{3, 3, 2}, pf(2, {1, 1, 0, 0})}, {{4, 4, 2}, pf(2, {1, 1, 0, 0})},
    };
    RemainderPolynomial p = RemainderPolynomial::expand(pf(15, {1, 2, 6, 6}));
    if (p.size() != expected.size()) {
        return "expected 10 terms, got " + std::to_string(p.size());
    }
    std::size_t i = 0;
    for (const auto& [w, coeff] : p.terms()) {
        if (w != expected[i].first || coeff != expected[i].second) {
            return "term " + std::to_string(i) + " mismatch: " + Term{w, coeff}.text();
        }
        ++i;
    }
    std::vector<Term> it = p.iterated_terms();
    const std::vector<Word> iterated_words = {{}, {2}, {3}, {4}, {3, 3}, {4, 4}};
    if (it.size() != iterated_words.size()) {
        return "expected 6 iterated terms, got " + std::to_string(it.size());
    }
    for (std::size_t k = 0; k < it.size(); ++k) {
        if (it[k].word != iterated_words[k]) {
            return "iterated word " + std::to_string(k) + " mismatch";
        }
    }
    return std::nullopt;
}

std::optional<std::string> age_integrality_sweep() {
    for (int n : {3, 4, 5}) {
        std::vector<Int> a(static_cast<std::size_t>(n));
        a[0] = 1;
        std::function<std::optional<std::string>(int, int, int)> rec =
            [&](int pos, int left, int r) -> std::optional<std::string> {
            if (pos == n) {
                if (left != 0) {
                    return std::nullopt;
                }
                ProperFraction f(Int(r), a);
                for (std::size_t i = 1; i <= f.dim(); ++i) {
                    if (f.numerators()[i - 1] >= 1) {
                        MaybeFraction g = remainder_map(f, i);
                        if (!g || denominator(g->age()) != 1) {
                            return "non-integer age at " + f.to_string() + " index " +
                                   std::to_string(i);
                        }
                    }
                }
                return std::nullopt;
            }
            for (int x = 0; x <= std::min(left, r - 1); ++x) {
                a[static_cast<std::size_t>(pos)] = x;
                if (auto err = rec(pos + 1, left - x, r)) {
                    return err;
                }
            }
            return std::nullopt;
        };
        for (int r = 2; r <= 60; ++r) {
            if (auto err = rec(1, r - 1, r)) {
                return err;
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> dimension_three_sweep() {
    for (int r = 2; r <= 200; ++r) {
        for (int aw = 0; aw <= r - 1; ++aw) {
            int bw = r - 1 - aw;
            if (bw < 0 || bw > r - 1) {
                continue;
            }
            std::vector<Int> nums{Int(1), Int(aw), Int(bw)};
            Verdict v = decide_general(ProperFraction(Int(r), nums));
            if (v.decision != Decision::Crepant) {
                return "non-crepant verdict at (1," + std::to_string(aw) + "," +
                       std::to_string(bw) + ")/" + std::to_string(r);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> equivalence_sweep() {
    for (int n : {4, 5, 6}) {
        std::vector<TwoParameterType> types = coprime_family(n, 300);
        std::vector<std::string> failures = parallel_check(
            types, [](const TwoParameterType& t) -> std::optional<std::string> {
                RemainderPolynomial p = RemainderPolynomial::expand(t.fraction());
                bool poly = p.all_ages_one();
                bool hj = dlr_criterion(hj_expand(t.r, t.d), t.n);
                bool fast = decide_fast(t).decision == Decision::Crepant;
                if (poly != hj || poly != fast) {
                    return "criteria disagree at " + type_id(t);
                }
                return std::nullopt;
            });
        if (!failures.empty()) {
            return failures.front();
        }
    }
    return std::nullopt;
}

std::optional<std::string> hj_round_trip_sweep() {
    for (int r = 2; r <= 500; ++r) {
        for (int d = 1; d < r; ++d) {
            HJExpansion e = hj_expand(r, d);
            if (hj_evaluate(e) != Rat(r, d)) {
                return "round trip failed at " + std::to_string(r) + "/" + std::to_string(d);
            }
            if (first_entry(r, d) != e.entries.front()) {
                return "first entry mismatch at " + std::to_string(r) + "/" + std::to_string(d);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> step_identity_sweep() {
    std::atomic<long> checked{0};
    for (int n : {4, 5, 6}) {
        for (const TwoParameterType& t : coprime_family(n, 300)) {
            for (const FastStep& st : r2_chain(t)) {
                if (!st.age_one) {
                    continue;
                }
                Int q = floor_div(-st.r, st.d);
                if ((st.c - mod_floor(st.c, st.d)) * (n - 2) + 2 * st.d != -st.d * q) {
                    return "step identity failed at " + type_id(t);
                }
                ++checked;
            }
        }
    }
    if (checked == 0) {
        return "no age-1 steps were exercised";
    }
    return std::nullopt;
}

std::optional<std::string> lattice_oracle_sweep() {
    SearchLimits limits;  // defaults cover r <= 11
    for (int r = 1; r <= 11; ++r) {
        for (int d = 0; d <= r - 1; ++d) {
            if ((r - 1 - d) % 2 != 0) {
                continue;
            }
            int c = (r - 1 - d) / 2;
            if (c > r - 1) {
                continue;
            }
            TwoParameterType t(4, r, d, c);
            bool crepant = decide_two_parameter(t).decision == Decision::Crepant;
            SearchOutcome out = search_triangulation(t.r, t.fraction().numerators(), limits);
            if (crepant) {
                if (!out.witness) {
                    return "no witness found for crepant type " + type_id(t);
                }
                if (out.witness->simplices.size() != static_cast<std::size_t>(r)) {
                    return "witness cell count != r at " + type_id(t);
                }
                ValidationReport rep = validate_triangulation(*out.witness);
                if (!rep.ok) {
                    return "witness failed validation at " + type_id(t) + ": " + rep.reason;
                }
            } else {
                if (out.witness) {
                    return "witness found for non-crepant type " + type_id(t);
                }
                if (!out.exhaustive) {
                    return "refutation search truncated at " + type_id(t);
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> specific_verdicts() {
    SearchLimits wide;
    wide.max_r = 15;

    TwoParameterType good(4, 15, 2, 6);
    CrossCheckReport a = cross_check(good);
    if (a.poly.decision != Decision::Crepant || a.fast.decision != Decision::Crepant ||
        !a.hj_crepant.value_or(false) || !a.agree) {
        return "(1,2,6,6)/15 must be crepant by every criterion";
    }
    SearchOutcome wa = search_triangulation(good.r, good.fraction().numerators(), wide);
    if (!wa.witness || !validate_triangulation(*wa.witness).ok) {
        return "(1,2,6,6)/15 lacks a validated triangulation witness";
    }

    TwoParameterType bad(4, 9, 2, 3);
    CrossCheckReport b = cross_check(bad);
    if (b.poly.decision != Decision::NotCrepant || b.fast.decision != Decision::NotCrepant ||
        b.hj_crepant.value_or(true) || !b.agree) {
        return "(1,2,3,3)/9 must be non-crepant by every criterion";
    }
    if (!b.poly.offending_term || b.poly.offending_term->word != Word{2} ||
        b.poly.offending_term->coeff != pf(2, {1, 1, 1, 1})) {
        return "(1,2,3,3)/9 witness must be (1,1,1,1)/2 at word x2";
    }
    SearchOutcome wb = search_triangulation(bad.r, bad.fraction().numerators(), wide);
    if (wb.witness || !wb.exhaustive) {
        return "(1,2,3,3)/9 refutation must be exhaustive with no witness";
    }

    TwoParameterType third(4, 7, 4, 1);
    CrossCheckReport c = cross_check(third);
    if (c.poly.decision != Decision::Crepant || c.fast.decision != Decision::Crepant ||
        !c.hj_crepant.value_or(false) || !c.agree) {
        return "(1,4,1,1)/7 must be crepant by every criterion";
    }
    SearchOutcome wc = search_triangulation(third.r, third.fraction().numerators(), wide);
    if (!wc.witness || wc.witness->simplices.size() != 7 ||
        !validate_triangulation(*wc.witness).ok) {
        return "(1,4,1,1)/7 needs a validated 7-cell witness";
    }
    return std::nullopt;
}

std::optional<std::string> scan_determinism() {
    if (g_cli_path.empty()) {
        return "no --cli path given";
    }
    RunResult first = run_command("scan --dim 4 --rmax 100 --json");
    RunResult second = run_command("scan --dim 4 --rmax 100 --json");
    if (first.status != 0 || second.status != 0) {
        return "scan exited with status " + std::to_string(first.status) + "/" +
               std::to_string(second.status);
    }
    if (first.output.empty() || first.output != second.output) {
        return "consecutive scan outputs differ";
    }
    RunResult pooled = run_command("--jobs 2 scan --dim 4 --rmax 100 --json");
    if (pooled.status != 0 || pooled.output != first.output) {
        return "worker pool changed the scan output";
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") {
            g_cli_path = argv[i + 1];
        }
    }

    struct Criterion {
        const char* name;
        std::function<std::optional<std::string>()> run;
    };
    const std::vector<Criterion> criteria = {
        {"remainder map golden pair", remainder_map_golden_pair},
        {"ten-term expansion golden", ten_term_expansion_golden},
        {"age integrality sweep (n in 3..5, r <= 60)", age_integrality_sweep},
        {"dimension-3 crepancy sweep (r <= 200)", dimension_three_sweep},
        {"three-criteria equivalence sweep (n in 4..6, r <= 300)", equivalence_sweep},
        {"expansion round trip and first entry (r <= 500)", hj_round_trip_sweep},
        {"age-1 step identity on the equivalence sweep", step_identity_sweep},
        {"lattice oracle agreement (n = 4, r <= 11)", lattice_oracle_sweep},
        {"specific verdicts by every criterion", specific_verdicts},
        {"scan determinism (dim 4, rmax 100, json)", scan_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::optional<std::string> err;
        try {
            err = criteria[i].run();
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        std::printf("[%s] %zu/%zu %s (%.2f s)%s%s\n", err ? "FAIL" : "PASS", i + 1,
                    criteria.size(), criteria[i].name, secs, err ? " - " : "",
                    err ? err->c_str() : "");
        std::fflush(stdout);
        if (err) {
            ++failed;
        }
    }
    if (failed == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
    return 1;
}
