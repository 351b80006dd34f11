#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "crepant/criteria.hpp"
#include "crepant/numeric.hpp"

namespace crepant {

/// One sweep record: the three verdicts for a type, with the expansion leg
/// nullable when its hypotheses fail.
struct ScanRecord {
    int n{};
    Int r;
    Int d;
    Int c;
    Decision poly{Decision::Indeterminate};
    Decision fast{Decision::Indeterminate};
    std::optional<bool> hj;
    bool agree{true};
    std::string witness;
};

struct ScanSummary {
    std::size_t total{0};
    std::size_t crepant{0};
    std::size_t not_crepant{0};
    std::size_t hj_skipped{0};
    std::size_t disagreements{0};
};

inline std::string witness_summary(const Verdict& v) {
    switch (v.decision) {
        case Decision::Crepant:
            if (!v.age_one_coefficients.empty()) {
                return std::to_string(v.age_one_coefficients.size()) + " age-1 coefficients";
            }
            return v.note.empty() ? "crepant" : v.note;
        case Decision::NotCrepant:
            if (v.offending_term) {
                return v.offending_term->text();
            }
            return v.note;
        default:
            return v.note;
    }
}

/// All valid (r <= rmax, d, c) with 1 + d + (n-2)c = r, ordered by r then d.
inline std::vector<TwoParameterType> enumerate_two_parameter(int n, const Int& rmax) {
    std::vector<TwoParameterType> out;
    for (Int r = 1; r <= rmax; ++r) {
        for (Int d = 0; d <= r - 1; ++d) {
            Int rem = r - 1 - d;
            if (rem % (n - 2) != 0) {
                continue;
            }
            Int c = rem / (n - 2);
            if (c > r - 1) {
                continue;
            }
            out.emplace_back(n, r, d, c);
        }
    }
    return out;
}

inline ScanRecord scan_one(const TwoParameterType& t) {
    CrossCheckReport rep = cross_check(t);
    ScanRecord rec;
    rec.n = t.n;
    rec.r = t.r;
    rec.d = t.d;
    rec.c = t.c;
    rec.poly = rep.poly.decision;
    rec.fast = rep.fast.decision;
    rec.hj = rep.hj_crepant;
    rec.agree = rep.agree;
    rec.witness = witness_summary(rep.poly);
    return rec;
}

/// Runs the sweep, fanning instances across `jobs` workers. Records land in
/// input order regardless of completion order.
inline std::vector<ScanRecord> scan_family(int n, const Int& rmax, int jobs = 1) {
    std::vector<TwoParameterType> types = enumerate_two_parameter(n, rmax);
    std::vector<ScanRecord> records(types.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < types.size(); ++i) {
            records[i] = scan_one(types[i]);
        }
        return records;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= types.size()) {
                return;
            }
            records[i] = scan_one(types[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    return records;
}

inline ScanSummary summarize(const std::vector<ScanRecord>& records) {
    ScanSummary s;
    s.total = records.size();
    for (const ScanRecord& rec : records) {
        if (rec.poly == Decision::Crepant) {
            ++s.crepant;
        } else if (rec.poly == Decision::NotCrepant) {
            ++s.not_crepant;
        }
        if (!rec.hj.has_value()) {
            ++s.hj_skipped;
        }
        if (!rec.agree) {
            ++s.disagreements;
        }
    }
    return s;
}

}  // namespace crepant
