#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crepant/numeric.hpp"

namespace crepant {

/// A point of the overlattice N' = Z^n + Z*(weights/r), held as coordinates
/// multiplied by r. Unit vectors are (0,...,r,...,0).
struct LatticePoint {
    std::vector<Int> scaled;
    Int r;

    bool operator==(const LatticePoint& o) const { return scaled == o.scaled && r == o.r; }
};

inline Rat age_of_point(const LatticePoint& p) {
    Int s = 0;
    for (const Int& x : p.scaled) {
        s += x;
    }
    return Rat(s, p.r);
}

/// True iff scaled is congruent to k*weights mod r componentwise for some
/// k in 0..r-1 (k = 0 covers all of Z^n).
inline bool point_in_overlattice(const std::vector<Int>& scaled, const Int& r,
                                 const std::vector<Int>& weights) {
    if (scaled.size() != weights.size()) {
        throw std::invalid_argument("point_in_overlattice: dimension mismatch");
    }
    for (Int k = 0; k < r; ++k) {
        bool match = true;
        for (std::size_t j = 0; j < scaled.size(); ++j) {
            if (mod_floor(scaled[j] - k * weights[j], r) != 0) {
                match = false;
                break;
            }
        }
        if (match) {
            return true;
        }
    }
    return false;
}

/// The r group elements k*(weights)/r mod Z^n for k = 0..r-1, as scaled
/// representatives in [0, r)^n. Distinct when the weights generate a group
/// of full order r (true whenever some weight is coprime to r).
inline std::vector<LatticePoint> enumerate_group(const Int& r, const std::vector<Int>& weights) {
    if (r < 1 || weights.empty()) {
        throw std::invalid_argument("enumerate_group: need r >= 1 and nonempty weights");
    }
    std::vector<LatticePoint> out;
    for (Int k = 0; k < r; ++k) {
        std::vector<Int> scaled;
        scaled.reserve(weights.size());
        for (const Int& w : weights) {
            scaled.push_back(mod_floor(k * w, r));
        }
        out.push_back(LatticePoint{std::move(scaled), r});
    }
    return out;
}

/// Not a positive integer multiple of another N' point (and not the origin).
inline bool is_primitive(const LatticePoint& p, const std::vector<Int>& weights) {
    Int g = 0;
    for (const Int& x : p.scaled) {
        g = gcd(g, x);
    }
    if (g == 0) {
        return false;  // origin
    }
    for (Int m = 2; m <= g; ++m) {
        if (g % m != 0) {
            continue;
        }
        std::vector<Int> q;
        q.reserve(p.scaled.size());
        for (const Int& x : p.scaled) {
            q.push_back(x / m);
        }
        if (point_in_overlattice(q, p.r, weights)) {
            return false;
        }
    }
    return true;
}

/// age - 1, defined for primitive points only (checked).
inline Rat discrepancy(const LatticePoint& p, const std::vector<Int>& weights) {
    if (!is_primitive(p, weights)) {
        throw std::domain_error("discrepancy: point is not primitive in N'");
    }
    return age_of_point(p) - 1;
}

/// Group elements of age exactly 1: the candidate subdivision points on the
/// junior simplex. Unit vectors live outside [0, r)^n and are reported
/// separately by unit_points. Deduplicated by scaled coordinates.
inline std::vector<LatticePoint> junior_points(const Int& r, const std::vector<Int>& weights) {
    std::vector<LatticePoint> out;
    for (LatticePoint& p : enumerate_group(r, weights)) {
        if (age_of_point(p) == 1 &&
            std::find(out.begin(), out.end(), p) == out.end()) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

inline std::vector<LatticePoint> unit_points(const Int& r, std::size_t n) {
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> scaled(n, Int(0));
        scaled[i] = r;
        out.push_back(LatticePoint{std::move(scaled), r});
    }
    return out;
}

/// n lattice points spanning an n-dimensional cone over the origin.
struct Simplex {
    std::vector<LatticePoint> vertices;
};

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline Int det_integer(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Int scaled_determinant(const Simplex& s) {
    std::vector<std::vector<Int>> m;
    m.reserve(s.vertices.size());
    for (const LatticePoint& v : s.vertices) {
        if (v.scaled.size() != s.vertices.size()) {
            throw std::invalid_argument("scaled_determinant: need n vertices of dimension n");
        }
        m.push_back(v.scaled);
    }
    return det_integer(std::move(m));
}

/// Basic w.r.t. N': the vertices form a lattice basis, detected on scaled
/// integer coordinates as |det| = r^(n-1) (N' has covolume 1/r in Z^n terms).
inline bool is_basic(const Simplex& s) {
    if (s.vertices.empty()) {
        throw std::invalid_argument("is_basic: empty simplex");
    }
    const Int& r = s.vertices.front().r;
    Int d = scaled_determinant(s);
    if (d == 0) {
        throw std::domain_error("is_basic: degenerate simplex");
    }
    Int target = 1;
    for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i) {
        target *= r;
    }
    return abs(d) == target;
}

/// A face-to-face subdivision of the junior simplex into basic simplices.
struct Triangulation {
    std::vector<Simplex> simplices;
    Int r;
    std::vector<Int> weights;
};

struct SearchLimits {
    Int max_r{12};
    int max_dim{4};
    std::uint64_t max_nodes{50'000'000};
};

struct SearchOutcome {
    std::optional<Triangulation> witness;
    bool exhaustive{true};
    std::uint64_t nodes{0};
};

struct ValidationReport {
    bool ok{true};
    std::string reason;
};

/// Independent witness checker: re-derives basicness (by rational Gaussian
/// elimination rather than the integer route the search used), the volume
/// sum, lattice membership and age of every vertex, and the face-to-face
/// facet pairing, all from the returned object alone.
inline ValidationReport validate_triangulation(const Triangulation& t) {
    const std::size_t n = t.weights.size();
    if (t.simplices.empty()) {
        return {false, "no simplices"};
    }

    auto det_rational = [](const std::vector<std::vector<Int>>& rows) -> Rat {
        const std::size_t m = rows.size();
        std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                a[i][j] = Rat(rows[i][j]);
            }
        }
        Rat det = 1;
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t p = k;
            while (p < m && a[p][k] == 0) {
                ++p;
            }
            if (p == m) {
                return 0;
            }
            if (p != k) {
                std::swap(a[p], a[k]);
                det = -det;
            }
            det *= a[k][k];
            for (std::size_t i = k + 1; i < m; ++i) {
                Rat f = a[i][k] / a[k][k];
                for (std::size_t j = k; j < m; ++j) {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        return det;
    };

    Rat covolume = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        covolume *= Rat(t.r);
    }

    Rat volume = 0;
    std::map<std::vector<std::vector<Int>>, int> facet_count;
    for (const Simplex& s : t.simplices) {
        if (s.vertices.size() != n) {
            return {false, "simplex with wrong vertex count"};
        }
        std::vector<std::vector<Int>> rows;
        for (const LatticePoint& v : s.vertices) {
            if (v.r != t.r || v.scaled.size() != n) {
                return {false, "vertex with mismatched denominator or dimension"};
            }
            Int sum = 0;
            for (const Int& x : v.scaled) {
                if (x < 0 || x > t.r) {
                    return {false, "vertex coordinate outside [0, r]"};
                }
                sum += x;
            }
            if (sum != t.r) {
                return {false, "vertex off the junior simplex (age != 1)"};
            }
            if (!point_in_overlattice(v.scaled, t.r, t.weights)) {
                return {false, "vertex not in the overlattice"};
            }
            rows.push_back(v.scaled);
        }
        Rat d = det_rational(rows);
        if (d < 0) {
            d = -d;
        }
        if (d != covolume) {
            return {false, "non-basic simplex"};
        }
        volume += d / covolume;

        // facets keyed by sorted vertex coordinate lists
        std::vector<std::vector<Int>> verts = rows;
        std::sort(verts.begin(), verts.end());
        for (std::size_t skip = 0; skip < n; ++skip) {
            std::vector<std::vector<Int>> facet;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != skip) {
                    facet.push_back(verts[j]);
                }
            }
            ++facet_count[facet];
        }
    }
    if (volume != Rat(t.r)) {
        return {false, "normalized volumes do not sum to r"};
    }

    for (const auto& [facet, count] : facet_count) {
        bool boundary = false;
        for (std::size_t j = 0; j < n && !boundary; ++j) {
            bool all_zero = true;
            for (const auto& v : facet) {
                if (v[j] != 0) {
                    all_zero = false;
                    break;
                }
            }
            boundary = all_zero;
        }
        if (boundary && count != 1) {
            return {false, "boundary facet shared by " + std::to_string(count) + " simplices"};
        }
        if (!boundary && count != 2) {
            return {false, "interior facet in " + std::to_string(count) + " simplices"};
        }
    }
    return {true, ""};
}

namespace detail {

struct TriangulationSearch {
    std::size_t n;
    Int r;
    std::size_t target;  // simplices needed: each basic simplex has volume 1
    std::vector<std::vector<Int>> points;
    std::vector<std::vector<int>> simplices;            // sorted point-index sets
    std::vector<std::vector<int>> simplex_facets;       // facet ids per simplex
    std::vector<std::vector<int>> facet_simplices;      // simplex ids per facet
    std::vector<bool> facet_boundary;
    std::vector<int> facet_count;
    std::vector<bool> used;
    std::vector<int> chosen;
    std::uint64_t nodes = 0;
    std::uint64_t max_nodes = 0;
    bool truncated = false;

    bool compatible(int s) const {
        for (int f : simplex_facets[s]) {
            int cap = facet_boundary[f] ? 1 : 2;
            if (facet_count[f] + 1 > cap) {
                return false;
            }
        }
        return true;
    }

    void apply(int s) {
        used[s] = true;
        chosen.push_back(s);
        for (int f : simplex_facets[s]) {
            ++facet_count[f];
        }
    }

    void unapply(int s) {
        used[s] = false;
        chosen.pop_back();
        for (int f : simplex_facets[s]) {
            --facet_count[f];
        }
    }

    bool complete() const {
        for (std::size_t f = 0; f < facet_count.size(); ++f) {
            if (facet_count[f] == 1 && !facet_boundary[f]) {
                return false;
            }
        }
        return true;
    }

    // Smallest open interior facet; -1 when none.
    int open_facet() const {
        for (std::size_t f = 0; f < facet_count.size(); ++f) {
            if (facet_count[f] == 1 && !facet_boundary[f]) {
                return static_cast<int>(f);
            }
        }
        return -1;
    }

    bool search(const std::vector<int>& seeds) {
        if (++nodes > max_nodes) {
            truncated = true;
            return false;
        }
        if (chosen.size() == target) {
            return complete();
        }
        int f = open_facet();
        if (f >= 0) {
            for (int s : facet_simplices[f]) {
                if (used[s] || !compatible(s)) {
                    continue;
                }
                apply(s);
                if (search(seeds)) {
                    return true;
                }
                unapply(s);
                if (truncated) {
                    return false;
                }
            }
            return false;
        }
        if (!chosen.empty()) {
            // closed proper subcomplex: cannot extend to a triangulation of
            // the (facet-connected) junior simplex
            return false;
        }
        for (int s : seeds) {
            if (!compatible(s)) {
                continue;
            }
            apply(s);
            if (search(seeds)) {
                return true;
            }
            unapply(s);
            if (truncated) {
                return false;
            }
        }
        return false;
    }
};

}  // namespace detail

/// Exhaustive backtracking search for a basic age-1 triangulation of the
/// junior simplex. Candidate vertices are the unit vectors plus the junior
/// group points; candidate cells are the basic n-subsets. Found witnesses
/// are re-validated before being returned.
inline SearchOutcome search_triangulation(const Int& r, const std::vector<Int>& weights,
                                          const SearchLimits& limits = {}) {
    const std::size_t n = weights.size();
    if (n < 2) {
        throw std::invalid_argument("search_triangulation: dimension must be >= 2");
    }
    if (static_cast<int>(n) > limits.max_dim || r > limits.max_r || r < 1) {
        throw std::invalid_argument("search_triangulation: instance exceeds desk-scale limits");
    }

    detail::TriangulationSearch st;
    st.n = n;
    st.r = r;
    st.target = static_cast<std::size_t>(to_int64(r));
    st.max_nodes = limits.max_nodes;

    for (const LatticePoint& u : unit_points(r, n)) {
        st.points.push_back(u.scaled);
    }
    for (const LatticePoint& j : junior_points(r, weights)) {
        st.points.push_back(j.scaled);
    }

    std::vector<Int> generator;
    generator.reserve(n);
    for (const Int& w : weights) {
        generator.push_back(mod_floor(w, r));
    }

    Int covolume = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        covolume *= r;
    }

    // all basic n-subsets of the candidate points
    const int P = static_cast<int>(st.points.size());
    std::vector<int> pick(n);
    std::vector<std::vector<int>> basics;
    auto combos = [&](auto&& self, int start, std::size_t depth) -> void {
        if (depth == n) {
            std::vector<std::vector<Int>> m;
            m.reserve(n);
            for (std::size_t j = 0; j < n; ++j) {
                m.push_back(st.points[pick[j]]);
            }
            if (abs(det_integer(std::move(m))) == covolume) {
                basics.push_back(pick);
            }
            return;
        }
        for (int i = start; i < P; ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    combos(combos, 0, 0);

    // deterministic order: cells containing the generator point first
    int gen_idx = -1;
    for (int i = 0; i < P; ++i) {
        if (st.points[i] == generator) {
            gen_idx = i;
            break;
        }
    }
    std::stable_sort(basics.begin(), basics.end(), [&](const auto& a, const auto& b) {
        bool ga = gen_idx >= 0 && std::find(a.begin(), a.end(), gen_idx) != a.end();
        bool gb = gen_idx >= 0 && std::find(b.begin(), b.end(), gen_idx) != b.end();
        if (ga != gb) {
            return ga;
        }
        return a < b;
    });
    st.simplices = std::move(basics);

    // facet table
    std::map<std::vector<int>, int> facet_ids;
    st.simplex_facets.resize(st.simplices.size());
    for (std::size_t s = 0; s < st.simplices.size(); ++s) {
        for (std::size_t skip = 0; skip < n; ++skip) {
            std::vector<int> facet;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != skip) {
                    facet.push_back(st.simplices[s][j]);
                }
            }
            auto [it, inserted] = facet_ids.emplace(facet, static_cast<int>(facet_ids.size()));
            if (inserted) {
                st.facet_simplices.emplace_back();
                bool boundary = false;
                for (std::size_t coord = 0; coord < n && !boundary; ++coord) {
                    bool all_zero = true;
                    for (int pi : facet) {
                        if (st.points[pi][coord] != 0) {
                            all_zero = false;
                            break;
                        }
                    }
                    boundary = all_zero;
                }
                st.facet_boundary.push_back(boundary);
            }
            st.simplex_facets[s].push_back(it->second);
            st.facet_simplices[it->second].push_back(static_cast<int>(s));
        }
    }
    st.facet_count.assign(facet_ids.size(), 0);
    st.used.assign(st.simplices.size(), false);

    // seeds: every triangulation has a cell with the corner e_1 as a vertex
    std::vector<int> seeds;
    for (std::size_t s = 0; s < st.simplices.size(); ++s) {
        if (std::find(st.simplices[s].begin(), st.simplices[s].end(), 0) !=
            st.simplices[s].end()) {
            seeds.push_back(static_cast<int>(s));
        }
    }

    SearchOutcome out;
    bool found = st.search(seeds);
    out.nodes = st.nodes;
    out.exhaustive = !st.truncated;
    if (found) {
        Triangulation tri;
        tri.r = r;
        tri.weights = weights;
        for (int s : st.chosen) {
            Simplex sx;
            for (int pi : st.simplices[s]) {
                sx.vertices.push_back(LatticePoint{st.points[pi], r});
            }
            std::sort(sx.vertices.begin(), sx.vertices.end(),
                      [](const LatticePoint& a, const LatticePoint& b) {
                          return a.scaled < b.scaled;
                      });
            tri.simplices.push_back(std::move(sx));
        }
        std::sort(tri.simplices.begin(), tri.simplices.end(),
                  [](const Simplex& a, const Simplex& b) {
                      std::vector<std::vector<Int>> va, vb;
                      for (const auto& v : a.vertices) va.push_back(v.scaled);
                      for (const auto& v : b.vertices) vb.push_back(v.scaled);
                      return va < vb;
                  });
        ValidationReport rep = validate_triangulation(tri);
        if (!rep.ok) {
            throw std::logic_error("search_triangulation: witness failed re-validation: " +
                                   rep.reason);
        }
        out.witness = std::move(tri);
    }
    return out;
}

}  // namespace crepant
