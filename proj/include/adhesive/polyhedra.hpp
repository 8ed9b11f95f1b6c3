#pragma once
// Exact rational linear inequality systems: canonical form, LP certificates
// (implication, feasibility, redundancy, membership in a projection),
// Fourier-Motzkin elimination and double-description ray enumeration.

#include "adhesive/error.hpp"
#include "adhesive/lp.hpp"
#include "adhesive/parallel.hpp"
#include "adhesive/rational.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace adhesive {

/// One row a·x >= b (inequality) or a·x = b (equality).
struct Row {
    RationalVector a;
    Rational b;
    friend bool operator==(const Row&, const Row&) = default;
};

struct LinIneqSystem {
    std::vector<std::string> coords;
    std::vector<Row> ineqs;
    std::vector<Row> eqs;
    bool infeasible = false; // solution set known to be empty

    LinIneqSystem() = default;
    explicit LinIneqSystem(std::vector<std::string> c) : coords(std::move(c)) {
        auto sorted = coords;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InconsistentInput("duplicate coordinate label");
    }

    std::size_t dim() const { return coords.size(); }

    std::optional<std::size_t> find(const std::string& label) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == label) return i;
        return std::nullopt;
    }
    std::size_t index(const std::string& label) const {
        auto i = find(label);
        if (!i) throw InconsistentInput("unknown coordinate '" + label + "'");
        return *i;
    }

    RationalVector vec(const std::vector<std::pair<std::string, Rational>>& terms) const {
        RationalVector a(dim());
        for (const auto& [l, c] : terms) a[index(l)] += c;
        return a;
    }

    void add_ineq(RationalVector a, Rational b = Rational(0)) {
        if (a.size() != dim()) throw InconsistentInput("row length does not match coordinates");
        ineqs.push_back({std::move(a), std::move(b)});
    }
    void add_eq(RationalVector a, Rational b = Rational(0)) {
        if (a.size() != dim()) throw InconsistentInput("row length does not match coordinates");
        eqs.push_back({std::move(a), std::move(b)});
    }

    bool homogeneous() const {
        for (const auto& r : ineqs)
            if (!r.b.is_zero()) return false;
        for (const auto& r : eqs)
            if (!r.b.is_zero()) return false;
        return true;
    }

    std::size_t size() const { return ineqs.size() + eqs.size(); }

    friend bool operator==(const LinIneqSystem&, const LinIneqSystem&) = default;
};

namespace detail {

inline bool is_zero_vec(const RationalVector& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

/// Scales a row by a positive factor so that `a` becomes a primitive integer vector.
inline void normalize_row(Row& r) {
    std::size_t k = 0;
    while (k < r.a.size() && r.a[k].is_zero()) ++k;
    if (k == r.a.size()) return;
    Rational before = r.a[k];
    make_primitive(r.a);
    Rational factor = r.a[k] / before;
    if (factor != Rational(1)) r.b *= factor;
}

inline bool row_less(const Row& x, const Row& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        bool zx = x.a[i].is_zero(), zy = y.a[i].is_zero();
        if (zx != zy) return zy; // rows touching earlier coordinates first
        if (x.a[i] != y.a[i]) return y.a[i] < x.a[i];
    }
    return x.b < y.b;
}

struct VecHash {
    std::size_t operator()(const RationalVector& v) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& x : v) h = (h ^ x.hash()) * 0x100000001b3ULL;
        return h;
    }
};

/// r -= f * q
inline void axpy(Row& r, Rational f, const Row& q) {
    for (std::size_t i = 0; i < r.a.size(); ++i)
        if (!q.a[i].is_zero()) r.a[i] -= f * q.a[i];
    if (!q.b.is_zero()) r.b -= f * q.b;
}

} // namespace detail

/// Equalities in reduced echelon form (pivot = last nonzero coordinate, scaled
/// to a primitive integer row with positive pivot), inequalities reduced
/// modulo the equalities and scaled to primitive integer coefficients,
/// duplicate directions merged (keeping the strongest bound), rows sorted.
inline LinIneqSystem canonicalize(const LinIneqSystem& sys) {
    LinIneqSystem out(sys.coords);
    out.infeasible = sys.infeasible;
    std::vector<Row> basis;
    std::vector<std::size_t> piv;
    for (Row e : sys.eqs) {
        if (e.a.size() != sys.dim()) throw InconsistentInput("row length does not match coordinates");
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!e.a[piv[k]].is_zero()) detail::axpy(e, e.a[piv[k]], basis[k]);
        if (detail::is_zero_vec(e.a)) {
            if (!e.b.is_zero()) out.infeasible = true;
            continue;
        }
        std::size_t p = e.a.size();
        while (e.a[p - 1].is_zero()) --p;
        --p;
        Rational inv = Rational(1) / e.a[p];
        for (auto& x : e.a) x *= inv;
        e.b *= inv;
        for (auto& q : basis)
            if (!q.a[p].is_zero()) detail::axpy(q, q.a[p], e);
        basis.push_back(std::move(e));
        piv.push_back(p);
    }
    std::map<std::size_t, Row> by_pivot;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Row r = basis[k];
        detail::normalize_row(r);
        by_pivot.emplace(piv[k], std::move(r));
    }
    for (auto& [p, r] : by_pivot) out.eqs.push_back(std::move(r));

    std::unordered_map<RationalVector, std::size_t, detail::VecHash> seen;
    for (Row r : sys.ineqs) {
        if (r.a.size() != sys.dim()) throw InconsistentInput("row length does not match coordinates");
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!r.a[piv[k]].is_zero()) detail::axpy(r, r.a[piv[k]], basis[k]);
        if (detail::is_zero_vec(r.a)) {
            if (r.b.sign() > 0) out.infeasible = true;
            continue;
        }
        detail::normalize_row(r);
        auto it = seen.find(r.a);
        if (it != seen.end()) {
            if (out.ineqs[it->second].b < r.b) out.ineqs[it->second].b = r.b;
            continue;
        }
        seen.emplace(r.a, out.ineqs.size());
        out.ineqs.push_back(std::move(r));
    }
    std::sort(out.ineqs.begin(), out.ineqs.end(), detail::row_less);
    if (out.infeasible) {
        out.ineqs.clear();
        out.eqs.clear();
    }
    return out;
}

// ---------------------------------------------------------------------------
// LP certificates

namespace detail {

/// Is a·x >= b a nonnegative combination of the selected inequalities plus
/// any combination of the equalities, with bound at least b?  (Farkas form;
/// for a feasible system this is exactly implication.)
inline bool farkas(const LinIneqSystem& s, const std::vector<std::size_t>& use, const RationalVector& a,
                   const Rational& b) {
    std::size_t d = s.dim();
    std::vector<std::int64_t> rowmap(d, -1);
    std::uint32_t m = 0;
    auto touch = [&](const RationalVector& v) {
        for (std::size_t k = 0; k < d; ++k)
            if (!v[k].is_zero() && rowmap[k] < 0) rowmap[k] = m++;
    };
    for (auto i : use) touch(s.ineqs[i].a);
    for (const auto& e : s.eqs) touch(e.a);
    for (std::size_t k = 0; k < d; ++k)
        if (!a[k].is_zero() && rowmap[k] < 0) return false; // a uses a coordinate nothing else does
    std::uint32_t brow = m++;
    lp::Problem p;
    p.rows = m;
    p.rhs.assign(m, Rational(0));
    for (std::size_t k = 0; k < d; ++k)
        if (rowmap[k] >= 0) p.rhs[static_cast<std::size_t>(rowmap[k])] = a[k];
    p.rhs[brow] = b;
    auto column = [&](const Row& r, bool negate) {
        lp::SparseColumn c;
        for (std::size_t k = 0; k < d; ++k)
            if (!r.a[k].is_zero()) c.add(static_cast<std::uint32_t>(rowmap[k]), negate ? -r.a[k] : r.a[k]);
        c.add(brow, negate ? -r.b : r.b);
        return c;
    };
    for (auto i : use) p.add_column(column(s.ineqs[i], false));
    for (const auto& e : s.eqs) {
        p.add_column(column(e, false));
        p.add_column(column(e, true));
    }
    lp::SparseColumn surplus;
    surplus.add(brow, Rational(-1));
    p.add_column(std::move(surplus));
    return lp::solve(p).status == lp::Status::optimal;
}

inline std::vector<std::size_t> all_rows(const LinIneqSystem& s) {
    std::vector<std::size_t> v(s.ineqs.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

/// A point satisfying the equalities and every inequality strictly, found by
/// maximising the smallest slack (capped at 1) through the dual LP. nullopt
/// when the system is infeasible or some inequality is an implicit equality.
inline std::optional<RationalVector> interior_point(const LinIneqSystem& s) {
    std::size_t d = s.dim();
    std::vector<std::int64_t> rowmap(d, -1);
    std::uint32_t m = 0;
    auto touch = [&](const RationalVector& v) {
        for (std::size_t k = 0; k < d; ++k)
            if (!v[k].is_zero() && rowmap[k] < 0) rowmap[k] = m++;
    };
    for (const auto& r : s.ineqs) touch(r.a);
    for (const auto& e : s.eqs) touch(e.a);
    std::uint32_t trow = m++;
    lp::Problem p;
    p.rows = m;
    p.rhs.assign(m, Rational(0));
    p.rhs[trow] = Rational(1);
    auto column = [&](const Row& r, bool negate, bool slack) {
        lp::SparseColumn c;
        for (std::size_t k = 0; k < d; ++k)
            if (!r.a[k].is_zero()) c.add(static_cast<std::uint32_t>(rowmap[k]), negate ? -r.a[k] : r.a[k]);
        if (slack) c.add(trow, Rational(1));
        return c;
    };
    std::vector<Rational> cost;
    for (const auto& r : s.ineqs) {
        p.columns.push_back(column(r, false, true));
        cost.push_back(-r.b);
    }
    lp::SparseColumn cap;
    cap.add(trow, Rational(1));
    p.columns.push_back(std::move(cap));
    cost.push_back(Rational(1));
    for (const auto& e : s.eqs) {
        p.columns.push_back(column(e, false, false));
        cost.push_back(-e.b);
        p.columns.push_back(column(e, true, false));
        cost.push_back(e.b);
    }
    p.cost = std::move(cost);
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::optimal || sol.y[trow].sign() <= 0) return std::nullopt;
    RationalVector z(d);
    for (std::size_t k = 0; k < d; ++k)
        if (rowmap[k] >= 0) z[k] = -sol.y[static_cast<std::size_t>(rowmap[k])];
    for (const auto& e : s.eqs)
        if (dot(e.a, z) != e.b) throw std::logic_error("interior point misses an equality");
    for (const auto& r : s.ineqs)
        if (dot(r.a, z) <= r.b) throw std::logic_error("interior point is not strict");
    return z;
}

/// nullopt if a·x >= b follows from the selected rows and the equalities.
/// Otherwise a direction u with a·u < 0 such that z + u satisfies the
/// selected rows (or u is a recession direction of them), read off the
/// Farkas ray of the infeasible certificate LP.
inline std::optional<RationalVector> implied_or_direction(const LinIneqSystem& s, const std::vector<std::size_t>& use,
                                                          const RationalVector& a, const Rational& b,
                                                          const RationalVector& z) {
    std::size_t d = s.dim();
    std::vector<std::int64_t> rowmap(d, -1);
    std::uint32_t m = 0;
    auto touch = [&](const RationalVector& v) {
        for (std::size_t k = 0; k < d; ++k)
            if (!v[k].is_zero() && rowmap[k] < 0) rowmap[k] = m++;
    };
    for (auto i : use) touch(s.ineqs[i].a);
    for (const auto& e : s.eqs) touch(e.a);
    for (std::size_t k = 0; k < d; ++k)
        if (!a[k].is_zero() && rowmap[k] < 0) {
            RationalVector u(d);
            u[k] = Rational(-a[k].sign());
            return u;
        }
    std::uint32_t brow = m++;
    lp::Problem p;
    p.rows = m;
    p.rhs.assign(m, Rational(0));
    for (std::size_t k = 0; k < d; ++k)
        if (rowmap[k] >= 0) p.rhs[static_cast<std::size_t>(rowmap[k])] = a[k];
    p.rhs[brow] = b;
    auto column = [&](const Row& r, bool negate) {
        lp::SparseColumn c;
        for (std::size_t k = 0; k < d; ++k)
            if (!r.a[k].is_zero()) c.add(static_cast<std::uint32_t>(rowmap[k]), negate ? -r.a[k] : r.a[k]);
        c.add(brow, negate ? -r.b : r.b);
        return c;
    };
    for (auto i : use) p.add_column(column(s.ineqs[i], false));
    for (const auto& e : s.eqs) {
        p.add_column(column(e, false));
        p.add_column(column(e, true));
    }
    lp::SparseColumn surplus;
    surplus.add(brow, Rational(-1));
    p.add_column(std::move(surplus));
    auto sol = lp::solve(p);
    if (sol.status == lp::Status::optimal) return std::nullopt;
    // w = -y: w·column >= 0 for every column, w·rhs < 0.
    RationalVector x(d);
    for (std::size_t k = 0; k < d; ++k)
        if (rowmap[k] >= 0) x[k] = -sol.y[static_cast<std::size_t>(rowmap[k])];
    Rational tau = -sol.y[brow];
    if (tau.sign() < 0) {
        Rational inv = Rational(-1) / tau;
        for (std::size_t k = 0; k < d; ++k) x[k] = x[k] * inv - z[k];
    }
    if (dot(a, x).sign() >= 0) throw std::logic_error("certificate direction does not decrease the row");
    return x;
}

/// Output-sensitive redundancy detection for a system with a strict interior
/// point z: a row not implied by the facets found so far yields a direction,
/// and the first row hit by the ray from z along it is a facet. Cost is one
/// small LP per row plus one per facet. Rows must be canonical (no duplicates).
inline std::vector<char> irredundant_rows(const LinIneqSystem& s, const RationalVector& z) {
    std::size_t m = s.ineqs.size();
    std::vector<char> state(m, 0); // 0 unknown, 1 facet, 2 redundant
    std::vector<Rational> slack(m);
    for (std::size_t i = 0; i < m; ++i) slack[i] = dot(s.ineqs[i].a, z) - s.ineqs[i].b;
    std::vector<std::size_t> facets;
    // Fixed pseudo-random perturbations for breaking ties between rows hit together.
    std::vector<RationalVector> perturb;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    for (int t = 0; t < 4; ++t) {
        RationalVector v(s.dim());
        for (auto& x : v) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            x = Rational(static_cast<std::int64_t>((seed >> 33) % 61) - 30);
        }
        perturb.push_back(std::move(v));
    }
    for (std::size_t r = 0; r < m; ++r) {
        while (state[r] == 0) {
            auto u = implied_or_direction(s, facets, s.ineqs[r].a, s.ineqs[r].b, z);
            if (!u) {
                state[r] = 2;
                break;
            }
            std::vector<std::size_t> hit;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (state[i] == 2) continue;
                Rational den = dot(s.ineqs[i].a, *u);
                if (den.sign() >= 0) continue;
                Rational lambda = slack[i] / -den;
                if (hit.empty() || lambda < best) {
                    hit.assign(1, i);
                    best = lambda;
                } else if (lambda == best) {
                    hit.push_back(i);
                }
            }
            for (std::size_t t = 0; t < perturb.size() && hit.size() > 1; ++t) {
                std::vector<std::size_t> next;
                Rational lo;
                for (auto i : hit) {
                    Rational c = dot(s.ineqs[i].a, perturb[t]) / slack[i];
                    if (next.empty() || c < lo) {
                        next.assign(1, i);
                        lo = c;
                    } else if (c == lo) {
                        next.push_back(i);
                    }
                }
                hit = std::move(next);
            }
            if (hit.size() != 1) {
                // Degenerate beyond the perturbations: settle r directly.
                std::vector<std::size_t> use;
                for (std::size_t i = 0; i < m; ++i)
                    if (i != r && state[i] != 2) use.push_back(i);
                state[r] = farkas(s, use, s.ineqs[r].a, s.ineqs[r].b) ? 2 : 1;
                if (state[r] == 1) facets.push_back(r);
                break;
            }
            if (state[hit[0]] == 1) throw std::logic_error("ray shooting hit a known facet");
            state[hit[0]] = 1;
            facets.push_back(hit[0]);
        }
    }
    std::vector<char> alive(m);
    for (std::size_t i = 0; i < m; ++i) alive[i] = state[i] == 1;
    return alive;
}

} // namespace detail

inline bool is_feasible(const LinIneqSystem& s) {
    if (s.infeasible) return false;
    return !detail::farkas(s, detail::all_rows(s), RationalVector(s.dim()), Rational(1));
}

/// Does every solution of `s` satisfy a·x >= b?
inline bool implies(const LinIneqSystem& s, const RationalVector& a, const Rational& b) {
    if (a.size() != s.dim()) throw InconsistentInput("row length does not match coordinates");
    if (s.infeasible) return true;
    if (detail::farkas(s, detail::all_rows(s), a, b)) return true;
    return !is_feasible(s);
}

/// Does every solution of `s` satisfy a·x = b?
inline bool implies_equality(const LinIneqSystem& s, const RationalVector& a, const Rational& b) {
    RationalVector na(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
    return implies(s, a, b) && implies(s, na, -b);
}

/// Exact evaluation of a point.
inline bool satisfies(const LinIneqSystem& s, const RationalVector& x) {
    if (x.size() != s.dim()) throw InconsistentInput("point dimension does not match coordinates");
    if (s.infeasible) return false;
    for (const auto& r : s.eqs)
        if (dot(r.a, x) != r.b) return false;
    for (const auto& r : s.ineqs)
        if (dot(r.a, x) < r.b) return false;
    return true;
}

/// First row of `outer` (equalities first, then inequalities) not implied by
/// `inner`, or nullopt if inner ⊆ outer as solution sets.
struct RowRef {
    bool equality = false;
    std::size_t index = 0;
};

inline std::optional<RowRef> first_unimplied(const LinIneqSystem& inner, const LinIneqSystem& outer) {
    if (inner.coords != outer.coords) throw InconsistentInput("systems over different coordinates");
    if (!is_feasible(inner)) return std::nullopt;
    if (outer.infeasible) return RowRef{false, 0};
    for (std::size_t i = 0; i < outer.eqs.size(); ++i)
        if (!implies_equality(inner, outer.eqs[i].a, outer.eqs[i].b)) return RowRef{true, i};
    for (std::size_t i = 0; i < outer.ineqs.size(); ++i)
        if (!detail::farkas(inner, detail::all_rows(inner), outer.ineqs[i].a, outer.ineqs[i].b)) return RowRef{false, i};
    return std::nullopt;
}

/// Solution set of `inner` contained in that of `outer`.
inline bool subset_of(const LinIneqSystem& inner, const LinIneqSystem& outer) {
    return !first_unimplied(inner, outer).has_value();
}

inline bool equivalent(const LinIneqSystem& x, const LinIneqSystem& y) { return subset_of(x, y) && subset_of(y, x); }

struct RedundancyOptions {
    bool promote_equalities = true; // detect implicit equalities and move them to the equality block
    unsigned jobs = 1;
};

/// Removes every inequality implied by the remaining ones. With
/// promote_equalities, inequalities that hold with equality on the whole
/// solution set become equalities, which makes the result unique. Infeasible
/// input yields a system with `infeasible` set and no rows.
inline LinIneqSystem lp_remove_redundant(const LinIneqSystem& sys, RedundancyOptions opt = {}) {
    LinIneqSystem s = canonicalize(sys);
    if (s.infeasible || !is_feasible(s)) {
        LinIneqSystem out(s.coords);
        out.infeasible = true;
        return out;
    }
    if (auto z = detail::interior_point(s)) {
        // No implicit equalities, so only the redundant rows need removing.
        auto alive = detail::irredundant_rows(s, *z);
        LinIneqSystem kept(s.coords);
        kept.eqs = s.eqs;
        for (std::size_t i = 0; i < s.ineqs.size(); ++i)
            if (alive[i]) kept.ineqs.push_back(s.ineqs[i]);
        return kept;
    }
    while (true) {
        std::size_t m = s.ineqs.size();
        std::vector<char> alive(m, 1);
        std::vector<char> candidate(m, 1);
        if (opt.jobs > 1) {
            // Rows not implied by all others can never become redundant.
            parallel_for(m, opt.jobs, [&](std::size_t r) {
                std::vector<std::size_t> use;
                for (std::size_t i = 0; i < m; ++i)
                    if (i != r) use.push_back(i);
                candidate[r] = detail::farkas(s, use, s.ineqs[r].a, s.ineqs[r].b);
            });
        }
        for (std::size_t r = m; r-- > 0;) {
            if (!candidate[r]) continue;
            std::vector<std::size_t> use;
            for (std::size_t i = 0; i < m; ++i)
                if (i != r && alive[i]) use.push_back(i);
            if (detail::farkas(s, use, s.ineqs[r].a, s.ineqs[r].b)) alive[r] = 0;
        }
        LinIneqSystem kept(s.coords);
        kept.eqs = s.eqs;
        for (std::size_t i = 0; i < m; ++i)
            if (alive[i]) kept.ineqs.push_back(s.ineqs[i]);
        if (!opt.promote_equalities) return kept;

        std::vector<char> tight(kept.ineqs.size(), 0);
        auto use = detail::all_rows(kept);
        parallel_for(kept.ineqs.size(), opt.jobs, [&](std::size_t r) {
            RationalVector na(kept.dim());
            for (std::size_t k = 0; k < na.size(); ++k) na[k] = -kept.ineqs[r].a[k];
            tight[r] = detail::farkas(kept, use, na, -kept.ineqs[r].b);
        });
        if (std::find(tight.begin(), tight.end(), 1) == tight.end()) return kept;
        LinIneqSystem next(s.coords);
        next.eqs = kept.eqs;
        for (std::size_t i = 0; i < kept.ineqs.size(); ++i)
            (tight[i] ? next.eqs : next.ineqs).push_back(kept.ineqs[i]);
        s = canonicalize(next);
    }
}

/// Concatenation of systems over identical coordinates, then redundancy removal.
inline LinIneqSystem intersect(const std::vector<LinIneqSystem>& systems, RedundancyOptions opt = {}) {
    if (systems.empty()) throw InconsistentInput("intersect needs at least one system");
    LinIneqSystem out(systems[0].coords);
    for (const auto& s : systems) {
        if (s.coords != out.coords) throw InconsistentInput("intersect: systems over different coordinates");
        out.infeasible = out.infeasible || s.infeasible;
        out.ineqs.insert(out.ineqs.end(), s.ineqs.begin(), s.ineqs.end());
        out.eqs.insert(out.eqs.end(), s.eqs.begin(), s.eqs.end());
    }
    return lp_remove_redundant(out, opt);
}

/// Re-expresses a system over another coordinate list. Coordinates missing
/// from `coords` must have zero coefficients everywhere.
inline LinIneqSystem reexpress(const LinIneqSystem& s, const std::vector<std::string>& coords) {
    LinIneqSystem out(coords);
    out.infeasible = s.infeasible;
    std::vector<std::optional<std::size_t>> where(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) where[i] = out.find(s.coords[i]);
    auto map_row = [&](const Row& r) {
        Row o{RationalVector(coords.size()), r.b};
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (r.a[i].is_zero()) continue;
            if (!where[i]) throw InconsistentInput("coordinate '" + s.coords[i] + "' is not available in the target");
            o.a[*where[i]] = r.a[i];
        }
        return o;
    };
    for (const auto& r : s.ineqs) out.ineqs.push_back(map_row(r));
    for (const auto& r : s.eqs) out.eqs.push_back(map_row(r));
    return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination

struct FmStats;

struct FmOptions {
    std::size_t prune_threshold = 2000; // LP-prune whenever more rows than this remain after a step
    unsigned jobs = 1;
    bool final_prune = true;
    std::function<void(const FmStats&)> on_step; // called after each elimination step
};

struct FmStats {
    std::vector<std::string> substituted; // eliminated through equalities, in order
    std::vector<std::string> order;       // eliminated by Fourier-Motzkin, in order
    std::vector<std::size_t> rows_after;  // inequality count after each FM step
    std::size_t max_rows = 0;
    std::size_t lp_prunes = 0;
};

namespace detail {

struct FmRow {
    Row row;
    std::vector<std::uint64_t> hist;
};

inline std::size_t hist_count(const std::vector<std::uint64_t>& h) {
    std::size_t c = 0;
    for (auto w : h) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline bool hist_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

/// Keeps the strongest row per direction and drops rows whose history
/// strictly contains another row's history.
inline void fm_dedup(std::vector<FmRow>& rows, bool dominance) {
    std::unordered_map<RationalVector, std::size_t, VecHash> seen;
    std::vector<FmRow> out;
    out.reserve(rows.size());
    for (auto& r : rows) {
        auto it = seen.find(r.row.a);
        if (it == seen.end()) {
            seen.emplace(r.row.a, out.size());
            out.push_back(std::move(r));
            continue;
        }
        auto& o = out[it->second];
        if (o.row.b < r.row.b || (o.row.b == r.row.b && hist_count(r.hist) < hist_count(o.hist))) o = std::move(r);
    }
    rows = std::move(out);
    if (!dominance || rows.empty()) return;
    std::vector<std::size_t> count(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) count[i] = hist_count(rows[i].hist);
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto x, auto y) { return count[x] < count[y]; });
    std::vector<char> drop(rows.size(), 0);
    for (std::size_t p = 0; p < idx.size(); ++p) {
        auto i = idx[p];
        for (std::size_t q = 0; q < p; ++q) {
            auto j = idx[q];
            if (count[j] >= count[i]) break;
            if (!drop[j] && hist_subset(rows[j].hist, rows[i].hist)) {
                drop[i] = 1;
                break;
            }
        }
    }
    std::vector<FmRow> kept;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(rows[i]));
    rows = std::move(kept);
}

} // namespace detail

/// Projection of the solution set onto the coordinates not in `drop`.
/// Equalities are used first to substitute dropped coordinates away; the rest
/// are eliminated by Fourier-Motzkin in greedy order (fewest positive×negative
/// pairs, ties to the earlier coordinate), with Chernikov's history bound,
/// history dominance and LP pruning of large intermediate systems.
inline LinIneqSystem fm_eliminate(const LinIneqSystem& sys, const std::vector<std::string>& drop, FmOptions opt = {},
                                  FmStats* stats = nullptr) {
    FmStats local;
    FmStats& st = stats ? *stats : local;
    std::vector<char> is_drop(sys.dim(), 0);
    for (const auto& l : drop) is_drop[sys.index(l)] = 1;
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < sys.dim(); ++i)
        if (!is_drop[i]) keep.push_back(sys.coords[i]);

    LinIneqSystem s = canonicalize(sys);
    auto finish = [&](LinIneqSystem&& w) {
        LinIneqSystem out = reexpress(w, keep);
        if (out.infeasible) {
            LinIneqSystem e(keep);
            e.infeasible = true;
            return e;
        }
        return opt.final_prune ? lp_remove_redundant(out, {true, opt.jobs}) : canonicalize(out);
    };
    if (s.infeasible) return finish(std::move(s));

    // Gaussian substitution through equalities.
    while (true) {
        std::size_t best_eq = s.eqs.size(), best_k = 0, best_cost = 0;
        for (std::size_t e = 0; e < s.eqs.size(); ++e)
            for (std::size_t k = 0; k < s.dim(); ++k) {
                if (!is_drop[k] || s.eqs[e].a[k].is_zero()) continue;
                std::size_t cost = 0;
                for (const auto& r : s.ineqs) cost += !r.a[k].is_zero();
                if (best_eq == s.eqs.size() || cost < best_cost || (cost == best_cost && k < best_k)) {
                    best_eq = e;
                    best_k = k;
                    best_cost = cost;
                }
            }
        if (best_eq == s.eqs.size()) break;
        Row e = s.eqs[best_eq];
        s.eqs.erase(s.eqs.begin() + static_cast<std::ptrdiff_t>(best_eq));
        Rational piv = e.a[best_k];
        for (auto* block : {&s.ineqs, &s.eqs})
            for (auto& r : *block)
                if (!r.a[best_k].is_zero()) {
                    detail::axpy(r, r.a[best_k] / piv, e);
                    detail::normalize_row(r);
                }
        st.substituted.push_back(s.coords[best_k]);
    }
    s = canonicalize(s);
    if (s.infeasible) return finish(std::move(s));

    std::size_t words = (s.ineqs.size() + 63) / 64;
    std::vector<detail::FmRow> rows;
    for (std::size_t i = 0; i < s.ineqs.size(); ++i) {
        detail::FmRow r{s.ineqs[i], std::vector<std::uint64_t>(words, 0)};
        r.hist[i / 64] |= std::uint64_t{1} << (i % 64);
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> pending;
    for (std::size_t k = 0; k < s.dim(); ++k)
        if (is_drop[k]) pending.push_back(k);

    std::size_t eliminated = 0;
    while (!pending.empty()) {
        std::size_t pick = 0, best = 0;
        for (std::size_t q = 0; q < pending.size(); ++q) {
            std::size_t pos = 0, neg = 0;
            for (const auto& r : rows) {
                int sg = r.row.a[pending[q]].sign();
                pos += sg > 0;
                neg += sg < 0;
            }
            std::size_t cost = pos * neg;
            if (q == 0 || cost < best) {
                pick = q;
                best = cost;
            }
        }
        std::size_t k = pending[pick];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
        bool trivial = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r.row.a[k].is_zero(); });
        if (!trivial) {
            ++eliminated;
            st.order.push_back(s.coords[k]);
        }
        std::vector<detail::FmRow> zero, pos, neg;
        for (auto& r : rows) {
            int sg = r.row.a[k].sign();
            (sg == 0 ? zero : sg > 0 ? pos : neg).push_back(std::move(r));
        }
        std::vector<std::vector<detail::FmRow>> produced(pos.size());
        std::size_t bound = eliminated + 1;
        parallel_for(pos.size(), opt.jobs, [&](std::size_t i) {
            const auto& p = pos[i];
            for (const auto& q : neg) {
                std::vector<std::uint64_t> h(words);
                std::size_t c = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    h[w] = p.hist[w] | q.hist[w];
                    c += static_cast<std::size_t>(std::popcount(h[w]));
                }
                if (c > bound) continue; // Chernikov: cannot define a facet
                Rational fp = -q.row.a[k], fq = p.row.a[k];
                Row r{RationalVector(s.dim()), fp * p.row.b + fq * q.row.b};
                for (std::size_t j = 0; j < s.dim(); ++j) {
                    if (j == k) continue;
                    const auto& x = p.row.a[j];
                    const auto& y = q.row.a[j];
                    if (x.is_zero() && y.is_zero()) continue;
                    r.a[j] = fp * x + fq * y;
                }
                if (detail::is_zero_vec(r.a)) {
                    if (r.b.sign() > 0) {
                        r.b = Rational(1); // 0 >= positive: keep as witness of infeasibility
                        produced[i].push_back({std::move(r), std::move(h)});
                    }
                    continue;
                }
                detail::normalize_row(r);
                produced[i].push_back({std::move(r), std::move(h)});
            }
        });
        rows = std::move(zero);
        for (auto& block : produced)
            for (auto& r : block) rows.push_back(std::move(r));
        for (const auto& r : rows)
            if (detail::is_zero_vec(r.row.a) && r.row.b.sign() > 0) {
                s.infeasible = true;
                return finish(std::move(s));
            }
        detail::fm_dedup(rows, rows.size() <= 20000);
        st.max_rows = std::max(st.max_rows, rows.size());
        if (rows.size() > opt.prune_threshold && !pending.empty()) {
            LinIneqSystem tmp(s.coords);
            tmp.eqs = s.eqs;
            for (const auto& r : rows) tmp.ineqs.push_back(r.row);
            // Keep row order so histories stay attached: test each row against the others.
            std::vector<char> alive(rows.size(), 1);
            std::vector<char> candidate(rows.size(), 1);
            auto z = detail::interior_point(tmp);
            if (z) {
                alive = detail::irredundant_rows(tmp, *z);
                std::fill(candidate.begin(), candidate.end(), 0);
            } else if (opt.jobs > 1) {
                parallel_for(rows.size(), opt.jobs, [&](std::size_t r) {
                    std::vector<std::size_t> use;
                    for (std::size_t i = 0; i < rows.size(); ++i)
                        if (i != r) use.push_back(i);
                    candidate[r] = detail::farkas(tmp, use, tmp.ineqs[r].a, tmp.ineqs[r].b);
                });
            }
            for (std::size_t r = rows.size(); r-- > 0;) {
                if (!candidate[r]) continue;
                std::vector<std::size_t> use;
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (i != r && alive[i]) use.push_back(i);
                if (detail::farkas(tmp, use, tmp.ineqs[r].a, tmp.ineqs[r].b)) alive[r] = 0;
            }
            // The history bounds only hold relative to the rows they were
            // derived from, so the pruned system starts afresh.
            std::vector<detail::FmRow> kept;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (alive[i]) kept.push_back(std::move(rows[i]));
            words = (kept.size() + 63) / 64;
            for (std::size_t i = 0; i < kept.size(); ++i) {
                kept[i].hist.assign(words, 0);
                kept[i].hist[i / 64] |= std::uint64_t{1} << (i % 64);
            }
            rows = std::move(kept);
            eliminated = 0;
            ++st.lp_prunes;
        }
        st.rows_after.push_back(rows.size());
        if (opt.on_step) opt.on_step(st);
    }
    s.ineqs.clear();
    for (auto& r : rows) s.ineqs.push_back(std::move(r.row));
    return finish(std::move(s));
}

/// Projection onto the listed coordinates (result uses `keep` order).
inline LinIneqSystem project(const LinIneqSystem& sys, const std::vector<std::string>& keep, FmOptions opt = {},
                             FmStats* stats = nullptr) {
    std::vector<std::string> drop;
    for (const auto& c : sys.coords)
        if (std::find(keep.begin(), keep.end(), c) == keep.end()) drop.push_back(c);
    for (const auto& c : keep) sys.index(c);
    return canonicalize(reexpress(fm_eliminate(sys, drop, opt, stats), keep));
}

/// Projection of the intersection of `parts` (all over the same coordinates)
/// onto `keep`. Coordinates used by a single part are eliminated inside that
/// part first, so the combined elimination only handles the shared ones.
inline LinIneqSystem project_intersection(const std::vector<LinIneqSystem>& parts, const std::vector<std::string>& keep,
                                          FmOptions opt = {}, FmStats* stats = nullptr) {
    if (parts.empty()) throw InconsistentInput("project_intersection needs at least one system");
    const auto& coords = parts[0].coords;
    std::vector<std::vector<char>> used(parts.size(), std::vector<char>(coords.size(), 0));
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].coords != coords) throw InconsistentInput("systems over different coordinates");
        for (const auto* block : {&parts[p].ineqs, &parts[p].eqs})
            for (const auto& r : *block)
                for (std::size_t k = 0; k < coords.size(); ++k)
                    if (!r.a[k].is_zero()) used[p][k] = 1;
    }
    std::vector<char> kept(coords.size(), 0);
    for (const auto& c : keep) kept[parts[0].index(c)] = 1;
    LinIneqSystem all(coords);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        std::vector<std::string> own;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (!used[p][k] || kept[k]) continue;
            bool shared = false;
            for (std::size_t q = 0; q < parts.size() && !shared; ++q) shared = q != p && used[q][k];
            if (!shared) own.push_back(coords[k]);
        }
        LinIneqSystem local = own.empty() ? parts[p] : reexpress(fm_eliminate(parts[p], own, opt), coords);
        if (local.infeasible) all.infeasible = true;
        all.ineqs.insert(all.ineqs.end(), local.ineqs.begin(), local.ineqs.end());
        all.eqs.insert(all.eqs.end(), local.eqs.begin(), local.eqs.end());
    }
    return project(all, keep, opt, stats);
}

/// Is `point` (over `keep`) in the projection of `sys` onto `keep`?  Decided
/// by the dual LP: no multipliers cancelling the other coordinates certify a
/// violated combination.
inline bool in_projection(const LinIneqSystem& sys, const std::vector<std::string>& keep, const RationalVector& point) {
    if (point.size() != keep.size()) throw InconsistentInput("point dimension does not match kept coordinates");
    if (sys.infeasible) return false;
    std::vector<std::int64_t> kpos(sys.dim(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) kpos[sys.index(keep[i])] = static_cast<std::int64_t>(i);
    std::vector<std::int64_t> rowmap(sys.dim(), -1);
    std::uint32_t m = 0;
    auto touch = [&](const Row& r) {
        for (std::size_t k = 0; k < sys.dim(); ++k)
            if (kpos[k] < 0 && !r.a[k].is_zero() && rowmap[k] < 0) rowmap[k] = m++;
    };
    for (const auto& r : sys.ineqs) touch(r);
    for (const auto& r : sys.eqs) touch(r);
    std::uint32_t norm = m++;
    lp::Problem p;
    p.rows = m;
    p.rhs.assign(m, Rational(0));
    p.rhs[norm] = Rational(1);
    auto add = [&](const Row& r, bool negate) {
        lp::SparseColumn c;
        Rational slack = -r.b;
        for (std::size_t k = 0; k < sys.dim(); ++k) {
            if (r.a[k].is_zero()) continue;
            if (kpos[k] >= 0)
                slack += r.a[k] * point[static_cast<std::size_t>(kpos[k])];
            else
                c.add(static_cast<std::uint32_t>(rowmap[k]), negate ? -r.a[k] : r.a[k]);
        }
        c.add(norm, Rational(1));
        p.add_column(std::move(c), negate ? -slack : slack);
    };
    for (const auto& r : sys.ineqs) add(r, false);
    for (const auto& r : sys.eqs) {
        add(r, false);
        add(r, true);
    }
    if (p.columns.empty()) return true;
    if (p.cost.size() < p.columns.size()) p.cost.resize(p.columns.size());
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::optimal) return true; // no certificate exists
    return sol.objective.sign() >= 0;
}

// ---------------------------------------------------------------------------
// Cones: rays

struct RayEnumeration {
    std::vector<RationalVector> rays;  // extreme rays modulo the lineality space, primitive integer
    std::vector<RationalVector> lines; // basis of the lineality space
};

namespace detail {

inline void primitive_direction(RationalVector& v) { make_primitive(v); }

inline void primitive_line(RationalVector& v) {
    make_primitive(v);
    for (auto& x : v)
        if (!x.is_zero()) {
            if (x.sign() < 0)
                for (auto& y : v) y = -y;
            break;
        }
}

} // namespace detail

/// Extreme rays of {x : A x >= 0, E x = 0} by incremental double description
/// with the combinatorial adjacency test.
enum class DdOrder {
    max_cutoff, // next row: the one violated by most current rays
    input,      // rows in the given order
};

inline RayEnumeration enumerate_rays(const LinIneqSystem& sys, std::size_t max_dim = 24,
                                     DdOrder order = DdOrder::max_cutoff) {
    if (!sys.homogeneous()) throw InconsistentInput("ray enumeration needs a homogeneous (cone) system");
    if (sys.dim() > max_dim)
        throw GuardExceeded("ray enumeration refused: " + std::to_string(sys.dim()) + " coordinates exceeds bound " +
                            std::to_string(max_dim));
    LinIneqSystem s = canonicalize(sys);
    std::size_t d = s.dim();
    std::vector<RationalVector> lines;
    for (std::size_t i = 0; i < d; ++i) {
        RationalVector e(d);
        e[i] = Rational(1);
        lines.push_back(std::move(e));
    }
    for (const auto& eq : s.eqs) {
        std::size_t pick = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (!dot(eq.a, lines[i]).is_zero()) {
                pick = i;
                break;
            }
        if (pick == lines.size()) continue;
        RationalVector l = lines[pick];
        Rational al = dot(eq.a, l);
        lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pick));
        for (auto& x : lines) {
            Rational f = dot(eq.a, x) / al;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j) x[j] -= f * l[j];
            detail::primitive_line(x);
        }
    }
    std::size_t rank_eq = d - lines.size();
    std::size_t m = s.ineqs.size();
    std::size_t words = (m + 63) / 64;
    struct Gen {
        RationalVector v;
        std::vector<std::uint64_t> z;   // processed inequalities tight at v
        std::vector<std::uint64_t> neg; // unprocessed inequalities violated by v
    };
    std::vector<Gen> rays;
    auto set_bit = [](std::vector<std::uint64_t>& z, std::size_t k) { z[k / 64] |= std::uint64_t{1} << (k % 64); };
    std::vector<char> done(m, 0);
    std::vector<std::size_t> neg_count(m, 0);
    auto classify = [&](Gen& g) {
        g.neg.assign(words, 0);
        if (order == DdOrder::input) return;
        for (std::size_t j = 0; j < m; ++j)
            if (!done[j] && dot(s.ineqs[j].a, g.v).sign() < 0) {
                set_bit(g.neg, j);
                ++neg_count[j];
            }
    };
    auto forget = [&](const Gen& g) {
        if (order == DdOrder::input) return;
        for (std::size_t j = 0; j < m; ++j)
            if (!done[j] && (g.neg[j / 64] >> (j % 64) & 1)) --neg_count[j];
    };
    // Rows cutting the lineality space go first. Max cutoff keeps the
    // intermediate cones of projected entropy cones small; for polars of
    // generator lists input order does better.
    auto next_row = [&]() {
        for (std::size_t k = 0; k < m; ++k) {
            if (done[k]) continue;
            for (const auto& l : lines)
                if (!dot(s.ineqs[k].a, l).is_zero()) return k;
        }
        std::size_t best = m;
        for (std::size_t k = 0; k < m; ++k) {
            if (order == DdOrder::input && !done[k]) return k;
            if (!done[k] && (best == m || neg_count[k] > neg_count[best])) best = k;
        }
        return best;
    };
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t k = next_row();
        done[k] = 1;
        const auto& a = s.ineqs[k].a;
        std::size_t pick = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (!dot(a, lines[i]).is_zero()) {
                pick = i;
                break;
            }
        if (pick < lines.size()) {
            RationalVector l = lines[pick];
            Rational al = dot(a, l);
            if (al.sign() < 0) {
                for (auto& x : l) x = -x;
                al = -al;
            }
            lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pick));
            auto reduce = [&](RationalVector& x) {
                Rational f = dot(a, x) / al;
                if (f.is_zero()) return;
                for (std::size_t j = 0; j < d; ++j) x[j] -= f * l[j];
            };
            for (auto& x : lines) {
                reduce(x);
                detail::primitive_line(x);
            }
            std::fill(neg_count.begin(), neg_count.end(), 0);
            for (auto& g : rays) {
                reduce(g.v);
                detail::primitive_direction(g.v);
                set_bit(g.z, k);
                classify(g);
            }
            Gen g{l, std::vector<std::uint64_t>(words, 0), {}};
            for (std::size_t j = 0; j < m; ++j)
                if (done[j] && j != k) set_bit(g.z, j);
            detail::primitive_direction(g.v);
            classify(g);
            rays.push_back(std::move(g));
            continue;
        }
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> P, N;
        std::vector<Gen> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i].sign() > 0) P.push_back(i);
            if (val[i].sign() < 0) N.push_back(i);
        }
        std::size_t need = d >= rank_eq + lines.size() + 2 ? d - rank_eq - lines.size() - 2 : 0;
        for (auto p : P)
            for (auto q : N) {
                std::vector<std::uint64_t> common(words);
                std::size_t cnt = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    common[w] = rays[p].z[w] & rays[q].z[w];
                    cnt += static_cast<std::size_t>(std::popcount(common[w]));
                }
                if (cnt < need) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (detail::hist_subset(common, rays[r].z)) adjacent = false;
                }
                if (!adjacent) continue;
                Gen g{RationalVector(d), common, {}};
                Rational fp = val[p], fq = -val[q];
                for (std::size_t j = 0; j < d; ++j) g.v[j] = fp * rays[q].v[j] + fq * rays[p].v[j];
                detail::primitive_direction(g.v);
                set_bit(g.z, k);
                classify(g);
                next.push_back(std::move(g));
            }
        std::vector<Gen> kept;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            int sg = val[i].sign();
            if (sg < 0) {
                forget(rays[i]);
                continue;
            }
            if (sg == 0) set_bit(rays[i].z, k);
            kept.push_back(std::move(rays[i]));
        }
        for (auto& g : next) kept.push_back(std::move(g));
        rays = std::move(kept);
    }
    RayEnumeration out;
    for (auto& g : rays) out.rays.push_back(std::move(g.v));
    std::sort(out.rays.begin(), out.rays.end(), [](const auto& x, const auto& y) {
        return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
    });
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    out.lines = std::move(lines);
    return out;
}

/// Cone {x : r·x >= 0 ... } generated as the set of nonnegative combinations
/// of `rays` plus any combination of `lines`, returned in H-form by
/// enumerating the rays of the polar cone.
inline LinIneqSystem cone_from_rays(const std::vector<std::string>& coords, const std::vector<RationalVector>& rays,
                                    const std::vector<RationalVector>& lines = {}, std::size_t max_dim = 24) {
    LinIneqSystem polar(coords);
    for (const auto& r : rays) polar.add_ineq(r);
    for (const auto& l : lines) polar.add_eq(l);
    auto dual = enumerate_rays(polar, max_dim, DdOrder::input);
    LinIneqSystem out(coords);
    for (const auto& r : dual.rays) out.add_ineq(r);
    for (const auto& l : dual.lines) out.add_eq(l);
    return canonicalize(out);
}

/// Direct exact evaluation of a ray against a cone system.
inline bool contains_ray(const LinIneqSystem& sys, const RationalVector& r) {
    if (!sys.homogeneous()) throw InconsistentInput("contains_ray needs a homogeneous (cone) system");
    if (r.size() != sys.dim()) throw InconsistentInput("ray dimension does not match coordinates");
    for (const auto& e : sys.eqs)
        if (!dot(e.a, r).is_zero()) return false;
    for (const auto& e : sys.ineqs)
        if (dot(e.a, r).sign() < 0) return false;
    return !sys.infeasible;
}

/// Is r a nonnegative combination of `rays` plus a combination of `lines`?
inline bool in_cone_hull(const std::vector<RationalVector>& rays, const RationalVector& r,
                         const std::vector<RationalVector>& lines = {}) {
    std::size_t d = r.size();
    lp::Problem p;
    p.rows = d;
    p.rhs = r;
    auto col = [&](const RationalVector& v, bool negate) {
        if (v.size() != d) throw InconsistentInput("generator dimension mismatch");
        lp::SparseColumn c;
        for (std::size_t k = 0; k < d; ++k) c.add(static_cast<std::uint32_t>(k), negate ? -v[k] : v[k]);
        return c;
    };
    for (const auto& v : rays) p.add_column(col(v, false));
    for (const auto& v : lines) {
        p.add_column(col(v, false));
        p.add_column(col(v, true));
    }
    return lp::solve(p).status == lp::Status::optimal;
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string format_lhs(const std::vector<std::string>& coords, const RationalVector& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        Rational c = a[i];
        if (s.empty()) {
            if (c.sign() < 0) s += "-";
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        s += c.abs().str() + "*" + coords[i];
    }
    return s.empty() ? "0" : s;
}

inline std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1]))) --e;
    return std::string(v.substr(b, e - b));
}

} // namespace detail

inline std::string format_row(const std::vector<std::string>& coords, const Row& r, bool equality) {
    return detail::format_lhs(coords, r.a) + (equality ? " = " : " >= ") + r.b.str();
}

/// One row per line: equalities, then inequalities.
inline std::string to_text(const LinIneqSystem& s) {
    std::string out;
    if (s.infeasible) return "0 >= 1\n";
    for (const auto& r : s.eqs) out += format_row(s.coords, r, true) + "\n";
    for (const auto& r : s.ineqs) out += format_row(s.coords, r, false) + "\n";
    return out;
}

/// Parses the text format over the given coordinates. Accepts ">=", "<=" and
/// "=", optional coefficients ("H(A)" means 1*H(A)), blank lines and '#' comments.
inline LinIneqSystem parse_text(const std::string& text, const std::vector<std::string>& coords) {
    LinIneqSystem s(coords);
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw InconsistentInput("line " + std::to_string(lineno) + ": " + why + ": " + t);
        };
        int depth = 0;
        std::size_t rel = std::string::npos, rel_len = 0;
        int kind = 0; // 1 >=, 2 <=, 3 =
        for (std::size_t i = 0; i < t.size(); ++i) {
            char c = t[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth != 0) continue;
            if ((c == '>' || c == '<') && i + 1 < t.size() && t[i + 1] == '=') {
                rel = i;
                rel_len = 2;
                kind = c == '>' ? 1 : 2;
                break;
            }
            if (c == '=') {
                rel = i;
                rel_len = 1;
                kind = 3;
                break;
            }
        }
        if (rel == std::string::npos) fail("missing relation");
        std::string lhs = t.substr(0, rel), rhs = detail::trim(std::string_view(t).substr(rel + rel_len));
        Row r{RationalVector(coords.size()), Rational(0)};
        try {
            r.b = Rational::parse(rhs);
        } catch (const std::exception&) {
            fail("bad right-hand side");
        }
        // split into signed terms at top-level + and -
        std::vector<std::pair<int, std::string>> terms;
        int sign = 1;
        std::string cur;
        depth = 0;
        auto flush = [&] {
            auto term = detail::trim(cur);
            if (!term.empty()) terms.emplace_back(sign, term);
            cur.clear();
        };
        for (char c : lhs) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && (c == '+' || c == '-')) {
                if (!detail::trim(cur).empty()) {
                    flush();
                    sign = c == '-' ? -1 : 1;
                } else if (c == '-') {
                    sign = -sign;
                }
                continue;
            }
            cur += c;
        }
        flush();
        for (const auto& [sg, term] : terms) {
            if (term == "0") continue;
            Rational coef(1);
            std::string label = term;
            auto star = term.find('*');
            if (star != std::string::npos) {
                try {
                    coef = Rational::parse(detail::trim(std::string_view(term).substr(0, star)));
                } catch (const std::exception&) {
                    fail("bad coefficient");
                }
                label = detail::trim(std::string_view(term).substr(star + 1));
            }
            auto idx = s.find(label);
            if (!idx) fail("unknown coordinate '" + label + "'");
            r.a[*idx] += sg > 0 ? coef : -coef;
        }
        if (kind == 2) {
            for (auto& x : r.a) x = -x;
            r.b = -r.b;
        }
        (kind == 3 ? s.eqs : s.ineqs).push_back(std::move(r));
    }
    return s;
}

/// Whether `sys` has a row equal to a·x >= b up to positive scaling.
inline bool has_inequality(const LinIneqSystem& sys, RationalVector a, Rational b = Rational(0)) {
    Row want{std::move(a), std::move(b)};
    detail::normalize_row(want);
    for (auto r : sys.ineqs) {
        detail::normalize_row(r);
        if (r == want) return true;
    }
    return false;
}

} // namespace adhesive
