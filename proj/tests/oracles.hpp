#pragma once
// Independent brute-force oracles used by tests and the acceptance runner.
// They share only Rational with the library.

#include "adhesive/rational.hpp"

#include <algorithm>
#include <vector>

namespace oracles {

using adhesive::Rational;
using adhesive::RationalVector;
using Matrix = std::vector<RationalVector>;

/// Basis of {x : M x = 0} by Gauss-Jordan elimination.
inline Matrix nullspace(Matrix m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = Rational(1) / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    Matrix out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        RationalVector v(cols);
        v[free] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

inline std::size_t rank(const Matrix& m, std::size_t cols) { return cols - nullspace(m, cols).size(); }

struct Facet {
    RationalVector a; // a·x >= b
    Rational b;
    friend bool operator==(const Facet&, const Facet&) = default;
};

/// Facets of the convex hull of full-dimensional points in R^d, found by
/// trying every d-subset of points as a supporting hyperplane.
inline std::vector<Facet> hull_facets(const std::vector<RationalVector>& pts) {
    std::size_t d = pts.at(0).size(), n = pts.size();
    std::vector<Facet> out;
    std::vector<char> pick(n, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(d), pick.end(), 1);
    do {
        Matrix m;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) {
                RationalVector row = pts[i];
                row.push_back(Rational(-1));
                m.push_back(std::move(row));
            }
        auto ns = nullspace(m, d + 1);
        if (ns.size() != 1) continue;
        RationalVector a(ns[0].begin(), ns[0].begin() + static_cast<std::ptrdiff_t>(d));
        Rational b = ns[0][d];
        bool zero = std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
        if (zero) continue;
        int side = 0;
        bool ok = true;
        for (const auto& p : pts) {
            int s = (adhesive::dot(a, p) - b).sign();
            if (s == 0) continue;
            if (side == 0) side = s;
            if (s != side) {
                ok = false;
                break;
            }
        }
        if (!ok || side == 0) continue;
        if (side < 0) {
            for (auto& x : a) x = -x;
            b = -b;
        }
        RationalVector v = a;
        v.push_back(b);
        adhesive::make_primitive(v); // keeps the sign
        Facet f{RationalVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d)), v[d]};
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
}

} // namespace oracles
