#pragma once
// Random generators shared by the unit tests and the acceptance runner.

#include "adhesive/distributions.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/polyhedra.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace adhesive;

inline std::vector<NodeId> letters(std::size_t n) {
    std::vector<NodeId> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(std::string(1, char('A' + i)));
    return v;
}

/// Random rational joint with small integer weights; about a quarter of the
/// outcomes get weight zero so that 0/0 conventions are exercised.
inline ProbTable random_table(std::mt19937& rng, const std::vector<NodeId>& names, int card = 2) {
    std::vector<Variable> vars;
    std::size_t n = 1;
    for (const auto& x : names) {
        vars.push_back({x, card});
        n *= static_cast<std::size_t>(card);
    }
    std::vector<Rational> counts(n);
    bool any = false;
    for (auto& c : counts) {
        c = (rng() % 4 == 0) ? Rational(0) : Rational(static_cast<long long>(1 + rng() % 9));
        any = any || !c.is_zero();
    }
    if (!any) counts[0] = Rational(1);
    return ProbTable::from_counts(vars, counts);
}

inline Graph random_graph(std::mt19937& rng, const std::vector<NodeId>& names, double p) {
    Graph g{Universe(names)};
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

/// Clique hypergraph of a minimal triangulation of a random graph: acyclic.
inline Hypergraph random_acyclic(std::mt19937& rng, const std::vector<NodeId>& names) {
    Graph g = random_graph(rng, names, 0.5);
    return maximal_cliques_chordal(minimal_triangulation(g));
}

/// Random DAG on `names` (arcs follow a random topological order).
inline Digraph random_dag(std::mt19937& rng, const std::vector<NodeId>& names, double p) {
    Digraph d{Universe(names)};
    std::vector<std::size_t> perm(names.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (coin(rng)) d.add_arc(perm[i], perm[j]);
    return d;
}

inline std::vector<std::string> xs(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

/// Random system whose solution set contains the origin.
inline LinIneqSystem random_system(std::mt19937& rng, std::size_t d, std::size_t rows, bool homogeneous = false) {
    LinIneqSystem s(xs(d));
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        RationalVector a(d);
        for (auto& x : a) x = Rational(coef(rng));
        s.add_ineq(a, homogeneous ? Rational(0) : Rational(rhs(rng)));
    }
    return s;
}

inline RationalVector random_point(std::mt19937& rng, std::size_t d, int range = 3) {
    std::uniform_int_distribution<int> c(-range * 2, range * 2);
    RationalVector p(d);
    for (auto& x : p) x = Rational(c(rng), 2);
    return p;
}

// Primal feasibility of {z : A_drop z >= b - A_keep y, E_drop z = f - E_keep y}
// as a standalone LP (free variables split into positive parts).
inline bool has_preimage(const LinIneqSystem& s, std::size_t keep, const RationalVector& y) {
    std::size_t d = s.dim(), nz = d - keep;
    lp::Problem p;
    p.rows = s.ineqs.size() + s.eqs.size();
    p.rhs.assign(p.rows, Rational(0));
    std::vector<lp::SparseColumn> cols(2 * nz + s.ineqs.size());
    std::uint32_t row = 0;
    auto fill = [&](const Row& r, bool ineq) {
        Rational rhs = r.b;
        for (std::size_t k = 0; k < keep; ++k) rhs -= r.a[k] * y[k];
        p.rhs[row] = rhs;
        for (std::size_t k = 0; k < nz; ++k) {
            cols[2 * k].add(row, r.a[keep + k]);
            cols[2 * k + 1].add(row, -r.a[keep + k]);
        }
        if (ineq) cols[2 * nz + row].add(row, Rational(-1));
        ++row;
    };
    for (const auto& r : s.ineqs) fill(r, true);
    for (const auto& r : s.eqs) fill(r, false);
    for (auto& c : cols) p.add_column(std::move(c));
    return lp::solve(p).status == lp::Status::optimal;
}

} // namespace testing_support
