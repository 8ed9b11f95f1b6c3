#include "adhesive/corr_polytope.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace adhesive;

namespace {

Hypergraph chsh() { return Hypergraph(EdgeList{{"A1", "B1"}, {"A1", "B2"}, {"A2", "B1"}, {"A2", "B2"}}); }

// Affine hull of the deterministic points, as equalities over the observable coordinates.
LinIneqSystem affine_hull(const std::vector<std::string>& coords, const std::vector<RationalVector>& pts) {
    oracles::Matrix m;
    for (const auto& p : pts) {
        RationalVector row = p;
        row.push_back(Rational(-1));
        m.push_back(std::move(row));
    }
    LinIneqSystem s(coords);
    for (auto& v : oracles::nullspace(m, coords.size() + 1)) {
        Rational b = v.back();
        v.pop_back();
        s.add_eq(std::move(v), b);
    }
    return s;
}

std::size_t affine_dim(const LinIneqSystem& s) {
    oracles::Matrix m;
    for (const auto& r : s.eqs) m.push_back(r.a);
    return s.dim() - oracles::rank(m, s.dim());
}

} // namespace

TEST(SimplexSystem, RowsAndLabels) {
    auto s = simplex_system({"B", "A"}, {});
    EXPECT_EQ(s.coords, (std::vector<std::string>{"p(A=0,B=0)", "p(A=0,B=1)", "p(A=1,B=0)", "p(A=1,B=1)"}));
    EXPECT_EQ(s.ineqs.size(), 4u);
    EXPECT_EQ(s.eqs.size(), 1u);
    EXPECT_EQ(to_text(simplex_system({"X"}, {})), "1*p(X=0) + 1*p(X=1) = 1\n1*p(X=0) >= 0\n1*p(X=1) >= 0\n");
    EXPECT_EQ(simplex_system({"A1", "A2", "B1", "B2"}, {}).dim(), 16u);
    EXPECT_EQ(simplex_system({"T"}, {{"T", 3}}).dim(), 3u);
    EXPECT_THROW(simplex_system({"A", "B"}, {{"A", 100}, {"B", 100}}), GuardExceeded);
}

TEST(MarginalMap, SumsConsistentJointOutcomes) {
    Hypergraph m(EdgeList{{"A1", "B1"}});
    auto s = marginal_map({"A1", "A2", "B1", "B2"}, m, {});
    ASSERT_EQ(s.eqs.size(), 4u);
    const auto& r = s.eqs[0]; // p(A1=0,B1=0)
    EXPECT_EQ(r.a[s.index("p(A1=0,B1=0)")], Rational(1));
    int summed = 0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (r.a[i] == Rational(-1)) ++summed;
    EXPECT_EQ(summed, 4);
    EXPECT_EQ(r.a[s.index("p(A1=0,A2=1,B1=0,B2=1)")], Rational(-1));
    EXPECT_EQ(r.a[s.index("p(A1=1,A2=0,B1=0,B2=0)")], Rational(0));

    Hypergraph full(EdgeList{{"A", "B"}});
    EXPECT_TRUE(marginal_map({"A", "B"}, full, {}).eqs.empty());
}

TEST(BellProject, ChshMatchesHullOracle) {
    // Oracle in correlator space: 16 deterministic points, facets by brute force.
    std::vector<RationalVector> pts;
    for (int a1 : {1, -1})
        for (int a2 : {1, -1})
            for (int b1 : {1, -1})
                for (int b2 : {1, -1})
                    pts.push_back({Rational(a1), Rational(a2), Rational(b1), Rational(b2), Rational(a1 * b1),
                                   Rational(a1 * b2), Rational(a2 * b1), Rational(a2 * b2)});
    auto facets = oracles::hull_facets(pts);
    ASSERT_EQ(facets.size(), 24u);

    auto m = chsh();
    auto coords = observable_coords(m, {});
    auto det = deterministic_points(m, {});
    ASSERT_EQ(det.size(), 16u);
    // Correlators as linear functions of the observable probabilities.
    LinIneqSystem probe(coords);
    auto corr = [&](const std::vector<std::string>& labels, const std::vector<std::vector<int>>& outcomes,
                    const std::vector<int>& take) {
        RationalVector v(coords.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            int sign = 1;
            for (auto t : take)
                if (outcomes[j][static_cast<std::size_t>(t)] == 1) sign = -sign;
            v[probe.index(labels[j])] += Rational(sign);
        }
        return v;
    };
    auto blocks = observable_blocks(m, {});
    // blocks: A1B1, A1B2, A2B1, A2B2
    std::vector<RationalVector> basis{
        corr(blocks[0].labels, blocks[0].outcomes, {0}), corr(blocks[2].labels, blocks[2].outcomes, {0}),
        corr(blocks[0].labels, blocks[0].outcomes, {1}), corr(blocks[1].labels, blocks[1].outcomes, {1}),
        corr(blocks[0].labels, blocks[0].outcomes, {0, 1}), corr(blocks[1].labels, blocks[1].outcomes, {0, 1}),
        corr(blocks[2].labels, blocks[2].outcomes, {0, 1}), corr(blocks[3].labels, blocks[3].outcomes, {0, 1})};
    LinIneqSystem oracle = affine_hull(coords, det);
    for (const auto& f : facets) {
        RationalVector a(coords.size());
        for (std::size_t k = 0; k < 8; ++k)
            for (std::size_t i = 0; i < coords.size(); ++i) a[i] += f.a[k] * basis[k][i];
        oracle.add_ineq(std::move(a), f.b);
    }

    for (auto mode : {BellMode::direct, BellMode::via_triangulation}) {
        BellOptions opt;
        opt.mode = mode;
        auto res = bell_project(m, {}, opt);
        const auto& s = res.system;
        EXPECT_EQ(s.ineqs.size(), 24u);
        EXPECT_EQ(nontrivial_facets(s).size(), 8u);
        EXPECT_TRUE(equivalent(s, oracle));
        for (const auto& r : s.ineqs) {
            std::size_t tight = 0;
            for (const auto& p : det) {
                auto v = dot(r.a, p) - r.b;
                EXPECT_GE(v.sign(), 0);
                tight += v.is_zero();
            }
            EXPECT_GE(tight, affine_dim(s));
        }
    }
}

TEST(BellProject, CorrelatorPresentation) {
    auto res = bell_project(chsh(), {});
    auto c = to_correlators(res.system, chsh());
    EXPECT_TRUE(c.eqs.empty());
    EXPECT_EQ(c.ineqs.size(), 24u);
    auto a = c.vec({{"E[A1,B1]", 1}, {"E[A1,B2]", 1}, {"E[A2,B1]", 1}, {"E[A2,B2]", -1}});
    EXPECT_TRUE(has_inequality(c, a, Rational(-2)));
    for (auto& x : a) x = -x;
    EXPECT_TRUE(has_inequality(c, a, Rational(-2)));
}

TEST(BellProject, SingleEdgeGivesItsSimplex) {
    Hypergraph m(EdgeList{{"A", "B"}});
    for (auto mode : {BellMode::direct, BellMode::via_triangulation}) {
        BellOptions opt;
        opt.mode = mode;
        auto s = bell_project(m, {{"B", 3}}, opt).system;
        EXPECT_TRUE(equivalent(s, simplex_system({"A", "B"}, {{"B", 3}})));
        EXPECT_EQ(s.ineqs.size(), 6u);
    }
}

TEST(BellProject, AcyclicScenarioHasOnlyTrivialFacets) {
    Hypergraph m1(EdgeList{{"A", "B"}, {"B", "D"}, {"B", "C"}});
    for (auto mode : {BellMode::direct, BellMode::via_triangulation}) {
        BellOptions opt;
        opt.mode = mode;
        auto s = bell_project(m1, {}, opt).system;
        EXPECT_TRUE(nontrivial_facets(s).empty());
        // Consistency only: the simplices of the edges with shared marginals agree.
        LinIneqSystem local(s.coords);
        for (const auto& b : observable_blocks(m1, {})) {
            RationalVector norm(s.dim());
            for (const auto& l : b.labels) {
                RationalVector a(s.dim());
                a[s.index(l)] = Rational(1);
                norm[s.index(l)] = Rational(1);
                local.add_ineq(std::move(a));
            }
            local.add_eq(std::move(norm), Rational(1));
        }
        auto blocks = observable_blocks(m1, {});
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j) detail::add_coupling_rows(local, blocks[i], blocks[j], {});
        EXPECT_TRUE(equivalent(s, local));
    }
}

TEST(BellProject, ModesAgreeOnRandomScenarios) {
    std::mt19937 rng(17);
    int checked = 0;
    for (int it = 0; it < 40 && checked < 12; ++it) {
        std::size_t n = 3 + it % 3;
        auto names = testing_support::letters(n);
        EdgeList edges;
        std::size_t count = 2 + rng() % 3;
        for (std::size_t e = 0; e < count; ++e) {
            std::vector<NodeId> edge;
            for (const auto& x : names)
                if (rng() % 2) edge.push_back(x);
            if (edge.size() >= 2 && edge.size() <= 3) edges.push_back(edge);
        }
        if (edges.size() < 2) continue;
        Hypergraph m(edges);
        BellOptions d, t;
        d.mode = BellMode::direct;
        t.mode = BellMode::via_triangulation;
        auto sd = bell_project(m, {}, d).system;
        auto st = bell_project(m, {}, t).system;
        EXPECT_TRUE(equivalent(sd, st)) << m.str();
        for (const auto& p : deterministic_points(m, {})) EXPECT_TRUE(satisfies(sd, p));
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(BellProject, ExplicitTriangulationMustExtendScenario) {
    BellOptions opt;
    opt.triangulation = Hypergraph(EdgeList{{"A1", "A2", "B1"}, {"A1", "A2", "B2"}});
    auto s = bell_project(chsh(), {}, opt).system;
    EXPECT_EQ(nontrivial_facets(s).size(), 8u);
    opt.triangulation = Hypergraph(EdgeList{{"A1", "B1"}, {"A2", "B2"}});
    EXPECT_THROW(bell_project(chsh(), {}, opt), InconsistentInput);
}
