#include "adhesive/polyhedra.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace adhesive;
using testing_support::has_preimage;
using testing_support::random_point;
using testing_support::random_system;
using testing_support::xs;

namespace {

RationalVector ints(std::initializer_list<long long> v) {
    RationalVector out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST(Lp, SmallOptimumAndStatuses) {
    // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    lp::Problem p;
    p.rows = 2;
    p.rhs = ints({4, 6});
    lp::SparseColumn x, y, s1, s2;
    x.add(0, Rational(1)), x.add(1, Rational(3));
    y.add(0, Rational(2)), y.add(1, Rational(1));
    s1.add(0, Rational(1));
    s2.add(1, Rational(1));
    p.add_column(x, Rational(-1));
    p.add_column(y, Rational(-1));
    p.add_column(s1);
    p.add_column(s2);
    auto sol = lp::solve(p);
    ASSERT_EQ(sol.status, lp::Status::optimal);
    EXPECT_EQ(sol.objective, Rational(-14, 5));
    EXPECT_EQ(sol.x[0], Rational(8, 5));
    EXPECT_EQ(sol.x[1], Rational(6, 5));

    lp::Problem inf;
    inf.rows = 1;
    inf.rhs = ints({-1});
    lp::SparseColumn c;
    c.add(0, Rational(1));
    inf.add_column(c);
    EXPECT_EQ(lp::solve(inf).status, lp::Status::infeasible);

    lp::Problem unb;
    unb.rows = 1;
    unb.rhs = ints({1});
    lp::SparseColumn u, v;
    u.add(0, Rational(1));
    v.add(0, Rational(-1));
    unb.add_column(u);
    unb.add_column(v, Rational(-1));
    EXPECT_EQ(lp::solve(unb).status, lp::Status::unbounded);
}

TEST(Lp, StrongDualityOnRandomProblems) {
    // primal: min c x, A x >= b, x >= 0 ; dual: max b y, A^T y <= c, y >= 0
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> v(-4, 4), pos(0, 5);
    int optimal = 0;
    for (int it = 0; it < 300; ++it) {
        std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
        std::vector<RationalVector> A(m, RationalVector(n));
        RationalVector b(m), c(n);
        for (auto& row : A)
            for (auto& x : row) x = Rational(v(rng));
        for (auto& x : b) x = Rational(v(rng));
        for (auto& x : c) x = Rational(pos(rng));
        lp::Problem P;
        P.rows = m;
        P.rhs = b;
        for (std::size_t j = 0; j < n; ++j) {
            lp::SparseColumn col;
            for (std::size_t i = 0; i < m; ++i) col.add(static_cast<std::uint32_t>(i), A[i][j]);
            P.add_column(col, c[j]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            lp::SparseColumn s;
            s.add(static_cast<std::uint32_t>(i), Rational(-1));
            P.add_column(s, Rational(0));
        }
        lp::Problem D; // min -b y, A^T y + t = c
        D.rows = n;
        D.rhs = c;
        for (std::size_t i = 0; i < m; ++i) {
            lp::SparseColumn col;
            for (std::size_t j = 0; j < n; ++j) col.add(static_cast<std::uint32_t>(j), A[i][j]);
            D.add_column(col, -b[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            lp::SparseColumn s;
            s.add(static_cast<std::uint32_t>(j), Rational(1));
            D.add_column(s, Rational(0));
        }
        auto ps = lp::solve(P), ds = lp::solve(D);
        // c >= 0 makes the primal bounded below and the dual feasible (y = 0).
        ASSERT_NE(ps.status, lp::Status::unbounded);
        ASSERT_NE(ds.status, lp::Status::infeasible);
        if (ps.status == lp::Status::optimal) {
            ++optimal;
            ASSERT_EQ(ds.status, lp::Status::optimal);
            EXPECT_EQ(ps.objective, -ds.objective);
            for (std::size_t i = 0; i < m; ++i) {
                Rational lhs;
                for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * ps.x[j];
                EXPECT_GE(lhs, b[i]);
            }
        } else {
            EXPECT_EQ(ds.status, lp::Status::unbounded);
        }
    }
    EXPECT_GT(optimal, 50);
}

TEST(Canonical, NormalisesAndMergesRows) {
    LinIneqSystem s(xs(2));
    s.add_ineq(ints({2, 4}), Rational(1));
    s.add_ineq(ints({1, 2}), Rational(1));
    s.add_ineq(ints({0, 0}), Rational(-1));
    s.add_eq(ints({0, 2}), Rational(2));
    auto c = canonicalize(s);
    ASSERT_EQ(c.eqs.size(), 1u);
    EXPECT_EQ(c.eqs[0].a, ints({0, 1}));
    EXPECT_EQ(c.eqs[0].b, Rational(1));
    ASSERT_EQ(c.ineqs.size(), 1u); // x + 2y >= 1 with y = 1 gives x >= -1
    EXPECT_EQ(c.ineqs[0].a, ints({1, 0}));
    EXPECT_EQ(c.ineqs[0].b, Rational(-1));
    LinIneqSystem bad(xs(1));
    bad.add_ineq(ints({0}), Rational(1));
    EXPECT_TRUE(canonicalize(bad).infeasible);
}

TEST(Redundancy, DominatedRowAndImplicitEquality) {
    LinIneqSystem s(xs(1));
    s.add_ineq(ints({1}), Rational(0));
    s.add_ineq(ints({1}), Rational(-1));
    auto r = lp_remove_redundant(s);
    ASSERT_EQ(r.ineqs.size(), 1u);
    EXPECT_EQ(r.ineqs[0].b, Rational(0));

    LinIneqSystem t(xs(1));
    t.add_ineq(ints({1}));
    t.add_ineq(ints({-1}));
    auto e = lp_remove_redundant(t);
    EXPECT_TRUE(e.ineqs.empty());
    ASSERT_EQ(e.eqs.size(), 1u);
    EXPECT_EQ(e.eqs[0].a, ints({1}));

    LinIneqSystem u(xs(2));
    u.add_ineq(ints({1, 0}), Rational(1));
    u.add_ineq(ints({-1, 0}), Rational(0));
    auto f = lp_remove_redundant(u);
    EXPECT_TRUE(f.infeasible);
    EXPECT_FALSE(is_feasible(u));
}

TEST(Redundancy, PreservesSolutionSetOnRandomProbes) {
    std::mt19937 rng(23);
    int probes = 0;
    for (int it = 0; it < 120; ++it) {
        std::size_t d = 1 + rng() % 4;
        auto s = random_system(rng, d, 2 + rng() % 8);
        auto r = lp_remove_redundant(s, {true, it % 2 ? 2u : 1u});
        for (int q = 0; q < 10; ++q) {
            auto p = random_point(rng, d);
            EXPECT_EQ(satisfies(s, p), satisfies(r, p));
            ++probes;
        }
        // Irredundant: no kept inequality follows from the rest.
        for (std::size_t i = 0; i < r.ineqs.size(); ++i) {
            LinIneqSystem rest = r;
            rest.ineqs.erase(rest.ineqs.begin() + static_cast<std::ptrdiff_t>(i));
            EXPECT_FALSE(implies(rest, r.ineqs[i].a, r.ineqs[i].b));
        }
        EXPECT_TRUE(equivalent(s, r));
    }
    EXPECT_GE(probes, 1000);
}

TEST(FourierMotzkin, IntervalShadow) {
    LinIneqSystem s({"x", "y"});
    s.add_ineq(ints({1, 0}));
    s.add_ineq(ints({0, 1}));
    s.add_ineq(ints({-1, -1}), Rational(-1));
    auto p = fm_eliminate(s, {"y"});
    EXPECT_EQ(p.coords, (std::vector<std::string>{"x"}));
    EXPECT_EQ(to_text(p), "1*x >= 0\n-1*x >= -1\n");
    auto same = fm_eliminate(s, {});
    EXPECT_TRUE(equivalent(same, s));
    EXPECT_THROW(fm_eliminate(s, {"z"}), InconsistentInput);
}

TEST(FourierMotzkin, EqualitiesSubstitutedFirst) {
    LinIneqSystem s({"x", "y", "z"});
    s.add_eq(ints({1, 1, -1}));       // z = x + y
    s.add_ineq(ints({0, 0, -1}), Rational(-2)); // z <= 2
    s.add_ineq(ints({1, 0, 0}));
    s.add_ineq(ints({0, 1, 0}));
    FmStats st;
    auto p = fm_eliminate(s, {"z"}, {}, &st);
    EXPECT_EQ(st.substituted, (std::vector<std::string>{"z"}));
    EXPECT_TRUE(st.order.empty());
    EXPECT_EQ(to_text(p), "1*x >= 0\n-1*x - 1*y >= -2\n1*y >= 0\n");
}

TEST(FourierMotzkin, MatchesLiftedFeasibilityOnRandomSystems) {
    std::mt19937 rng(31);
    int agree = 0;
    for (int it = 0; it < 150; ++it) {
        std::size_t d = 2 + rng() % 4, keep = 1 + rng() % (d - 1);
        auto s = random_system(rng, d, 3 + rng() % 7);
        if (rng() % 3 == 0) {
            RationalVector e(d);
            for (auto& x : e) x = Rational(static_cast<int>(rng() % 5) - 2);
            s.add_eq(e);
        }
        std::vector<std::string> drop(s.coords.begin() + static_cast<std::ptrdiff_t>(keep), s.coords.end());
        FmOptions opt;
        opt.prune_threshold = it % 2 ? 4 : 2000; // exercise intermediate pruning too
        auto p = fm_eliminate(s, drop, opt);
        std::vector<std::string> kept(s.coords.begin(), s.coords.begin() + static_cast<std::ptrdiff_t>(keep));
        for (int q = 0; q < 12; ++q) {
            auto y = random_point(rng, keep);
            bool pre = has_preimage(s, keep, y);
            EXPECT_EQ(satisfies(p, y), pre) << to_text(s) << "--\n" << to_text(p);
            EXPECT_EQ(in_projection(s, kept, y), pre);
            ++agree;
        }
    }
    EXPECT_GE(agree, 1000);
}

TEST(Rays, OrthantAndShannonTwoVariables) {
    LinIneqSystem q({"x", "y"});
    q.add_ineq(ints({1, 0}));
    q.add_ineq(ints({0, 1}));
    auto r = enumerate_rays(q);
    EXPECT_EQ(r.rays, (std::vector<RationalVector>{ints({1, 0}), ints({0, 1})}));
    EXPECT_TRUE(r.lines.empty());

    // coords H(A), H(B), H(A,B): H(AB) >= H(A), H(AB) >= H(B), H(A)+H(B) >= H(AB)
    LinIneqSystem sh({"H(A)", "H(B)", "H(A,B)"});
    sh.add_ineq(ints({-1, 0, 1}));
    sh.add_ineq(ints({0, -1, 1}));
    sh.add_ineq(ints({1, 1, -1}));
    auto s = enumerate_rays(sh);
    ASSERT_EQ(s.rays.size(), 3u);
    for (auto want : {ints({1, 0, 1}), ints({0, 1, 1}), ints({1, 1, 1})})
        EXPECT_NE(std::find(s.rays.begin(), s.rays.end(), want), s.rays.end());
    for (const auto& ray : s.rays) EXPECT_TRUE(contains_ray(sh, ray));
    RationalVector neg = s.rays[0];
    for (auto& x : neg) x = -x;
    EXPECT_FALSE(contains_ray(sh, neg));
    EXPECT_TRUE(in_cone_hull(s.rays, ints({2, 1, 2})));
    EXPECT_FALSE(in_cone_hull(s.rays, ints({1, 1, 3})));

    LinIneqSystem half({"x", "y"});
    half.add_ineq(ints({1, 0}));
    auto h = enumerate_rays(half);
    EXPECT_EQ(h.rays.size(), 1u);
    EXPECT_EQ(h.lines.size(), 1u);
    LinIneqSystem affine({"x"});
    affine.add_ineq(ints({1}), Rational(1));
    EXPECT_THROW(enumerate_rays(affine), InconsistentInput);
    EXPECT_THROW(enumerate_rays(LinIneqSystem(xs(25))), GuardExceeded);
}

TEST(Rays, DoubleDescriptionRoundTrips) {
    std::mt19937 rng(41);
    for (int it = 0; it < 80; ++it) {
        std::size_t d = 2 + rng() % 9;
        auto s = random_system(rng, d, 2 + rng() % 8, true);
        for (std::size_t k = 0; k < d; ++k) {
            RationalVector e(d);
            e[k] = Rational(1);
            if (rng() % 2) s.add_ineq(e);
        }
        auto r = enumerate_rays(s);
        for (const auto& v : r.rays) EXPECT_TRUE(contains_ray(s, v));
        auto back = cone_from_rays(s.coords, r.rays, r.lines);
        EXPECT_TRUE(equivalent(s, back)) << to_text(s) << "--\n" << to_text(back);
        // extreme rays of the regenerated cone are the same set
        auto again = enumerate_rays(back);
        EXPECT_EQ(again.rays, r.rays);
    }
}

TEST(TextFormat, RoundTripAndParsing) {
    std::vector<std::string> c{"H(A)", "H(B)", "H(A,B)", "p(A1=0,B1=1)"};
    auto s = parse_text("# comment\nH(A) + 1*H(B) - H(A,B) >= 0\n-1/2*p(A1=0,B1=1) <= 3\nH(A) - H(B) = 0\n", c);
    ASSERT_EQ(s.ineqs.size(), 2u);
    ASSERT_EQ(s.eqs.size(), 1u);
    EXPECT_EQ(format_row(c, s.ineqs[1], false), "1/2*p(A1=0,B1=1) >= -3");
    auto t = parse_text(to_text(s), c);
    EXPECT_EQ(canonicalize(t), canonicalize(s));
    EXPECT_THROW(parse_text("H(C) >= 0\n", c), InconsistentInput);
    EXPECT_THROW(parse_text("H(A)\n", c), InconsistentInput);
    EXPECT_TRUE(has_inequality(s, ints({2, 2, -2, 0})));
}

TEST(Intersect, WithItselfAndMismatch) {
    std::mt19937 rng(2);
    auto s = random_system(rng, 3, 6);
    auto r = lp_remove_redundant(s);
    EXPECT_EQ(intersect({s, s}), r);
    EXPECT_THROW(intersect({s, LinIneqSystem(xs(2))}), InconsistentInput);
}

TEST(Lp, DualCertificates) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> v(-3, 3);
    int optimal = 0, infeasible = 0;
    for (int it = 0; it < 300; ++it) {
        std::size_t m = 1 + rng() % 4, n = 1 + rng() % 6;
        lp::Problem p;
        p.rows = m;
        p.rhs.resize(m);
        for (auto& x : p.rhs) x = Rational(v(rng));
        for (std::size_t j = 0; j < n; ++j) {
            lp::SparseColumn c;
            for (std::size_t i = 0; i < m; ++i) c.add(static_cast<std::uint32_t>(i), Rational(v(rng)));
            p.add_column(std::move(c), Rational(1 + static_cast<int>(rng() % 3)));
        }
        auto s = lp::solve(p);
        if (s.status == lp::Status::unbounded) continue;
        ASSERT_EQ(s.y.size(), m);
        Rational yb;
        for (std::size_t i = 0; i < m; ++i) yb += s.y[i] * p.rhs[i];
        for (std::size_t j = 0; j < n; ++j) {
            Rational ya;
            for (const auto& [r, a] : p.columns[j].entries) ya += s.y[r] * a;
            if (s.status == lp::Status::optimal)
                EXPECT_GE(p.cost[j] - ya, Rational(0));
            else
                EXPECT_LE(ya, Rational(0));
        }
        if (s.status == lp::Status::optimal) {
            EXPECT_EQ(yb, s.objective);
            ++optimal;
        } else {
            EXPECT_GT(yb, Rational(0));
            ++infeasible;
        }
    }
    EXPECT_GT(optimal, 30);
    EXPECT_GT(infeasible, 30);
}

TEST(Redundancy, ManyRowsInFewDimensions) {
    std::mt19937 rng(43);
    for (int it = 0; it < 20; ++it) {
        std::size_t d = 3 + rng() % 3;
        auto s = random_system(rng, d, 40 + rng() % 40, it % 2 == 0);
        auto r = lp_remove_redundant(s);
        EXPECT_TRUE(equivalent(s, r));
        for (std::size_t i = 0; i < r.ineqs.size(); ++i) {
            LinIneqSystem rest = r;
            rest.ineqs.erase(rest.ineqs.begin() + static_cast<std::ptrdiff_t>(i));
            EXPECT_FALSE(implies(rest, r.ineqs[i].a, r.ineqs[i].b));
        }
    }
}

TEST(FourierMotzkin, ProjectIntersectionMatchesPlainProjection) {
    std::mt19937 rng(47);
    for (int it = 0; it < 40; ++it) {
        // x0,x1 kept; x2 shared; x3 private to the first part, x4 to the second.
        auto a = random_system(rng, 5, 4 + rng() % 4);
        auto b = random_system(rng, 5, 4 + rng() % 4);
        for (auto& r : a.ineqs) r.a[4] = Rational(0);
        for (auto& r : b.ineqs) r.a[3] = Rational(0);
        LinIneqSystem both(a.coords);
        both.ineqs = a.ineqs;
        both.ineqs.insert(both.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
        std::vector<std::string> keep{"x0", "x1"};
        auto direct = project(both, keep);
        auto split = project_intersection({a, b}, keep);
        EXPECT_TRUE(equivalent(direct, split)) << to_text(both);
    }
    EXPECT_THROW(project_intersection({}, {"x0"}), InconsistentInput);
}
