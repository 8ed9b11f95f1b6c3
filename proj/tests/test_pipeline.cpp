#include "adhesive/catalog.hpp"
#include "adhesive/distributions.hpp"
#include "adhesive/pipeline.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace adhesive;

namespace {

bool has_statement(const CiSet& s, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                   const std::vector<NodeId>& c) {
    return s.contains(ci(s.universe(), a, b, c));
}

bool has_witness(const std::vector<CiStatement>& w, const Universe& u, const std::vector<NodeId>& a,
                 const std::vector<NodeId>& b, const std::vector<NodeId>& c) {
    auto s = ci(u, a, b, c);
    return std::find(w.begin(), w.end(), s) != w.end();
}

// Entropies (bits) of a table, keyed by coordinate label.
std::map<std::string, double> entropies(const ProbTable& p) {
    Universe u(p.names());
    EntropySpace sp(u);
    auto x = sp.point(p);
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < x.size(); ++i) out[sp.coords()[i]] = x[i];
    return out;
}

double worst_row(const LinIneqSystem& s, const std::map<std::string, double>& h) {
    double worst = 0;
    auto value = [&](const Row& r) {
        double v = -r.b.to_double();
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (!r.a[i].is_zero()) v += r.a[i].to_double() * h.at(s.coords[i]);
        return v;
    };
    for (const auto& r : s.ineqs) worst = std::min(worst, value(r));
    for (const auto& r : s.eqs) worst = std::min(worst, -std::abs(value(r)));
    return worst;
}

} // namespace

TEST(Triangulate, ChshHasTwoWithSettingIndependences) {
    auto tl = triangulate_scenario(catalog::chsh());
    ASSERT_EQ(tl.items.size(), 2u);
    EXPECT_FALSE(tl.truncated);
    int b_sep = 0, a_sep = 0;
    for (const auto& t : tl.items) {
        EXPECT_EQ(t.cliques.size(), 2u);
        EXPECT_EQ(t.fill.size(), 1u);
        b_sep += has_statement(t.ci, {"B1"}, {"B2"}, {"A1", "A2"});
        a_sep += has_statement(t.ci, {"A1"}, {"A2"}, {"B1", "B2"});
        EXPECT_NE(has_statement(t.ci, {"B1"}, {"B2"}, {"A1", "A2"}), has_statement(t.ci, {"A1"}, {"A2"}, {"B1", "B2"}));
    }
    EXPECT_EQ(b_sep, 1);
    EXPECT_EQ(a_sep, 1);
}

TEST(Triangulate, AcyclicScenariosAreTheirOwnTriangulation) {
    auto tl = triangulate_scenario(catalog::star());
    ASSERT_EQ(tl.items.size(), 1u);
    EXPECT_EQ(tl.items[0].cliques, catalog::star());
    EXPECT_TRUE(tl.items[0].fill.empty());
    const auto& s = tl.items[0].ci;
    EXPECT_TRUE(has_statement(s, {"A"}, {"C"}, {"B"}));
    EXPECT_TRUE(has_statement(s, {"C"}, {"D"}, {"B"}));
    EXPECT_TRUE(has_statement(s, {"A"}, {"D"}, {"B"}));

    auto single = triangulate_scenario(Hypergraph(EdgeList{{"X", "Y"}}));
    ASSERT_EQ(single.items.size(), 1u);
    EXPECT_TRUE(single.items[0].ci.empty());
}

TEST(Classify, WorkedExamples) {
    auto v1 = classify(catalog::star(), catalog::fork());
    EXPECT_EQ(v1.which, DistinguishabilityCase::i);
    auto v2 = classify(catalog::star(), catalog::fork_plus());
    EXPECT_EQ(v2.which, DistinguishabilityCase::i);
    // fork_plus loses (A _|_ D | B), which the triangulation keeps.
    EXPECT_FALSE(v2.tri_in_model[0].included);
    EXPECT_TRUE(has_witness(v2.tri_in_model[0].witnesses, v2.model_ci.universe(), {"A"}, {"D"}, {"B"}));

    auto v3 = classify(catalog::star_merged(), catalog::fork());
    EXPECT_EQ(v3.which, DistinguishabilityCase::ii);
    EXPECT_FALSE(v3.model_in_tri[0].included);
    EXPECT_TRUE(has_witness(v3.model_in_tri[0].witnesses, v3.model_ci.universe(), {"A"}, {"D"}, {"B"}));

    auto v4 = classify(catalog::info_causality(), catalog::info_causality_dag());
    EXPECT_EQ(v4.which, DistinguishabilityCase::iii);
    ASSERT_EQ(v4.triangulations.size(), 1u);
    ASSERT_TRUE(v4.witness.has_value());
    const auto& u = v4.model_ci.universe();
    // Guesses depend on their inputs only through the message; the
    // triangulation keeps X0-Y0 and X1-Y1 adjacent.
    EXPECT_TRUE(has_witness(v4.model_in_tri[0].witnesses, u, {"X0"}, {"Y0"}, {"M"}));
    EXPECT_TRUE(has_witness(v4.model_in_tri[0].witnesses, u, {"X1"}, {"Y1"}, {"M"}));
    EXPECT_TRUE(has_witness(v4.tri_in_model[0].witnesses, u, {"M"}, {"X0", "X1", "Y0", "Y1"}, {}));
    EXPECT_FALSE(v4.guidance.empty());

    EXPECT_THROW(classify(catalog::chsh(), catalog::fork()), InconsistentInput);
}

TEST(Classify, CaseOneMarginalsExtendUnderTheModel) {
    std::mt19937 rng(5);
    auto star = catalog::star();
    for (const auto& g : {catalog::fork(), catalog::fork_plus()}) {
        auto v = classify(catalog::star(), g);
        ASSERT_EQ(v.which, DistinguishabilityCase::i);
        const auto& cliques = v.triangulations[*v.witness].cliques;
        for (int it = 0; it < 60; ++it) {
            auto p = testing_support::random_table(rng, {"A", "B", "C", "D"});
            auto q = vorobev_extend(MarginalScenario::from_joint(p, cliques));
            for (auto e : star.edges()) {
                auto names = star.nodes().names(e);
                EXPECT_TRUE(same_distribution(marginalize(p, names), marginalize(q, names)));
            }
            for (const auto& s : v.model_ci.statements()) {
                const auto& u = v.model_ci.universe();
                EXPECT_TRUE(ci_holds(q, u.names(s.a), u.names(s.b), u.names(s.c))) << s.str(u);
            }
        }
    }
}

TEST(Entropic, InformationCausality) {
    auto m = catalog::info_causality();
    auto res = entropic_characterize_causal(m, catalog::info_causality_dag());
    EXPECT_EQ(res.verdict.which, DistinguishabilityCase::iii);
    const auto& s = res.result.system;
    auto row = [&](std::vector<std::pair<std::string, int>> terms) {
        std::vector<std::pair<std::string, Rational>> t;
        for (auto& [k, v] : terms) t.emplace_back(k, Rational(v));
        return s.vec(t);
    };
    std::vector<RationalVector> six{
        row({{"H(X0)", 1}, {"H(Y0)", 1}, {"H(X0,Y0)", -1}}), row({{"H(X1)", 1}, {"H(Y1)", 1}, {"H(X1,Y1)", -1}}),
        row({{"H(X0,Y0)", 1}, {"H(X0)", -1}}),               row({{"H(X0,Y0)", 1}, {"H(Y0)", -1}}),
        row({{"H(X1,Y1)", 1}, {"H(X1)", -1}}),               row({{"H(X1,Y1)", 1}, {"H(Y1)", -1}})};
    auto ic = row({{"H(M)", 1}, {"H(X0)", -1}, {"H(Y0)", -1}, {"H(X0,Y0)", 1}, {"H(X1)", -1}, {"H(Y1)", -1},
                   {"H(X1,Y1)", 1}});
    for (const auto& r : six) EXPECT_TRUE(has_inequality(s, r));
    EXPECT_TRUE(has_inequality(s, ic));
    EXPECT_EQ(s.ineqs.size(), 7u) << to_text(s);

    auto tri = entropic_characterize(m).system;
    ASSERT_EQ(tri.coords, s.coords);
    for (const auto& r : six) EXPECT_TRUE(has_inequality(tri, r));
    EXPECT_FALSE(implies(tri, ic, Rational(0)));
    // The only other row is nonnegativity of the message's entropy.
    EXPECT_TRUE(has_inequality(tri, tri.vec({{"H(M)", Rational(1)}})));
    EXPECT_EQ(tri.ineqs.size(), 7u) << to_text(tri);
}

TEST(Entropic, CombiningRefusedInCaseThree) {
    auto m = catalog::info_causality();
    auto gci = catalog::info_causality_dag();
    EXPECT_THROW(entropic_characterize(m, ci_set_dag(gci)), CaseIiiRejected);
    EntropicOptions opt;
    opt.triangulation_ci = false;
    EXPECT_NO_THROW(entropic_characterize(m, ci_set_dag(gci), opt));
}

TEST(Entropic, CaseOneAndTwoRoutes) {
    // Case i: the witness triangulation's independences.
    auto c1 = entropic_characterize_causal(catalog::star(), catalog::fork_plus());
    EXPECT_EQ(c1.verdict.which, DistinguishabilityCase::i);
    EXPECT_TRUE(equivalent(c1.result.system, entropic_characterize(catalog::star()).system));
    // Case ii: the model's independences; the triangulation's add nothing.
    auto c2 = entropic_characterize_causal(catalog::star_merged(), catalog::fork());
    EXPECT_EQ(c2.verdict.which, DistinguishabilityCase::ii);
    EntropicOptions none;
    none.triangulation_ci = false;
    auto model_only = entropic_characterize(catalog::star_merged(), ci_set_dag(catalog::fork()), none);
    auto combined = entropic_characterize(catalog::star_merged(), ci_set_dag(catalog::fork()));
    EXPECT_TRUE(equivalent(c2.result.system, model_only.system));
    EXPECT_TRUE(equivalent(combined.system, model_only.system));
}

TEST(Entropic, ReducedAxiomsGiveTheSameProjection) {
    EntropicOptions full;
    full.reduced_axioms = false;
    auto a = entropic_characterize(catalog::chsh()).system;
    auto b = entropic_characterize(catalog::chsh(), std::nullopt, full).system;
    EXPECT_TRUE(equivalent(a, b));
}

TEST(Entropic, SampledEntropyVectorsLieInEveryTriangulatedProjection) {
    auto m = catalog::chsh();
    EntropySpace sp(m.nodes());
    auto keep = marginal_coords(m, sp);
    auto shannon = project(shannon_cone(sp), keep);
    std::mt19937 rng(9);
    for (const auto& t : triangulate_scenario(m).items) {
        EntropicOptions opt;
        opt.triangulation = t.cliques;
        auto s = entropic_characterize(m, std::nullopt, opt).system;
        EXPECT_TRUE(subset_of(s, shannon));
        auto lifted = reduced_shannon_cone(sp, t.ci);
        for (int it = 0; it < 100; ++it) {
            auto p = testing_support::random_table(rng, m.nodes().labels(), 2 + it % 2);
            EXPECT_GE(worst_row(s, entropies(p)), -1e-9);
            // The adhesive extension has the same marginals and satisfies ℐ(T).
            auto q = vorobev_extend(MarginalScenario::from_joint(p, t.cliques));
            EXPECT_GE(worst_row(lifted, entropies(q)), -1e-9);
        }
    }
}

TEST(Approximation, ChshLatticeIsOrdered) {
    auto rep = approximation_report(catalog::chsh());
    EXPECT_EQ(rep.triangulations.size(), 2u);
    EXPECT_TRUE(rep.full.computed);
    EXPECT_TRUE(rep.triangulated.computed);
    EXPECT_TRUE(subset_of(rep.triangulated.system, rep.full.system));
    EXPECT_TRUE(subset_of(rep.full.system, rep.cliques.system));
    ASSERT_GE(rep.verdicts.size(), 2u);
    for (const auto& v : rep.verdicts) EXPECT_NE(v.verdict, Inclusion::not_included) << v.inner << " / " << v.outer;
    EXPECT_FALSE(rep.clique_rays.empty());
}

TEST(Approximation, SingleEdgeCoincides) {
    auto rep = approximation_report(Hypergraph(EdgeList{{"X", "Y"}}));
    for (const auto& v : rep.verdicts) EXPECT_EQ(v.verdict, Inclusion::equal);
    EXPECT_TRUE(rep.rays_outside_full.empty());
}
