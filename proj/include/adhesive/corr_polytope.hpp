#pragma once
// Correlation polytopes: the simplex of joint outcome probabilities, its
// linear image on the observable marginals, and the projection yielding
// Bell inequalities either from the full joint or from clique-wise joints of
// a triangulation glued along shared marginals.

#include "adhesive/error.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/polyhedra.hpp"

#include <map>
#include <string>
#include <vector>

namespace adhesive {

/// Cardinality per variable; variables not listed are binary.
using Cards = std::map<NodeId, int>;

inline int card_of(const Cards& cards, const NodeId& v) {
    auto it = cards.find(v);
    int c = it == cards.end() ? 2 : it->second;
    if (c < 1) throw InconsistentInput("variable '" + v + "' needs a positive cardinality");
    return c;
}

namespace detail {

inline std::size_t outcome_count(const std::vector<NodeId>& vars, const Cards& cards, std::size_t guard) {
    std::size_t total = 1;
    for (const auto& v : vars) {
        total *= static_cast<std::size_t>(card_of(cards, v));
        if (total > guard)
            throw GuardExceeded("outcome count exceeds bound " + std::to_string(guard) + " for variables {" +
                                [&] {
                                    std::string s;
                                    for (const auto& x : vars) s += (s.empty() ? "" : ",") + x;
                                    return s;
                                }() + "}");
    }
    return total;
}

// Row-major outcome tuple of index `idx` (first variable slowest).
inline std::vector<int> outcome_at(const std::vector<NodeId>& vars, const Cards& cards, std::size_t idx) {
    std::vector<int> o(vars.size());
    for (std::size_t k = vars.size(); k-- > 0;) {
        auto c = static_cast<std::size_t>(card_of(cards, vars[k]));
        o[k] = static_cast<int>(idx % c);
        idx /= c;
    }
    return o;
}

} // namespace detail

/// "p(A1=0,B1=1)"
inline std::string prob_label(const std::vector<NodeId>& vars, const std::vector<int>& outcome) {
    std::string s = "p(";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) s += ",";
        s += vars[i] + "=" + std::to_string(outcome[i]);
    }
    return s + ")";
}

/// Internal label for the joint of a block of variables, e.g. "q[A1,A2](0,1)".
inline std::string block_label(const std::vector<NodeId>& vars, const std::vector<int>& outcome) {
    std::string s = "q[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    s += "](";
    for (std::size_t i = 0; i < outcome.size(); ++i) s += (i ? "," : "") + std::to_string(outcome[i]);
    return s + ")";
}

/// Probability coordinates of one block of variables (sorted), row-major.
struct ProbBlock {
    std::vector<NodeId> vars;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> outcomes;
};

inline ProbBlock prob_block(std::vector<NodeId> vars, const Cards& cards, bool internal = false,
                            std::size_t guard = 4096) {
    std::sort(vars.begin(), vars.end());
    ProbBlock b{vars, {}, {}};
    std::size_t total = detail::outcome_count(vars, cards, guard);
    for (std::size_t i = 0; i < total; ++i) {
        b.outcomes.push_back(detail::outcome_at(vars, cards, i));
        b.labels.push_back(internal ? block_label(vars, b.outcomes.back()) : prob_label(vars, b.outcomes.back()));
    }
    return b;
}

/// Observable coordinates p(M, o) for every edge M of the scenario, edges in
/// hypergraph order.
inline std::vector<ProbBlock> observable_blocks(const Hypergraph& m, const Cards& cards, std::size_t guard = 4096) {
    std::vector<ProbBlock> out;
    for (auto e : m.edges()) out.push_back(prob_block(m.nodes().names(e), cards, false, guard));
    return out;
}

inline std::vector<std::string> observable_coords(const Hypergraph& m, const Cards& cards, std::size_t guard = 4096) {
    std::vector<std::string> out;
    for (const auto& b : observable_blocks(m, cards, guard)) out.insert(out.end(), b.labels.begin(), b.labels.end());
    return out;
}

/// Every joint outcome probability nonnegative, and they sum to one.
inline LinIneqSystem simplex_system(const std::vector<NodeId>& vars, const Cards& cards, std::size_t guard = 4096) {
    auto b = prob_block(vars, cards, false, guard);
    LinIneqSystem s(b.labels);
    for (std::size_t i = 0; i < b.labels.size(); ++i) {
        RationalVector a(s.dim());
        a[i] = Rational(1);
        s.add_ineq(std::move(a));
    }
    s.add_eq(RationalVector(s.dim(), Rational(1)), Rational(1));
    return s;
}

namespace detail {

// Rows "marginal of `from` on sub-block `to` equals `to`" over a system whose
// coordinates contain both label lists.
inline void add_marginal_rows(LinIneqSystem& s, const ProbBlock& from, const ProbBlock& to) {
    std::vector<std::size_t> where;
    for (const auto& v : to.vars) {
        auto it = std::find(from.vars.begin(), from.vars.end(), v);
        if (it == from.vars.end()) throw InconsistentInput("marginal block is not inside its source block");
        where.push_back(static_cast<std::size_t>(it - from.vars.begin()));
    }
    std::vector<std::size_t> to_pos, from_pos;
    for (const auto& l : to.labels) to_pos.push_back(s.index(l));
    for (const auto& l : from.labels) from_pos.push_back(s.index(l));
    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t i = 0; i < to.outcomes.size(); ++i) index_of[to.outcomes[i]] = i;
    std::vector<RationalVector> rows(to.labels.size(), RationalVector(s.dim()));
    for (std::size_t i = 0; i < to.labels.size(); ++i) rows[i][to_pos[i]] = Rational(1);
    for (std::size_t j = 0; j < from.outcomes.size(); ++j) {
        std::vector<int> o;
        for (auto w : where) o.push_back(from.outcomes[j][w]);
        rows[index_of.at(o)][from_pos[j]] -= Rational(1);
    }
    for (auto& r : rows) s.add_eq(std::move(r));
}

// Equalities "marginal of `x` on the shared variables equals marginal of `y`".
inline void add_coupling_rows(LinIneqSystem& s, const ProbBlock& x, const ProbBlock& y, const Cards& cards) {
    std::vector<NodeId> shared;
    for (const auto& v : x.vars)
        if (std::find(y.vars.begin(), y.vars.end(), v) != y.vars.end()) shared.push_back(v);
    if (shared.empty()) return;
    auto sb = prob_block(shared, cards);
    std::vector<std::size_t> wx, wy;
    for (const auto& v : sb.vars) {
        wx.push_back(static_cast<std::size_t>(std::find(x.vars.begin(), x.vars.end(), v) - x.vars.begin()));
        wy.push_back(static_cast<std::size_t>(std::find(y.vars.begin(), y.vars.end(), v) - y.vars.begin()));
    }
    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t i = 0; i < sb.outcomes.size(); ++i) index_of[sb.outcomes[i]] = i;
    std::vector<RationalVector> rows(sb.outcomes.size(), RationalVector(s.dim()));
    auto accumulate = [&](const ProbBlock& b, const std::vector<std::size_t>& w, int sign) {
        for (std::size_t j = 0; j < b.outcomes.size(); ++j) {
            std::vector<int> o;
            for (auto k : w) o.push_back(b.outcomes[j][k]);
            rows[index_of.at(o)][s.index(b.labels[j])] += Rational(sign);
        }
    };
    accumulate(x, wx, 1);
    accumulate(y, wy, -1);
    for (auto& r : rows) s.add_eq(std::move(r));
}

} // namespace detail

/// System over observable coordinates followed by joint coordinates, with
/// p(M, o) = sum of joint probabilities consistent with o for every edge M.
inline LinIneqSystem marginal_map(const std::vector<NodeId>& joint_vars, const Hypergraph& m, const Cards& cards,
                                  std::size_t guard = 4096) {
    auto joint = prob_block(joint_vars, cards, false, guard);
    auto obs = observable_blocks(m, cards, guard);
    std::vector<std::string> coords;
    for (const auto& b : obs) coords.insert(coords.end(), b.labels.begin(), b.labels.end());
    for (const auto& l : joint.labels)
        if (std::find(coords.begin(), coords.end(), l) == coords.end()) coords.push_back(l);
    LinIneqSystem s(coords);
    for (const auto& b : obs)
        if (b.vars != joint.vars) detail::add_marginal_rows(s, joint, b);
    return s;
}

enum class BellMode { direct, via_triangulation };

struct BellOptions {
    BellMode mode = BellMode::via_triangulation;
    std::size_t outcome_guard = 4096;
    std::optional<Hypergraph> triangulation; // clique hypergraph to use; default: MCS-M minimal triangulation
    FmOptions fm;
};

struct BellResult {
    LinIneqSystem system;            // over the observable coordinates
    std::vector<std::string> eliminated; // internal coordinates projected away
    Hypergraph cliques;              // blocks whose joints were used
    FmStats stats;
};

/// Correlation polytope of the scenario in observable coordinates, without
/// redundant rows.
inline BellResult bell_project(const Hypergraph& m, const Cards& cards, const BellOptions& opt = {}) {
    if (m.empty()) throw InconsistentInput("empty marginal scenario");
    BellResult res;
    if (opt.mode == BellMode::direct) {
        res.cliques = Hypergraph::from_masks(m.nodes(), {m.nodes().full()});
    } else if (opt.triangulation) {
        if (!extends(m, *opt.triangulation) || !(opt.triangulation->nodes() == m.nodes()) ||
            !graham(*opt.triangulation).acyclic)
            throw InconsistentInput("triangulation must be an acyclic extension of the scenario");
        res.cliques = *opt.triangulation;
    } else {
        res.cliques = maximal_cliques_chordal(minimal_triangulation(two_section(m)));
    }
    auto obs = observable_blocks(m, cards, opt.outcome_guard);
    std::vector<ProbBlock> blocks;
    for (auto c : res.cliques.edges()) blocks.push_back(prob_block(res.cliques.nodes().names(c), cards, true, opt.outcome_guard));

    std::vector<std::string> coords;
    for (const auto& b : obs) coords.insert(coords.end(), b.labels.begin(), b.labels.end());
    std::size_t nobs = coords.size();
    for (const auto& b : blocks) coords.insert(coords.end(), b.labels.begin(), b.labels.end());
    LinIneqSystem s(coords);
    for (const auto& b : blocks) {
        RationalVector norm(s.dim());
        for (const auto& l : b.labels) {
            RationalVector a(s.dim());
            a[s.index(l)] = Rational(1);
            norm[s.index(l)] = Rational(1);
            s.add_ineq(std::move(a));
        }
        s.add_eq(std::move(norm), Rational(1));
    }
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) detail::add_coupling_rows(s, blocks[i], blocks[j], cards);
    for (const auto& b : obs) {
        const ProbBlock* host = nullptr;
        for (const auto& c : blocks)
            if (std::includes(c.vars.begin(), c.vars.end(), b.vars.begin(), b.vars.end())) {
                host = &c;
                break;
            }
        if (!host) throw InconsistentInput("scenario edge not covered by any clique");
        detail::add_marginal_rows(s, *host, b);
    }
    res.eliminated.assign(coords.begin() + static_cast<std::ptrdiff_t>(nobs), coords.end());
    std::vector<std::string> keep(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(nobs));
    res.system = project(s, keep, opt.fm, &res.stats);
    return res;
}

/// Vertices of the correlation polytope: the deterministic assignments,
/// written in observable coordinates.
inline std::vector<RationalVector> deterministic_points(const Hypergraph& m, const Cards& cards,
                                                        std::size_t guard = 4096) {
    auto all = prob_block(m.nodes().labels(), cards, false, guard);
    auto obs = observable_blocks(m, cards, guard);
    std::vector<RationalVector> out;
    for (const auto& g : all.outcomes) {
        RationalVector x;
        for (const auto& b : obs)
            for (const auto& o : b.outcomes) {
                bool match = true;
                for (std::size_t k = 0; k < b.vars.size() && match; ++k)
                    match = g[m.nodes().index(b.vars[k])] == o[k];
                x.push_back(Rational(match ? 1 : 0));
            }
        out.push_back(std::move(x));
    }
    return out;
}

/// Whether inequality `r` of `s` is, modulo the equalities of `s`, one of the
/// positivity rows p(M, o) >= 0.
inline bool is_positivity_row(const LinIneqSystem& s, const Row& r) {
    Row want = r;
    detail::normalize_row(want);
    for (std::size_t c = 0; c < s.dim(); ++c) {
        LinIneqSystem probe(s.coords);
        probe.eqs = s.eqs;
        RationalVector a(s.dim());
        a[c] = Rational(1);
        probe.add_ineq(std::move(a));
        probe = canonicalize(probe);
        if (probe.ineqs.size() != 1) continue;
        Row got = probe.ineqs[0];
        detail::normalize_row(got);
        if (got == want) return true;
    }
    return false;
}

/// Inequalities of `s` that are not positivity rows.
inline std::vector<Row> nontrivial_facets(const LinIneqSystem& s) {
    std::vector<Row> out;
    for (const auto& r : s.ineqs)
        if (!is_positivity_row(s, r)) out.push_back(r);
    return out;
}

/// Correlator coordinates "E[A1,B1]" for every nonempty subset of every edge
/// (binary variables only), ordered by size then labels.
inline std::vector<std::string> correlator_coords(const Hypergraph& m) {
    std::vector<NodeMask> subsets;
    for (auto e : m.edges())
        for_each_subset(e, [&](NodeMask s) {
            if (s) subsets.push_back(s);
        });
    std::sort(subsets.begin(), subsets.end(), [](NodeMask a, NodeMask b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return mask_label_less(a, b);
    });
    subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    std::vector<std::string> out;
    for (auto s : subsets) out.push_back("E[" + m.nodes().join(s) + "]");
    return out;
}

/// Rewrites a system over observable probabilities of binary variables in
/// correlators, using p(M, o) = 2^-|M| sum over T ⊆ M of prod_{v in T} (-1)^o_v E[T]
/// with E[∅] = 1.
inline LinIneqSystem to_correlators(const LinIneqSystem& s, const Hypergraph& m) {
    Cards none;
    auto ccoords = correlator_coords(m);
    LinIneqSystem out(ccoords);
    out.infeasible = s.infeasible;
    // Each probability coordinate as (constant, coefficient vector over correlators).
    std::map<std::string, Row> subst;
    for (auto e : m.edges()) {
        auto vars = m.nodes().names(e);
        auto block = prob_block(vars, none);
        Rational scale(1, 1LL << vars.size());
        for (std::size_t j = 0; j < block.labels.size(); ++j) {
            Row r{RationalVector(ccoords.size()), Rational(0)};
            for_each_subset(e, [&](NodeMask t) {
                int sign = 1;
                for (std::size_t k = 0; k < vars.size(); ++k)
                    if ((t >> m.nodes().index(vars[k]) & 1) && block.outcomes[j][k] == 1) sign = -sign;
                if (t == 0) {
                    r.b += scale * Rational(sign);
                } else {
                    auto lbl = "E[" + m.nodes().join(t) + "]";
                    auto pos = out.index(lbl);
                    r.a[pos] += scale * Rational(sign);
                }
            });
            subst[block.labels[j]] = std::move(r);
        }
    }
    auto map_row = [&](const Row& r) {
        Row o{RationalVector(ccoords.size()), r.b};
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (r.a[i].is_zero()) continue;
            auto it = subst.find(s.coords[i]);
            if (it == subst.end()) throw InconsistentInput("coordinate '" + s.coords[i] + "' is not an observable probability");
            for (std::size_t k = 0; k < ccoords.size(); ++k)
                if (!it->second.a[k].is_zero()) o.a[k] += r.a[i] * it->second.a[k];
            o.b -= r.a[i] * it->second.b;
        }
        return o;
    };
    for (const auto& r : s.ineqs) out.ineqs.push_back(map_row(r));
    for (const auto& r : s.eqs) out.eqs.push_back(map_row(r));
    return lp_remove_redundant(out);
}

} // namespace adhesive
