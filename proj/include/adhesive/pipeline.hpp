#pragma once
// End-to-end procedures: triangulating a marginal scenario, entropic
// characterisation under CI constraints, the outer-approximation lattice and
// the three-way comparison of causal and triangulation CI sets.

#include "adhesive/causal.hpp"
#include "adhesive/entropy_cone.hpp"
#include "adhesive/error.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/polyhedra.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace adhesive {

struct TriangulatedScenario {
    Graph graph;       // chordal supergraph of the 2-section
    Hypergraph cliques; // its clique hypergraph
    CiSet ci;          // separation statements of `graph`
    std::vector<std::pair<NodeId, NodeId>> fill;
};

struct TriangulationList {
    std::vector<TriangulatedScenario> items;
    bool truncated = false;
};

struct GuardOptions {
    std::size_t max_nodes = 10;      // CI enumeration and triangulation enumeration
    std::size_t max_triangulations = 1000;
};

inline TriangulatedScenario triangulated(const Graph& two_sec, const Graph& chordal, std::size_t max_nodes) {
    return {chordal, maximal_cliques_chordal(chordal), ci_set_mrf(chordal, max_nodes), fill_edges(two_sec, chordal)};
}

/// All minimal triangulations of the 2-section with their clique hypergraphs
/// and separation statements.
inline TriangulationList triangulate_scenario(const Hypergraph& m, const GuardOptions& g = {}) {
    Graph sec = two_section(m);
    auto en = enumerate_minimal_triangulations(sec, g.max_triangulations, std::max<std::size_t>(g.max_nodes, 12));
    TriangulationList out;
    out.truncated = en.truncated;
    for (const auto& t : en.triangulations) out.items.push_back(triangulated(sec, t, g.max_nodes));
    return out;
}

/// The MCS-M triangulation: one minimal triangulation without enumeration.
inline TriangulatedScenario default_triangulation(const Hypergraph& m, std::size_t max_nodes = 10) {
    Graph sec = two_section(m);
    return triangulated(sec, minimal_triangulation(sec), max_nodes);
}

// ---------------------------------------------------------------------------
// Causal structures and the three-way comparison

/// A DAG (d-separation) or an undirected graph (separation).
class CausalModel {
public:
    CausalModel(Digraph d) : m_(std::move(d)) {}
    CausalModel(Graph g) : m_(std::move(g)) {}

    bool is_dag() const { return std::holds_alternative<Digraph>(m_); }
    const Universe& nodes() const {
        return is_dag() ? std::get<Digraph>(m_).nodes() : std::get<Graph>(m_).nodes();
    }
    const Digraph& dag() const { return std::get<Digraph>(m_); }
    const Graph& mrf() const { return std::get<Graph>(m_); }

    CiSet ci(const Universe& u, std::size_t max_nodes = 10) const {
        return is_dag() ? ci_set_dag(dag(), u, max_nodes) : ci_set_mrf(mrf(), u, max_nodes);
    }
    CiSet ci(std::size_t max_nodes = 10) const { return ci(nodes(), max_nodes); }

private:
    std::variant<Digraph, Graph> m_;
};

enum class DistinguishabilityCase { i = 1, ii = 2, iii = 3 };

inline std::string case_name(DistinguishabilityCase c) {
    switch (c) {
    case DistinguishabilityCase::i: return "i";
    case DistinguishabilityCase::ii: return "ii";
    default: return "iii";
    }
}

struct DistinguishabilityVerdict {
    DistinguishabilityCase which = DistinguishabilityCase::iii;
    CiSet model_ci;                          // causal CI restricted to the scenario's nodes
    std::vector<TriangulatedScenario> triangulations;
    std::vector<CiInclusion> model_in_tri;   // [i]: model_ci ⊆ ℐ(T_i), witnesses = model_ci \ ℐ(T_i)
    std::vector<CiInclusion> tri_in_model;   // [i]: ℐ(T_i) ⊆ model_ci, witnesses = ℐ(T_i) \ model_ci
    std::optional<std::size_t> witness;      // case i: a triangulation containing model_ci; case iii: one not inside it
    bool partial = false;                    // triangulation enumeration was truncated
    std::string guidance;
};

/// Compares a causal CI set (over the scenario's nodes) with the CI sets of
/// the given triangulations; the first matching case in the order i, ii, iii wins.
inline DistinguishabilityVerdict compare_ci(const CiSet& model_ci, std::vector<TriangulatedScenario> tris,
                                            bool partial = false) {
    DistinguishabilityVerdict v;
    v.model_ci = model_ci;
    v.partial = partial;
    v.triangulations = std::move(tris);
    for (const auto& t : v.triangulations) {
        CiSet tci = t.ci.restrict_to(model_ci.universe());
        v.model_in_tri.push_back(ci_subset(model_ci, tci));
        v.tri_in_model.push_back(ci_subset(tci, model_ci));
    }
    for (std::size_t i = 0; i < v.model_in_tri.size(); ++i)
        if (v.model_in_tri[i].included) {
            v.which = DistinguishabilityCase::i;
            v.witness = i;
            break;
        }
    if (!v.witness) {
        bool all = std::all_of(v.tri_in_model.begin(), v.tri_in_model.end(), [](const auto& x) { return x.included; });
        if (all) {
            v.which = DistinguishabilityCase::ii;
        } else {
            v.which = DistinguishabilityCase::iii;
            for (std::size_t i = 0; i < v.tri_in_model.size(); ++i)
                if (!v.tri_in_model[i].included) {
                    v.witness = i;
                    break;
                }
        }
    }
    switch (v.which) {
    case DistinguishabilityCase::i:
        v.guidance = "the marginals cannot falsify the causal structure; characterise the scenario with the "
                     "triangulation's independences alone";
        break;
    case DistinguishabilityCase::ii:
        v.guidance = "the triangulation's independences are implied by the causal structure; characterise with the "
                     "causal independences directly";
        break;
    case DistinguishabilityCase::iii:
        v.guidance = "the two independence sets conflict; combining them gives neither an inner nor an outer "
                     "approximation, so use the causal independences alone";
        break;
    }
    return v;
}

inline DistinguishabilityVerdict classify(const Hypergraph& m, const CausalModel& g, const GuardOptions& opt = {}) {
    for (const auto& l : m.nodes().labels())
        if (!g.nodes().contains(l)) throw InconsistentInput("scenario node '" + l + "' is missing from the causal structure");
    auto tris = triangulate_scenario(m, opt);
    return compare_ci(g.ci(m.nodes(), opt.max_nodes), std::move(tris.items), tris.truncated);
}

// ---------------------------------------------------------------------------
// Entropic characterisation

struct EntropicOptions {
    std::optional<std::vector<std::string>> coords; // projection coordinates; default: every H(S), S inside an edge
    std::optional<Hypergraph> triangulation;         // clique hypergraph whose independences are imposed
    bool triangulation_ci = true;                    // impose ℐ(T) at all
    bool reduced_axioms = true;                      // drop elemental rows implied under the CI hyperplanes
    GuardOptions guards;
    std::size_t max_vars = 10;
    FmOptions fm = [] {
        FmOptions f;
        f.prune_threshold = 250;
        return f;
    }();
};

struct EntropicResult {
    LinIneqSystem system;        // over the projection coordinates
    CiSet ci;                    // independences imposed, over the full variable universe
    std::optional<Hypergraph> triangulation;
    std::vector<std::string> eliminated;
    FmStats stats;
};

namespace detail {

inline EntropicResult run_entropic(const Hypergraph& m, const Universe& vars, const CiSet& ci,
                                   const EntropicOptions& opt) {
    EntropySpace sp(vars, opt.max_vars);
    EntropicResult r;
    r.ci = ci;
    LinIneqSystem sys = opt.reduced_axioms ? reduced_shannon_cone(sp, ci) : with_ci(shannon_cone(sp), ci, sp);
    std::vector<std::string> keep = opt.coords ? *opt.coords : marginal_coords(m, sp);
    for (const auto& c : sp.coords())
        if (std::find(keep.begin(), keep.end(), c) == keep.end()) r.eliminated.push_back(c);
    r.system = project(sys, keep, opt.fm, &r.stats);
    return r;
}

inline Hypergraph chosen_triangulation(const Hypergraph& m, const EntropicOptions& opt) {
    if (!opt.triangulation) return default_triangulation(m, opt.guards.max_nodes).cliques;
    const auto& t = *opt.triangulation;
    if (!(t.nodes() == m.nodes()) || !extends(m, t) || !graham(t).acyclic)
        throw InconsistentInput("triangulation must be an acyclic extension of the scenario over the same nodes");
    return t;
}

} // namespace detail

/// Projection of the Shannon cone restricted by ℐ(T) (and `extra`, if given)
/// onto the scenario's entropy coordinates. `extra` may mention latent
/// variables; combining is refused when it conflicts with the triangulations
/// (case iii).
inline EntropicResult entropic_characterize(const Hypergraph& m, const std::optional<CiSet>& extra = std::nullopt,
                                            const EntropicOptions& opt = {}) {
    Universe vars = extra ? merge(m.nodes(), extra->universe()) : m.nodes();
    CiSet ci(vars);
    std::optional<Hypergraph> tri;
    if (opt.triangulation_ci) {
        if (extra) {
            auto tris = triangulate_scenario(m, opt.guards);
            auto v = compare_ci(extra->restrict_to(m.nodes()), tris.items, tris.truncated);
            if (v.which == DistinguishabilityCase::iii) {
                std::string why = "refusing to combine independences (case iii)";
                const auto& tw = v.tri_in_model[*v.witness].witnesses;
                if (!tw.empty())
                    why += ": " + tw.front().str(m.nodes()) + " holds for triangulation " +
                           v.triangulations[*v.witness].cliques.str() + " but not for the causal structure";
                throw CaseIiiRejected(why);
            }
            tri = v.which == DistinguishabilityCase::i && !opt.triangulation ? v.triangulations[*v.witness].cliques
                                                                              : detail::chosen_triangulation(m, opt);
        } else {
            tri = detail::chosen_triangulation(m, opt);
        }
        ci = ci.unite(ci_set_mrf(two_section(*tri), opt.guards.max_nodes).embed_in(vars));
    }
    if (extra) ci = ci.unite(extra->embed_in(vars));
    auto r = detail::run_entropic(m, vars, ci, opt);
    r.triangulation = tri;
    return r;
}

struct CausalEntropicResult {
    EntropicResult result;
    DistinguishabilityVerdict verdict;
};

/// Case i: the witness triangulation's independences; cases ii and iii: the
/// causal independences alone (over all of the model's nodes, latents included).
inline CausalEntropicResult entropic_characterize_causal(const Hypergraph& m, const CausalModel& g,
                                                         const EntropicOptions& opt = {}) {
    auto v = classify(m, g, opt.guards);
    CausalEntropicResult out{{}, v};
    if (v.which == DistinguishabilityCase::i) {
        EntropicOptions o = opt;
        o.triangulation = v.triangulations[*v.witness].cliques;
        out.result = entropic_characterize(m, std::nullopt, o);
    } else {
        EntropicOptions o = opt;
        o.triangulation_ci = false;
        out.result = entropic_characterize(m, g.ci(opt.guards.max_nodes), o);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Outer-approximation lattice

struct LatticeMember {
    std::string name;
    bool computed = false;
    LinIneqSystem system;
    std::string note;
};

enum class Inclusion { equal, strict, not_included, unknown };

inline std::string inclusion_name(Inclusion i) {
    switch (i) {
    case Inclusion::equal: return "equal";
    case Inclusion::strict: return "strict";
    case Inclusion::not_included: return "not-included";
    default: return "unknown";
    }
}

struct InclusionVerdict {
    std::string inner, outer;
    Inclusion verdict = Inclusion::unknown;
    std::optional<Row> outer_only;          // row of inner not implied by outer (witness of strictness)
    std::optional<RationalVector> ray;      // extreme ray of outer outside inner, when rays were enumerated
};

struct ApproximationOptions {
    std::optional<std::vector<std::string>> coords;
    GuardOptions guards;
    std::size_t max_vars = 10;
    std::size_t direct_max_vars = 5; // above this, Π(Γ) and Π(Γ_T) are only probed on rays
    std::size_t ray_max_dim = 24;
    bool part_rays = true; // also enumerate rays of each triangulation's clique member
    FmOptions fm = EntropicOptions{}.fm;
};

struct ApproximationReport {
    std::vector<std::string> coords;
    std::vector<Hypergraph> triangulations;
    LatticeMember triangulated;                 // ∩_i Π(Γ ∩ L_{T_i})
    LatticeMember full;                         // Π(Γ)
    LatticeMember cliques;                      // ∩_i Π(∩_k Γ_{C_k^(i)})
    std::vector<LinIneqSystem> clique_parts;    // Π(∩_k Γ_{C_k^(i)}) per triangulation
    std::vector<std::vector<RationalVector>> part_rays;          // extreme rays of each clique part
    std::vector<std::vector<std::size_t>> part_rays_outside_full; // indices into part_rays[i] not in Π(Γ)
    std::vector<RationalVector> clique_rays;    // extreme rays of `cliques`, if enumerated
    std::vector<std::size_t> rays_outside_full; // indices into clique_rays not in Π(Γ)
    std::vector<std::vector<std::size_t>> rays_outside_tri; // per triangulation
    std::vector<InclusionVerdict> verdicts;
    bool partial = false;
};

namespace detail {

inline InclusionVerdict compare_members(const LatticeMember& inner, const LatticeMember& outer, bool rays,
                                        std::size_t ray_max_dim) {
    InclusionVerdict v{inner.name, outer.name, Inclusion::unknown, std::nullopt, std::nullopt};
    if (!inner.computed || !outer.computed) return v;
    if (!subset_of(inner.system, outer.system)) {
        v.verdict = Inclusion::not_included;
        return v;
    }
    auto miss = first_unimplied(outer.system, inner.system);
    if (!miss) {
        v.verdict = Inclusion::equal;
        return v;
    }
    v.verdict = Inclusion::strict;
    v.outer_only = miss->equality ? inner.system.eqs[miss->index] : inner.system.ineqs[miss->index];
    if (rays && outer.system.homogeneous() && outer.system.dim() <= ray_max_dim) {
        auto en = enumerate_rays(outer.system, ray_max_dim);
        for (const auto& r : en.rays)
            if (!contains_ray(inner.system, r)) {
                v.ray = r;
                break;
            }
    }
    return v;
}

// The projection of the intersection of embedded clique cones.
inline LinIneqSystem clique_projection(const EntropySpace& sp, const Hypergraph& t, const std::vector<std::string>& keep,
                                       const FmOptions& fm) {
    std::vector<LinIneqSystem> parts;
    for (auto e : t.edges()) parts.push_back(clique_cone_embedded(sp, t.nodes().names(e)));
    return project_intersection(parts, keep, fm);
}

} // namespace detail

/// Computes the members of the lattice
///   ∩_i Π(Γ_{T_i}) ⊆ Π(Γ) ⊆ ∩_i Π(∩_k Γ_{C_k^(i)})
/// that fit the size limits and compares neighbours. Members too large to
/// project are still probed: every extreme ray of the clique member is tested
/// for membership in them by LP.
inline ApproximationReport approximation_report(const Hypergraph& m, const ApproximationOptions& opt = {}) {
    ApproximationReport rep;
    EntropySpace sp(m.nodes(), opt.max_vars);
    rep.coords = opt.coords ? *opt.coords : marginal_coords(m, sp);
    auto tris = triangulate_scenario(m, opt.guards);
    rep.partial = tris.truncated;
    for (const auto& t : tris.items) rep.triangulations.push_back(t.cliques);

    rep.cliques.name = "clique cones";
    for (const auto& t : rep.triangulations)
        rep.clique_parts.push_back(detail::clique_projection(sp, t, rep.coords, opt.fm));
    rep.cliques.system = intersect(rep.clique_parts);
    rep.cliques.computed = true;

    bool direct = m.nodes().size() <= opt.direct_max_vars;
    rep.full.name = "Shannon";
    rep.triangulated.name = "triangulations";
    std::vector<LinIneqSystem> lifted_tri;
    for (const auto& t : tris.items) lifted_tri.push_back(reduced_shannon_cone(sp, t.ci));
    LinIneqSystem lifted_full = shannon_cone(sp);
    if (direct) {
        rep.full.system = project(lifted_full, rep.coords, opt.fm);
        rep.full.computed = true;
        std::vector<LinIneqSystem> parts;
        for (const auto& l : lifted_tri) parts.push_back(project(l, rep.coords, opt.fm));
        rep.triangulated.system = intersect(parts);
        rep.triangulated.computed = true;
    } else {
        rep.full.note = rep.triangulated.note = "not projected (more than " + std::to_string(opt.direct_max_vars) +
                                                " variables); probed on the clique member's extreme rays";
    }

    auto pointed_rays = [&](const LinIneqSystem& c) -> std::optional<std::vector<RationalVector>> {
        if (c.dim() > opt.ray_max_dim || !c.homogeneous()) return std::nullopt;
        auto en = enumerate_rays(c, opt.ray_max_dim);
        if (!en.lines.empty()) return std::nullopt;
        return en.rays;
    };
    auto outside = [&](const LinIneqSystem& lifted, const std::vector<RationalVector>& rays) {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (!in_projection(lifted, rep.coords, rays[r])) out.push_back(r);
        return out;
    };
    if (opt.part_rays) {
        for (const auto& part : rep.clique_parts) {
            auto rays = pointed_rays(part);
            if (!rays) break;
            rep.part_rays_outside_full.push_back(outside(lifted_full, *rays));
            rep.part_rays.push_back(std::move(*rays));
        }
    }
    if (auto rays = pointed_rays(rep.cliques.system)) {
        rep.clique_rays = std::move(*rays);
        rep.rays_outside_full = outside(lifted_full, rep.clique_rays);
        for (const auto& l : lifted_tri) rep.rays_outside_tri.push_back(outside(l, rep.clique_rays));
    }

    auto ray_verdict = [&](const std::string& inner, const std::vector<std::size_t>& outside) {
        InclusionVerdict v{inner, rep.cliques.name, Inclusion::unknown, std::nullopt, std::nullopt};
        if (rep.clique_rays.empty()) return v;
        if (outside.empty()) {
            v.verdict = Inclusion::equal; // every generator of the outer cone lies in the inner one
        } else {
            v.verdict = Inclusion::strict;
            v.ray = rep.clique_rays[outside.front()];
        }
        return v;
    };
    rep.verdicts.push_back(detail::compare_members(rep.triangulated, rep.full, true, opt.ray_max_dim));
    if (rep.full.computed)
        rep.verdicts.push_back(detail::compare_members(rep.full, rep.cliques, true, opt.ray_max_dim));
    else
        rep.verdicts.push_back(ray_verdict(rep.full.name, rep.rays_outside_full));
    if (!rep.triangulated.computed && !rep.clique_rays.empty()) {
        std::vector<std::size_t> any;
        for (const auto& o : rep.rays_outside_tri) any.insert(any.end(), o.begin(), o.end());
        std::sort(any.begin(), any.end());
        any.erase(std::unique(any.begin(), any.end()), any.end());
        rep.verdicts.push_back(ray_verdict(rep.triangulated.name, any));
    }
    return rep;
}

} // namespace adhesive
