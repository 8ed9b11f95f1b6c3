#pragma once
// Conditional-independence semantics for DAGs (d-separation) and Markov random
// fields (graph separation), enumerated into canonical CI sets.
//
// CI sets are compared by literal inclusion over exhaustively enumerated
// statements, never by graphoid implication.

#include "adhesive/error.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/nodeset.hpp"

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace adhesive {

/// (A ⟂ B | C) over the positions of some Universe. Canonical form has A before
/// B in label order.
struct CiStatement {
    NodeMask a = 0, b = 0, c = 0;

    static CiStatement make(NodeMask a, NodeMask b, NodeMask c) {
        if (a == 0 || b == 0) throw InconsistentInput("CI statement needs nonempty A and B");
        if ((a & b) || (a & c) || (b & c)) throw InconsistentInput("CI statement sets must be disjoint");
        if (mask_label_less(b, a)) std::swap(a, b);
        return {a, b, c};
    }

    friend bool operator==(const CiStatement&, const CiStatement&) = default;
    friend bool operator<(const CiStatement& x, const CiStatement& y) {
        if (x.a != y.a) return mask_label_less(x.a, y.a);
        if (x.b != y.b) return mask_label_less(x.b, y.b);
        if (x.c != y.c) return mask_label_less(x.c, y.c);
        return false;
    }

    std::string str(const Universe& u) const {
        std::string s = "(" + u.join(a) + " _|_ " + u.join(b);
        if (c) s += " | " + u.join(c);
        return s + ")";
    }
};

inline CiStatement ci(const Universe& u, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                      const std::vector<NodeId>& c = {}) {
    return CiStatement::make(u.mask(a), u.mask(b), u.mask(c));
}

class CiSet {
public:
    CiSet() = default;
    explicit CiSet(Universe u) : universe_(std::move(u)) {}

    const Universe& universe() const { return universe_; }
    const std::set<CiStatement>& statements() const { return stmts_; }
    std::size_t size() const { return stmts_.size(); }
    bool empty() const { return stmts_.empty(); }
    bool contains(const CiStatement& s) const { return stmts_.count(s) > 0; }

    void insert(const CiStatement& s) {
        if (!is_subset(s.a | s.b | s.c, universe_.full())) throw InconsistentInput("CI statement outside universe");
        stmts_.insert(CiStatement::make(s.a, s.b, s.c));
    }

    /// Statements whose nodes all lie in `sub`, re-expressed over `sub`.
    CiSet restrict_to(const Universe& sub) const {
        CiSet out(sub);
        NodeMask allowed = 0;
        for (const auto& l : sub.labels())
            if (universe_.contains(l)) allowed |= universe_.bit(l);
        for (const auto& s : stmts_)
            if (is_subset(s.a | s.b | s.c, allowed))
                out.insert({universe_.translate(s.a, sub), universe_.translate(s.b, sub), universe_.translate(s.c, sub)});
        return out;
    }

    /// Same statements over a larger universe.
    CiSet embed_in(const Universe& super) const {
        CiSet out(super);
        for (const auto& s : stmts_)
            out.insert({universe_.translate(s.a, super), universe_.translate(s.b, super), universe_.translate(s.c, super)});
        return out;
    }

    CiSet unite(const CiSet& other) const {
        if (!(other.universe_ == universe_)) throw InconsistentInput("CI sets over different universes");
        CiSet out = *this;
        for (const auto& s : other.stmts_) out.stmts_.insert(s);
        return out;
    }

    friend bool operator==(const CiSet&, const CiSet&) = default;

private:
    Universe universe_;
    std::set<CiStatement> stmts_;
};

/// Statements of `s` not obtainable from another statement of `s` by
/// decomposition and weak union. Presentation helper only.
inline std::vector<CiStatement> maximal_statements(const CiSet& s) {
    auto derives = [](const CiStatement& big, NodeMask a, NodeMask b, NodeMask c) {
        // (A'⟂B'|C') yields (A⟂B|C) if A⊆A', B⊆B', C'⊆C⊆C'∪(A'\A)∪(B'\B)
        return is_subset(a, big.a) && is_subset(b, big.b) && is_subset(big.c, c) &&
               is_subset(c, big.c | (big.a & ~a) | (big.b & ~b));
    };
    std::vector<CiStatement> out;
    for (const auto& x : s.statements()) {
        bool dominated = false;
        for (const auto& y : s.statements()) {
            if (x == y) continue;
            if (derives(y, x.a, x.b, x.c) || derives(y, x.b, x.a, x.c)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(x);
    }
    return out;
}

inline bool is_dag(const Digraph& d) {
    std::size_t n = d.size();
    std::vector<int> indeg(n, 0);
    for (std::size_t v = 0; v < n; ++v) indeg[v] = popcount(d.parents(v));
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    std::size_t seen = 0;
    while (!queue.empty()) {
        auto v = queue.back();
        queue.pop_back();
        ++seen;
        for (NodeMask r = d.children(v); r; r &= r - 1) {
            std::size_t c = std::countr_zero(r);
            if (--indeg[c] == 0) queue.push_back(c);
        }
    }
    return seen == n;
}

namespace detail {

inline void require_dag(const Digraph& d) {
    if (!is_dag(d)) throw InconsistentInput("directed graph contains a cycle");
}

/// Nodes reachable from `a` by an active trail given `c` (Bayes-ball).
inline NodeMask dsep_reachable(const Digraph& d, NodeMask a, NodeMask c) {
    NodeMask anc_c = c | d.ancestors(c);
    // visited_up: arrived from a child (travelling against an arc); visited_down: arrived from a parent.
    NodeMask visited_up = 0, visited_down = 0, reach = 0;
    NodeMask up = a, down = 0;
    while (up || down) {
        NodeMask next_up = 0, next_down = 0;
        for (NodeMask r = up & ~visited_up; r; r &= r - 1) {
            std::size_t y = std::countr_zero(r);
            NodeMask bit = NodeMask{1} << y;
            visited_up |= bit;
            if (!(c & bit)) {
                reach |= bit;
                next_up |= d.parents(y);
                next_down |= d.children(y);
            }
        }
        for (NodeMask r = down & ~visited_down; r; r &= r - 1) {
            std::size_t y = std::countr_zero(r);
            NodeMask bit = NodeMask{1} << y;
            visited_down |= bit;
            if (!(c & bit)) {
                reach |= bit;
                next_down |= d.children(y);
            }
            if (anc_c & bit) next_up |= d.parents(y);
        }
        up = next_up & ~visited_up;
        down = next_down & ~visited_down;
    }
    return reach;
}

template <class Reach>
CiSet enumerate_ci(const Universe& model, const Universe& universe, std::size_t max_nodes, Reach&& reach) {
    if (universe.size() > max_nodes)
        throw GuardExceeded("CI enumeration refused: " + std::to_string(universe.size()) + " nodes exceeds bound " +
                            std::to_string(max_nodes));
    NodeMask allowed = 0; // universe positions within the model
    std::vector<std::size_t> to_model(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) {
        to_model[i] = model.index(universe.label(i));
        allowed |= NodeMask{1} << to_model[i];
    }
    auto back = [&](NodeMask m) {
        NodeMask out = 0;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (m >> to_model[i] & 1) out |= NodeMask{1} << i;
        return out;
    };
    CiSet out(universe);
    for_each_subset(allowed, [&](NodeMask c) {
        NodeMask rest = allowed & ~c;
        for_each_subset(rest, [&](NodeMask a) {
            if (a == 0) return;
            NodeMask free = rest & ~a & ~reach(a, c);
            NodeMask ua = back(a), uc = back(c);
            for_each_subset(free, [&](NodeMask b) {
                if (b == 0) return;
                NodeMask ub = back(b);
                if (mask_label_less(ua, ub)) out.insert({ua, ub, uc});
            });
        });
    });
    return out;
}

} // namespace detail

inline bool d_separated(const Digraph& d, NodeMask a, NodeMask b, NodeMask c) {
    detail::require_dag(d);
    if (a == 0 || b == 0) throw InconsistentInput("d-separation query needs nonempty node sets");
    if ((a & b) || (a & c) || (b & c)) throw InconsistentInput("d-separation query node sets must be disjoint");
    return (detail::dsep_reachable(d, a, c) & b) == 0;
}

inline bool d_separated(const Digraph& d, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                        const std::vector<NodeId>& c) {
    return d_separated(d, d.nodes().mask(a), d.nodes().mask(b), d.nodes().mask(c));
}

/// Every canonical d-separation statement among the nodes of `universe`.
inline CiSet ci_set_dag(const Digraph& d, const Universe& universe, std::size_t max_nodes = 10) {
    detail::require_dag(d);
    return detail::enumerate_ci(d.nodes(), universe, max_nodes,
                                [&](NodeMask a, NodeMask c) { return detail::dsep_reachable(d, a, c); });
}
inline CiSet ci_set_dag(const Digraph& d, std::size_t max_nodes = 10) { return ci_set_dag(d, d.nodes(), max_nodes); }

/// Every canonical graph-separation statement among the nodes of `universe`.
inline CiSet ci_set_mrf(const Graph& g, const Universe& universe, std::size_t max_nodes = 10) {
    return detail::enumerate_ci(g.nodes(), universe, max_nodes,
                                [&](NodeMask a, NodeMask c) { return reachable(g, a, c); });
}
inline CiSet ci_set_mrf(const Graph& g, std::size_t max_nodes = 10) { return ci_set_mrf(g, g.nodes(), max_nodes); }

/// Skeleton plus edges between co-parents.
inline Graph moral_graph(const Digraph& d) {
    detail::require_dag(d);
    Graph g(d.nodes());
    for (std::size_t v = 0; v < d.size(); ++v) {
        NodeMask pa = d.parents(v);
        for (NodeMask r = pa; r; r &= r - 1) {
            std::size_t p = std::countr_zero(r);
            g.add_edge(p, v);
            for (NodeMask s = r & (r - 1); s; s &= s - 1) g.add_edge(p, std::countr_zero(s));
        }
    }
    return g;
}

struct CiInclusion {
    bool included = false;
    std::vector<CiStatement> witnesses; // s1 \ s2
};

inline CiInclusion ci_subset(const CiSet& s1, const CiSet& s2) {
    if (!(s1.universe() == s2.universe())) throw InconsistentInput("CI sets over different universes");
    CiInclusion r;
    for (const auto& s : s1.statements())
        if (!s2.contains(s)) r.witnesses.push_back(s);
    r.included = r.witnesses.empty();
    return r;
}

} // namespace adhesive
