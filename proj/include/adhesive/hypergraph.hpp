#pragma once
// Hypergraphs, undirected graphs and digraphs over labelled nodes, together
// with the acyclicity machinery: Graham reduction, running-intersection
// orderings, chordality via maximum cardinality search, clique hypergraphs and
// minimal triangulations.

#include "adhesive/error.hpp"
#include "adhesive/nodeset.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace adhesive {

using EdgeList = std::vector<std::vector<NodeId>>;

class Hypergraph {
public:
    Hypergraph() = default;

    /// Node set is the union of the edges.
    explicit Hypergraph(const EdgeList& edges) {
        std::vector<NodeId> all;
        for (const auto& e : edges) {
            if (e.empty()) throw InconsistentInput("hyperedges must be nonempty");
            all.insert(all.end(), e.begin(), e.end());
        }
        nodes_ = Universe(all);
        for (const auto& e : edges) edges_.push_back(nodes_.mask(e));
        canonicalize();
    }

    /// Edges given as masks over `nodes`; every node must be covered.
    static Hypergraph from_masks(Universe nodes, std::vector<NodeMask> edges) {
        Hypergraph h;
        h.nodes_ = std::move(nodes);
        h.edges_ = std::move(edges);
        h.validate();
        return h;
    }

    const Universe& nodes() const { return nodes_; }
    const std::vector<NodeMask>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    EdgeList edge_labels() const {
        EdgeList out;
        for (auto e : edges_) out.push_back(nodes_.names(e));
        return out;
    }

    /// No edge is contained in another.
    bool is_reduced() const {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (std::size_t j = 0; j < edges_.size(); ++j)
                if (i != j && is_subset(edges_[i], edges_[j])) return false;
        return true;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (i) s += ", ";
            s += "{" + nodes_.join(edges_[i]) + "}";
        }
        return s + "}";
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.edge_labels() == b.edge_labels();
    }

private:
    void validate() {
        NodeMask cover = 0;
        for (auto e : edges_) {
            if (e == 0) throw InconsistentInput("hyperedges must be nonempty");
            if (!is_subset(e, nodes_.full())) throw InconsistentInput("hyperedge outside node set");
            cover |= e;
        }
        if (cover != nodes_.full()) throw InconsistentInput("every node must belong to some hyperedge");
        canonicalize();
    }

    void canonicalize() {
        std::sort(edges_.begin(), edges_.end(), mask_label_less);
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    Universe nodes_;
    std::vector<NodeMask> edges_;
};

class Graph {
public:
    Graph() = default;
    explicit Graph(Universe nodes) : nodes_(std::move(nodes)), adj_(nodes_.size(), 0) {}
    Graph(Universe nodes, const std::vector<std::pair<NodeId, NodeId>>& edges) : Graph(std::move(nodes)) {
        for (const auto& [u, v] : edges) add_edge(nodes_.index(u), nodes_.index(v));
    }

    const Universe& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    NodeMask neighbors(std::size_t v) const { return adj_[v]; }
    bool has_edge(std::size_t u, std::size_t v) const { return adj_[u] >> v & 1; }

    void add_edge(std::size_t u, std::size_t v) {
        if (u == v) throw InconsistentInput("self-loop on node '" + nodes_.label(u) + "'");
        adj_[u] |= NodeMask{1} << v;
        adj_[v] |= NodeMask{1} << u;
    }
    void remove_edge(std::size_t u, std::size_t v) {
        adj_[u] &= ~(NodeMask{1} << v);
        adj_[v] &= ~(NodeMask{1} << u);
    }

    /// Edges as index pairs (u < v), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (std::size_t v = u + 1; v < adj_.size(); ++v)
                if (has_edge(u, v)) out.emplace_back(u, v);
        return out;
    }
    std::vector<std::pair<NodeId, NodeId>> edge_labels() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (auto [u, v] : edges()) out.emplace_back(nodes_.label(u), nodes_.label(v));
        return out;
    }
    std::size_t edge_count() const { return edges().size(); }

    bool is_clique(NodeMask m) const {
        for (NodeMask r = m; r; r &= r - 1) {
            std::size_t v = std::countr_zero(r);
            if (!is_subset(m & ~(NodeMask{1} << v), adj_[v])) return false;
        }
        return true;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (auto [u, v] : edges()) {
            if (!first) s += ", ";
            first = false;
            s += nodes_.label(u) + "-" + nodes_.label(v);
        }
        return s + "}";
    }

    friend bool operator==(const Graph& a, const Graph& b) = default;

private:
    Universe nodes_;
    std::vector<NodeMask> adj_;
};

class Digraph {
public:
    Digraph() = default;
    explicit Digraph(Universe nodes) : nodes_(std::move(nodes)), children_(nodes_.size(), 0), parents_(nodes_.size(), 0) {}
    Digraph(Universe nodes, const std::vector<std::pair<NodeId, NodeId>>& arcs) : Digraph(std::move(nodes)) {
        for (const auto& [u, v] : arcs) add_arc(nodes_.index(u), nodes_.index(v));
    }

    const Universe& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    NodeMask children(std::size_t v) const { return children_[v]; }
    NodeMask parents(std::size_t v) const { return parents_[v]; }
    bool has_arc(std::size_t u, std::size_t v) const { return children_[u] >> v & 1; }

    void add_arc(std::size_t u, std::size_t v) {
        if (u == v) throw InconsistentInput("self-arc on node '" + nodes_.label(u) + "'");
        children_[u] |= NodeMask{1} << v;
        parents_[v] |= NodeMask{1} << u;
    }

    std::vector<std::pair<NodeId, NodeId>> arc_labels() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (std::size_t u = 0; u < size(); ++u)
            for (std::size_t v = 0; v < size(); ++v)
                if (has_arc(u, v)) out.emplace_back(nodes_.label(u), nodes_.label(v));
        return out;
    }

    /// Nodes reachable from `from` by a directed path of length >= 1.
    NodeMask descendants(NodeMask from) const {
        NodeMask seen = 0, frontier = 0;
        for (NodeMask r = from; r; r &= r - 1) frontier |= children_[std::countr_zero(r)];
        while (frontier & ~seen) {
            NodeMask fresh = frontier & ~seen;
            seen |= fresh;
            frontier = 0;
            for (NodeMask r = fresh; r; r &= r - 1) frontier |= children_[std::countr_zero(r)];
        }
        return seen;
    }

    NodeMask ancestors(NodeMask from) const {
        NodeMask seen = 0, frontier = 0;
        for (NodeMask r = from; r; r &= r - 1) frontier |= parents_[std::countr_zero(r)];
        while (frontier & ~seen) {
            NodeMask fresh = frontier & ~seen;
            seen |= fresh;
            frontier = 0;
            for (NodeMask r = fresh; r; r &= r - 1) frontier |= parents_[std::countr_zero(r)];
        }
        return seen;
    }

private:
    Universe nodes_;
    std::vector<NodeMask> children_, parents_;
};

// ---------------------------------------------------------------------------
// Basic constructions

inline Graph two_section(const Hypergraph& h) {
    Graph g(h.nodes());
    for (auto e : h.edges())
        for (NodeMask r = e; r; r &= r - 1) {
            std::size_t u = std::countr_zero(r);
            for (NodeMask s = r & (r - 1); s; s &= s - 1) g.add_edge(u, std::countr_zero(s));
        }
    return g;
}

/// Keeps only inclusion-maximal edges.
inline Hypergraph reduce(const Hypergraph& h) {
    std::vector<NodeMask> keep;
    const auto& es = h.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < es.size() && !dominated; ++j)
            dominated = i != j && is_subset(es[i], es[j]) && es[i] != es[j];
        if (!dominated) keep.push_back(es[i]);
    }
    return Hypergraph::from_masks(h.nodes(), keep);
}

/// True iff every edge of `small` is contained in some edge of `big` (compared by label).
inline bool extends(const Hypergraph& small, const Hypergraph& big) {
    for (const auto& e : small.edge_labels()) {
        bool found = false;
        for (const auto& f : big.edge_labels()) {
            if (std::includes(f.begin(), f.end(), e.begin(), e.end())) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Nodes reachable from `from` in g without entering `blocked`.
inline NodeMask reachable(const Graph& g, NodeMask from, NodeMask blocked) {
    NodeMask seen = from & ~blocked, frontier = seen;
    while (frontier) {
        NodeMask next = 0;
        for (NodeMask r = frontier; r; r &= r - 1) next |= g.neighbors(std::countr_zero(r));
        next &= ~blocked & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

/// True iff every path between a and b passes through c.
inline bool separates(const Graph& g, NodeMask a, NodeMask b, NodeMask c) {
    if (a == 0 || b == 0) throw InconsistentInput("separation query needs nonempty node sets");
    if ((a & b) || (a & c) || (b & c)) throw InconsistentInput("separation query node sets must be disjoint");
    return (reachable(g, a, c) & b) == 0;
}

inline bool separates(const Graph& g, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                      const std::vector<NodeId>& c) {
    return separates(g, g.nodes().mask(a), g.nodes().mask(b), g.nodes().mask(c));
}

/// Connected components of a hypergraph as groups of edge indices (in edge order).
inline std::vector<std::vector<std::size_t>> edge_components(const Hypergraph& h) {
    const auto& es = h.edges();
    std::vector<int> comp(es.size(), -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < es.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> group{s};
        comp[s] = static_cast<int>(out.size());
        NodeMask cover = es[s];
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < es.size(); ++j)
                if (comp[j] < 0 && (es[j] & cover)) {
                    comp[j] = static_cast<int>(out.size());
                    group.push_back(j);
                    cover |= es[j];
                    grew = true;
                }
        }
        std::sort(group.begin(), group.end());
        out.push_back(group);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graham reduction

struct GrahamStep {
    enum class Kind { remove_node, remove_edge } kind;
    NodeId node;                  // remove_node
    std::vector<NodeId> edge;     // remove_edge: the deleted edge (after earlier node removals)
    std::vector<NodeId> superset; // remove_edge: an edge containing it (empty when the edge became empty)
};

struct GrahamResult {
    bool acyclic = false;
    std::vector<GrahamStep> trace;
    EdgeList residual; // edges left when no rule applies
};

/// Applies node deletion (node in exactly one edge) and edge deletion (edge
/// contained in another, or emptied) until neither applies.
inline GrahamResult graham(const Hypergraph& h) {
    GrahamResult res;
    const Universe& U = h.nodes();
    std::vector<NodeMask> es = h.edges();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < U.size(); ++v) {
            NodeMask bit = NodeMask{1} << v;
            std::size_t count = 0, where = 0;
            for (std::size_t i = 0; i < es.size(); ++i)
                if (es[i] & bit) {
                    ++count;
                    where = i;
                }
            if (count == 1) {
                es[where] &= ~bit;
                res.trace.push_back({GrahamStep::Kind::remove_node, U.label(v), {}, {}});
                changed = true;
            }
        }
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::optional<std::size_t> sup;
            for (std::size_t j = 0; j < es.size(); ++j)
                if (i != j && is_subset(es[i], es[j])) {
                    sup = j;
                    break;
                }
            if (es[i] == 0 || sup) {
                res.trace.push_back({GrahamStep::Kind::remove_edge, {}, U.names(es[i]), sup ? U.names(es[*sup]) : std::vector<NodeId>{}});
                es.erase(es.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    std::sort(es.begin(), es.end(), mask_label_less);
    for (auto e : es) res.residual.push_back(U.names(e));
    res.acyclic = es.empty();
    return res;
}

// ---------------------------------------------------------------------------
// Running intersection orderings

/// Edge ordering with the running intersection property. Position 0 has an
/// empty separator; for k >= 1, separators[k] = E_k ∩ (E_0 ∪ … ∪ E_{k-1}) and
/// parents[k] is a position j < k with separators[k] ⊆ E_j.
struct RioOrdering {
    std::vector<std::size_t> order; // indices into Hypergraph::edges()
    std::vector<NodeMask> separators;
    std::vector<NodeMask> residuals;
    std::vector<std::size_t> parents;
};

/// Maximum cardinality search over edges, checked for the running intersection
/// property. Disconnected inputs are handled per component. `first` optionally
/// fixes the starting edge of its component.
inline std::optional<RioOrdering> rio_ordering(const Hypergraph& h, std::optional<std::size_t> first = std::nullopt) {
    const auto& es = h.edges();
    RioOrdering out;
    auto comps = edge_components(h);
    if (first) {
        auto it = std::find_if(comps.begin(), comps.end(), [&](const auto& c) {
            return std::find(c.begin(), c.end(), *first) != c.end();
        });
        if (it == comps.end()) throw InconsistentInput("starting edge index out of range");
        std::rotate(comps.begin(), it, it + 1);
    }
    NodeMask covered = 0;
    for (const auto& comp : comps) {
        std::vector<bool> used(es.size(), false);
        std::size_t start = comp.front();
        if (first && std::find(comp.begin(), comp.end(), *first) != comp.end()) start = *first;
        std::size_t base = out.order.size();
        NodeMask comp_cover = 0;
        for (std::size_t step = 0; step < comp.size(); ++step) {
            std::size_t pick = start;
            if (step > 0) {
                int best = -1;
                for (auto i : comp)
                    if (!used[i]) {
                        int c = popcount(es[i] & comp_cover);
                        if (c > best) {
                            best = c;
                            pick = i;
                        }
                    }
            }
            used[pick] = true;
            NodeMask sep = es[pick] & covered;
            std::size_t parent = out.order.size();
            if (step > 0) {
                bool ok = false;
                for (std::size_t k = base; k < out.order.size(); ++k)
                    if (is_subset(sep, es[out.order[k]])) {
                        parent = k;
                        ok = true;
                        break;
                    }
                if (!ok) return std::nullopt;
            } else if (!out.order.empty()) {
                parent = 0;
            }
            out.order.push_back(pick);
            out.separators.push_back(sep);
            out.residuals.push_back(es[pick] & ~sep);
            out.parents.push_back(out.order.size() == 1 ? 0 : parent);
            covered |= es[pick];
            comp_cover |= es[pick];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chordality

/// Maximum cardinality search. Returns nodes in selection order; ties go to the
/// lexicographically largest label. The reverse of the selection order is a
/// perfect elimination ordering whenever the graph is chordal.
inline std::vector<std::size_t> mcs_order(const Graph& g) {
    std::size_t n = g.size();
    std::vector<int> weight(n, 0);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = n; v-- > 0;)
            if (!done[v] && (pick == n || weight[v] > weight[pick])) pick = v;
        done[pick] = true;
        order.push_back(pick);
        for (NodeMask r = g.neighbors(pick); r; r &= r - 1) {
            std::size_t u = std::countr_zero(r);
            if (!done[u]) ++weight[u];
        }
    }
    return order;
}

/// True iff each node's neighbours later in `elimination` form a clique.
inline bool is_perfect_elimination_ordering(const Graph& g, const std::vector<std::size_t>& elimination) {
    NodeMask later = g.nodes().full();
    for (auto v : elimination) {
        later &= ~(NodeMask{1} << v);
        if (!g.is_clique(g.neighbors(v) & later)) return false;
    }
    return true;
}

struct ChordalityResult {
    bool chordal = false;
    std::vector<std::size_t> elimination_order; // perfect elimination ordering when chordal
};

inline ChordalityResult is_chordal(const Graph& g) {
    auto sel = mcs_order(g);
    std::vector<std::size_t> peo(sel.rbegin(), sel.rend());
    ChordalityResult r;
    r.chordal = is_perfect_elimination_ordering(g, peo);
    if (r.chordal) r.elimination_order = std::move(peo);
    return r;
}

/// Clique hypergraph of a chordal graph: its inclusion-maximal cliques.
inline Hypergraph maximal_cliques_chordal(const Graph& g) {
    auto chk = is_chordal(g);
    if (!chk.chordal) throw InconsistentInput("maximal_cliques_chordal requires a chordal graph");
    std::vector<NodeMask> cands;
    NodeMask later = g.nodes().full();
    for (auto v : chk.elimination_order) {
        NodeMask bit = NodeMask{1} << v;
        later &= ~bit;
        cands.push_back((g.neighbors(v) & later) | bit);
    }
    std::vector<NodeMask> maximal;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < cands.size() && !dom; ++j)
            dom = i != j && is_subset(cands[i], cands[j]) && (cands[i] != cands[j] || j < i);
        if (!dom) maximal.push_back(cands[i]);
    }
    return Hypergraph::from_masks(g.nodes(), maximal);
}

// ---------------------------------------------------------------------------
// Triangulations

struct Triangulation {
    Graph graph;
    std::vector<std::size_t> elimination_order; // a perfect elimination ordering of `graph`
};

/// MCS-M: a minimal triangulation in O(nm). Ties between equal weights go to
/// the lexicographically largest label.
inline Triangulation minimal_triangulation_with_order(const Graph& g) {
    std::size_t n = g.size();
    Graph h = g;
    std::vector<int> weight(n, 0);
    NodeMask unnumbered = g.nodes().full();
    std::vector<std::size_t> selection;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t v = n;
        for (std::size_t u = n; u-- > 0;)
            if ((unnumbered >> u & 1) && (v == n || weight[u] > weight[v])) v = u;
        unnumbered &= ~(NodeMask{1} << v);
        // u joins S when some path v ... u runs through unnumbered nodes of weight < w(u).
        std::vector<std::size_t> reached;
        for (NodeMask r = unnumbered; r; r &= r - 1) {
            std::size_t u = std::countr_zero(r);
            if (g.has_edge(v, u)) {
                reached.push_back(u);
                continue;
            }
            NodeMask allowed = 0;
            for (NodeMask s = unnumbered; s; s &= s - 1) {
                std::size_t x = std::countr_zero(s);
                if (x != u && weight[x] < weight[u]) allowed |= NodeMask{1} << x;
            }
            NodeMask seen = g.neighbors(v) & allowed, frontier = seen;
            while (frontier) {
                NodeMask next = 0;
                for (NodeMask q = frontier; q; q &= q - 1) next |= g.neighbors(std::countr_zero(q));
                next &= allowed & ~seen;
                seen |= next;
                frontier = next;
            }
            bool hit = false;
            for (NodeMask q = seen; q && !hit; q &= q - 1) hit = g.has_edge(std::countr_zero(q), u);
            if (hit) reached.push_back(u);
        }
        for (auto u : reached) {
            ++weight[u];
            if (!h.has_edge(u, v)) h.add_edge(u, v);
        }
        selection.push_back(v);
    }
    return {h, std::vector<std::size_t>(selection.rbegin(), selection.rend())};
}

inline Graph minimal_triangulation(const Graph& g) { return minimal_triangulation_with_order(g).graph; }

/// Fill graph produced by eliminating nodes in the given order.
inline Graph elimination_fill(const Graph& g, const std::vector<std::size_t>& order) {
    Graph h = g;
    Graph cur = g;
    NodeMask alive = g.nodes().full();
    for (auto v : order) {
        alive &= ~(NodeMask{1} << v);
        NodeMask nb = cur.neighbors(v) & alive;
        for (NodeMask r = nb; r; r &= r - 1) {
            std::size_t a = std::countr_zero(r);
            for (NodeMask s = r & (r - 1); s; s &= s - 1) {
                std::size_t b = std::countr_zero(s);
                if (!cur.has_edge(a, b)) {
                    cur.add_edge(a, b);
                    h.add_edge(a, b);
                }
            }
        }
    }
    return h;
}

struct TriangulationEnumeration {
    std::vector<Graph> triangulations; // canonical order: by fill size, then fill edge list
    bool truncated = false;
};

namespace detail {

struct FillState {
    NodeMask eliminated;
    std::vector<std::uint64_t> fill;
    bool operator==(const FillState&) const = default;
};

struct FillStateHash {
    std::size_t operator()(const FillState& s) const {
        std::size_t h = std::hash<std::uint64_t>{}(s.eliminated);
        for (auto w : s.fill) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
        return h;
    }
};

inline bool fill_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

} // namespace detail

/// All minimal triangulations, found by exhausting elimination orderings (with
/// memoisation on the eliminated set and accumulated fill) and keeping the
/// inclusion-minimal fill sets. Refuses graphs with more than `max_nodes` nodes.
inline TriangulationEnumeration enumerate_minimal_triangulations(const Graph& g, std::size_t cap = 1000,
                                                                 std::size_t max_nodes = 12) {
    std::size_t n = g.size();
    if (n > max_nodes)
        throw GuardExceeded("triangulation enumeration refused: " + std::to_string(n) + " nodes exceeds bound " +
                            std::to_string(max_nodes));
    std::size_t words = (n * n + 63) / 64;
    auto pair_bit = [n](std::size_t a, std::size_t b) { return std::min(a, b) * n + std::max(a, b); };

    std::unordered_set<detail::FillState, detail::FillStateHash> seen;
    std::set<std::vector<std::uint64_t>> complete;

    struct Frame {
        NodeMask eliminated;
        std::vector<NodeMask> adj; // elimination graph
        std::vector<std::uint64_t> fill;
    };
    std::vector<Frame> stack;
    Frame root{0, {}, std::vector<std::uint64_t>(words, 0)};
    for (std::size_t v = 0; v < n; ++v) root.adj.push_back(g.neighbors(v));
    stack.push_back(std::move(root));
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.eliminated == g.nodes().full()) {
            complete.insert(f.fill);
            continue;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (f.eliminated >> v & 1) continue;
            Frame nf{f.eliminated | (NodeMask{1} << v), f.adj, f.fill};
            NodeMask nb = nf.adj[v] & ~nf.eliminated;
            for (NodeMask r = nb; r; r &= r - 1) {
                std::size_t a = std::countr_zero(r);
                for (NodeMask s = r & (r - 1); s; s &= s - 1) {
                    std::size_t b = std::countr_zero(s);
                    if (!(nf.adj[a] >> b & 1)) {
                        nf.adj[a] |= NodeMask{1} << b;
                        nf.adj[b] |= NodeMask{1} << a;
                        auto bit = pair_bit(a, b);
                        nf.fill[bit / 64] |= std::uint64_t{1} << (bit % 64);
                    }
                }
            }
            detail::FillState key{nf.eliminated, nf.fill};
            if (!seen.insert(key).second) continue;
            stack.push_back(std::move(nf));
        }
    }

    std::vector<std::vector<std::uint64_t>> fills(complete.begin(), complete.end());
    std::vector<std::vector<std::uint64_t>> minimal;
    for (std::size_t i = 0; i < fills.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < fills.size() && !dom; ++j)
            dom = i != j && detail::fill_subset(fills[j], fills[i]) && fills[j] != fills[i];
        if (!dom) minimal.push_back(fills[i]);
    }

    struct Entry {
        std::vector<std::pair<std::size_t, std::size_t>> fill;
        Graph graph;
    };
    std::vector<Entry> entries;
    for (const auto& f : minimal) {
        Entry e{{}, g};
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                auto bit = pair_bit(a, b);
                if (f[bit / 64] >> (bit % 64) & 1) {
                    e.fill.emplace_back(a, b);
                    e.graph.add_edge(a, b);
                }
            }
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.fill.size() != y.fill.size()) return x.fill.size() < y.fill.size();
        return x.fill < y.fill;
    });
    TriangulationEnumeration out;
    for (auto& e : entries) {
        if (out.triangulations.size() >= cap) {
            out.truncated = true;
            break;
        }
        out.triangulations.push_back(std::move(e.graph));
    }
    return out;
}

/// Edges of `h` that are not edges of `g` (same node universe).
inline std::vector<std::pair<NodeId, NodeId>> fill_edges(const Graph& g, const Graph& h) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (auto [u, v] : h.edges())
        if (!g.has_edge(u, v)) out.emplace_back(g.nodes().label(u), g.nodes().label(v));
    return out;
}

} // namespace adhesive
