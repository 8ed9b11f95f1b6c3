#pragma once
// Named example scenarios and causal structures used by the CLI's
// `reproduce` command, the tests and the acceptance runner.

#include "adhesive/causal.hpp"
#include "adhesive/hypergraph.hpp"

#include <string>
#include <vector>

namespace adhesive::catalog {

/// Two parties, two binary settings each.
inline Hypergraph chsh() { return Hypergraph(EdgeList{{"A1", "B1"}, {"A1", "B2"}, {"A2", "B1"}, {"A2", "B2"}}); }

/// Two parties, three settings each.
inline Hypergraph bell33() {
    EdgeList e;
    for (const char* a : {"A1", "A2", "A3"})
        for (const char* b : {"B1", "B2", "B3"}) e.push_back({a, b});
    return Hypergraph(e);
}

// Cliques {A1,A2,A3,Bk} and {Ak,B1,B2,B3} of the two triangulations of bell33().
inline Hypergraph bell33_a_cliques() {
    return Hypergraph(EdgeList{{"A1", "A2", "A3", "B1"}, {"A1", "A2", "A3", "B2"}, {"A1", "A2", "A3", "B3"}});
}
inline Hypergraph bell33_b_cliques() {
    return Hypergraph(EdgeList{{"A1", "B1", "B2", "B3"}, {"A2", "B1", "B2", "B3"}, {"A3", "B1", "B2", "B3"}});
}

/// Five-variable scenario whose constrained projection shows non-Shannon rows.
inline Hypergraph five_var() {
    return Hypergraph(EdgeList{{"A", "B", "C"}, {"B", "C", "D"}, {"A", "E"}, {"B", "E"}, {"C", "E"}, {"A", "D"}});
}
inline const char* five_var_coords() { return "B,C,D,AD,AE,BD,BE,CD,CE,ABC,BCD"; }
inline CiSet five_var_ci() {
    Universe u = five_var().nodes();
    CiSet s(u);
    s.insert(ci(u, {"D"}, {"E"}, {"A", "B", "C"}));
    return s;
}

/// Fork with common cause B, and the same with an extra arc A -> D.
inline Digraph fork() { return Digraph(Universe{"A", "B", "C", "D"}, {{"B", "A"}, {"B", "C"}, {"B", "D"}}); }
inline Digraph fork_plus() {
    return Digraph(Universe{"A", "B", "C", "D"}, {{"B", "A"}, {"B", "C"}, {"B", "D"}, {"A", "D"}});
}
inline Hypergraph star() { return Hypergraph(EdgeList{{"A", "B"}, {"B", "D"}, {"B", "C"}}); }
inline Hypergraph star_merged() { return Hypergraph(EdgeList{{"A", "B", "D"}, {"B", "C"}}); }

/// Two inputs, a message, two guesses.
inline Digraph info_causality_dag() {
    return Digraph(Universe{"M", "X0", "X1", "Y0", "Y1"}, {{"X0", "M"}, {"X1", "M"}, {"M", "Y0"}, {"M", "Y1"}});
}
inline Hypergraph info_causality() { return Hypergraph(EdgeList{{"X0", "Y0"}, {"X1", "Y1"}, {"M"}}); }

} // namespace adhesive::catalog
