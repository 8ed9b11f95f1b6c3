#pragma once
// JSON reading and writing for scenarios, graphs, CI sets, probability tables
// and inequality systems, plus the provenance header put on derived systems.

#include "adhesive/causal.hpp"
#include "adhesive/distributions.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/polyhedra.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace adhesive::io {

using json = nlohmann::json;

namespace detail {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InconsistentInput(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InconsistentInput(std::string("field '") + key + "': " + e.what());
    }
}

inline Universe declared_nodes(const json& j, std::vector<NodeId> fallback) {
    if (j.contains("nodes")) return Universe(field<std::vector<NodeId>>(j, "nodes"));
    return Universe(std::move(fallback));
}

inline std::vector<std::pair<NodeId, NodeId>> pairs(const json& j, const char* key) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const auto& e : field<std::vector<std::vector<NodeId>>>(j, key)) {
        if (e.size() != 2) throw InconsistentInput(std::string("'") + key + "' entries must have two nodes");
        out.emplace_back(e[0], e[1]);
    }
    return out;
}

} // namespace detail

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InconsistentInput(std::string("malformed JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InconsistentInput("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load(const std::string& path) { return parse(read_file(path)); }

// {"nodes": [...], "edges": [[...], ...]}. "nodes" is optional; when given it
// must be exactly the union of the edges.
inline Hypergraph hypergraph_from_json(const json& j) {
    auto edges = detail::field<EdgeList>(j, "edges");
    if (edges.empty()) throw InconsistentInput("scenario has no edges");
    Hypergraph h(edges);
    if (j.contains("nodes") && !(detail::declared_nodes(j, {}) == h.nodes()))
        throw InconsistentInput("'nodes' does not match the union of the edges");
    return h;
}

inline json to_json(const Hypergraph& h) {
    return {{"nodes", h.nodes().labels()}, {"edges", h.edge_labels()}};
}

// Undirected graphs share the hypergraph schema; every edge has two nodes.
inline Graph graph_from_json(const json& j) {
    auto edges = detail::pairs(j, "edges");
    std::vector<NodeId> all;
    for (const auto& [u, v] : edges) all.insert(all.end(), {u, v});
    return Graph(detail::declared_nodes(j, all), edges);
}

inline json to_json(const Graph& g) {
    json e = json::array();
    for (const auto& [u, v] : g.edge_labels()) e.push_back({u, v});
    return {{"nodes", g.nodes().labels()}, {"edges", e}};
}

inline Digraph digraph_from_json(const json& j) {
    auto arcs = detail::pairs(j, "arcs");
    std::vector<NodeId> all;
    for (const auto& [u, v] : arcs) all.insert(all.end(), {u, v});
    return Digraph(detail::declared_nodes(j, all), arcs);
}

inline json to_json(const Digraph& d) {
    json a = json::array();
    for (const auto& [u, v] : d.arc_labels()) a.push_back({u, v});
    return {{"nodes", d.nodes().labels()}, {"arcs", a}};
}

// [{"a": [...], "b": [...], "c": [...]}, ...]; "c" may be omitted.
inline CiSet ci_set_from_json(const json& j) {
    if (!j.is_array()) throw InconsistentInput("CI set must be a JSON array");
    std::vector<NodeId> all;
    struct Raw {
        std::vector<NodeId> a, b, c;
    };
    std::vector<Raw> raw;
    for (const auto& s : j) {
        Raw r{detail::field<std::vector<NodeId>>(s, "a"), detail::field<std::vector<NodeId>>(s, "b"),
              s.contains("c") ? detail::field<std::vector<NodeId>>(s, "c") : std::vector<NodeId>{}};
        for (const auto* v : {&r.a, &r.b, &r.c}) all.insert(all.end(), v->begin(), v->end());
        raw.push_back(std::move(r));
    }
    CiSet out{Universe(all)};
    for (const auto& r : raw) out.insert(ci(out.universe(), r.a, r.b, r.c));
    return out;
}

inline json to_json(const CiSet& s) {
    json out = json::array();
    const auto& u = s.universe();
    for (const auto& x : s.statements()) out.push_back({{"a", u.names(x.a)}, {"b", u.names(x.b)}, {"c", u.names(x.c)}});
    return out;
}

// {"vars": [{"name": "A", "card": 2}, ...], "probs": [{"outcome": [0, 1], "p": "3/8"}, ...]}.
// Outcomes not listed have probability zero; "p" may be a string or a number.
inline ProbTable prob_table_from_json(const json& j) {
    std::vector<Variable> vars;
    for (const auto& v : detail::field<json>(j, "vars"))
        vars.push_back({detail::field<std::string>(v, "name"), v.contains("card") ? detail::field<int>(v, "card") : 2});
    std::size_t n = 1;
    for (const auto& v : vars) {
        if (v.card < 1) throw InconsistentInput("variable '" + v.name + "' has no outcomes");
        n *= static_cast<std::size_t>(v.card);
    }
    std::vector<Rational> w(n);
    std::vector<char> seen(n, 0);
    for (const auto& e : detail::field<json>(j, "probs")) {
        auto o = detail::field<Outcome>(e, "outcome");
        if (o.size() != vars.size()) throw InconsistentInput("outcome length does not match 'vars'");
        std::size_t idx = 0;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (o[k] < 0 || o[k] >= vars[k].card) throw InconsistentInput("outcome " + outcome_str(o) + " out of range");
            idx = idx * static_cast<std::size_t>(vars[k].card) + static_cast<std::size_t>(o[k]);
        }
        if (seen[idx]) throw InconsistentInput("outcome " + outcome_str(o) + " listed twice");
        seen[idx] = 1;
        const json& p = e.at("p");
        w[idx] = p.is_string() ? Rational::parse(p.get<std::string>()) : Rational::parse(p.dump());
    }
    return ProbTable(std::move(vars), std::move(w));
}

inline json to_json(const ProbTable& p) {
    json vars = json::array(), probs = json::array();
    for (const auto& v : p.variables()) vars.push_back({{"name", v.name}, {"card", v.card}});
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.weights()[i].is_zero()) probs.push_back({{"outcome", p.outcome(i)}, {"p", p.weights()[i].str()}});
    return {{"vars", vars}, {"probs", probs}};
}

// {"coords": [...], "ineqs": [{"a": ["1", "-1/2", ...], "b": "0"}], "eqs": [...]};
// rows read a·x >= b and a·x = b.
inline json to_json(const LinIneqSystem& s) {
    auto rows = [&](const std::vector<Row>& rs) {
        json out = json::array();
        for (const auto& r : rs) {
            json a = json::array();
            for (const auto& x : r.a) a.push_back(x.str());
            out.push_back({{"a", a}, {"b", r.b.str()}, {"text", format_row(s.coords, r, &rs == &s.eqs)}});
        }
        return out;
    };
    return {{"coords", s.coords}, {"infeasible", s.infeasible}, {"ineqs", rows(s.ineqs)}, {"eqs", rows(s.eqs)}};
}

inline LinIneqSystem system_from_json(const json& j) {
    LinIneqSystem s(detail::field<std::vector<std::string>>(j, "coords"));
    if (j.contains("infeasible")) s.infeasible = j.at("infeasible").get<bool>();
    auto rows = [&](const char* key, bool eq) {
        if (!j.contains(key)) return;
        for (const auto& r : j.at(key)) {
            RationalVector a;
            for (const auto& x : detail::field<std::vector<std::string>>(r, "a")) a.push_back(Rational::parse(x));
            Rational b = Rational::parse(detail::field<std::string>(r, "b"));
            eq ? s.add_eq(std::move(a), std::move(b)) : s.add_ineq(std::move(a), std::move(b));
        }
    };
    rows("ineqs", false);
    rows("eqs", true);
    return s;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex(std::uint64_t x) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) s[static_cast<std::size_t>(i)] = d[x & 15];
    return s;
}

/// Hash of the canonical form (sorted labels, sorted edges), so that two files
/// describing the same scenario get the same hash.
inline std::string scenario_hash(const Hypergraph& h) { return hex(fnv1a(to_json(h).dump())); }

struct Provenance {
    std::string command;
    Hypergraph scenario;
    CiSet ci;
    std::vector<std::string> substituted; // eliminated through equalities
    std::vector<std::string> order;       // Fourier-Motzkin order
    std::vector<std::string> notes;
};

inline json to_json(const Provenance& p) {
    json ci = json::array();
    for (const auto& s : p.ci.statements()) ci.push_back(s.str(p.ci.universe()));
    return {{"command", p.command},      {"scenario", to_json(p.scenario)}, {"scenario_hash", scenario_hash(p.scenario)},
            {"ci", ci},                  {"substituted", p.substituted},    {"elimination_order", p.order},
            {"notes", p.notes}};
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

/// '#' comment lines, which parse_text skips.
inline std::string header_text(const Provenance& p) {
    std::string s = "# command: " + p.command + "\n";
    s += "# scenario: " + p.scenario.str() + "\n";
    s += "# scenario hash: fnv1a64:" + scenario_hash(p.scenario) + "\n";
    s += "# independences (" + std::to_string(p.ci.size()) + "):";
    for (const auto& x : p.ci.statements()) s += " " + x.str(p.ci.universe());
    s += "\n# substituted: " + (p.substituted.empty() ? "-" : join(p.substituted)) + "\n";
    s += "# elimination order: " + (p.order.empty() ? "-" : join(p.order)) + "\n";
    for (const auto& n : p.notes) s += "# " + n + "\n";
    return s;
}

} // namespace adhesive::io
