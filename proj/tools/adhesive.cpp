// Command line front end: triangulate, classify, derive-entropic, derive-prob,
// report and reproduce.

#include "adhesive/catalog.hpp"
#include "adhesive/corr_polytope.hpp"
#include "adhesive/io.hpp"
#include "adhesive/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace adhesive;
using io::json;

namespace {

struct Options {
    std::string scenario, dag, mrf, ci, coords, triangulation, cards, out;
    std::string format = "text";
    std::size_t max_nodes = 10;
    unsigned jobs = 1;
    bool combine = false, full_axioms = false, correlators = false;
    std::string mode = "triangulation";
    std::string example;
};

// What a subcommand produced, in both output formats.
struct Output {
    std::string text;
    json doc = json::object();
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Hypergraph load_scenario(const Options& o) {
    if (o.scenario.empty()) throw InconsistentInput("--scenario FILE is required");
    return io::hypergraph_from_json(io::load(o.scenario));
}

std::optional<CausalModel> load_model(const Options& o) {
    if (!o.dag.empty() && !o.mrf.empty()) throw InconsistentInput("give either --dag or --mrf, not both");
    if (!o.dag.empty()) return CausalModel(io::digraph_from_json(io::load(o.dag)));
    if (!o.mrf.empty()) return CausalModel(io::graph_from_json(io::load(o.mrf)));
    return std::nullopt;
}

GuardOptions guards(const Options& o) {
    GuardOptions g;
    g.max_nodes = o.max_nodes;
    return g;
}

EntropicOptions entropic_options(const Options& o, const Universe& vars) {
    EntropicOptions e;
    e.guards = guards(o);
    e.fm.jobs = o.jobs;
    e.reduced_axioms = !o.full_axioms;
    if (!o.coords.empty()) e.coords = parse_coord_list(o.coords, EntropySpace(vars, e.max_vars));
    if (!o.triangulation.empty()) e.triangulation = io::hypergraph_from_json(io::load(o.triangulation));
    return e;
}

Cards parse_cards(const std::string& text) {
    Cards c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InconsistentInput("--cards expects NAME=N pairs, got '" + item + "'");
        try {
            c[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InconsistentInput("bad cardinality in '" + item + "'");
        }
    }
    return c;
}

std::string ci_lines(const CiSet& s, const std::string& indent) {
    auto max = maximal_statements(s);
    std::string t = indent + "independences: " + std::to_string(s.size()) + " statements, " +
                    std::to_string(max.size()) + " maximal\n";
    for (const auto& x : max) t += indent + "  " + x.str(s.universe()) + "\n";
    return t;
}

json ci_json(const CiSet& s) {
    json all = json::array(), max = json::array();
    for (const auto& x : s.statements()) all.push_back(x.str(s.universe()));
    for (const auto& x : maximal_statements(s)) max.push_back(x.str(s.universe()));
    return {{"count", s.size()}, {"statements", all}, {"maximal", max}};
}

json rays_json(const std::vector<RationalVector>& rays) {
    json out = json::array();
    for (const auto& r : rays) {
        json v = json::array();
        for (const auto& x : r) v.push_back(x.str());
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

Output triangulate(const Hypergraph& m, const Options& o) {
    auto list = triangulate_scenario(m, guards(o));
    Output out;
    out.text = "scenario " + m.str() + "\n";
    out.text += "minimal triangulations: " + std::to_string(list.items.size()) + (list.truncated ? " (truncated)" : "") + "\n";
    json items = json::array();
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        const auto& t = list.items[i];
        std::string fill;
        json fj = json::array();
        for (const auto& [u, v] : t.fill) {
            fill += (fill.empty() ? "" : " ") + u + "-" + v;
            fj.push_back({u, v});
        }
        out.text += "[" + std::to_string(i + 1) + "] cliques " + t.cliques.str() + "\n";
        out.text += "    fill: " + (fill.empty() ? "-" : fill) + "\n";
        out.text += ci_lines(t.ci, "    ");
        items.push_back({{"cliques", io::to_json(t.cliques)}, {"fill", fj}, {"ci", ci_json(t.ci)}});
    }
    out.doc = {{"scenario", io::to_json(m)}, {"truncated", list.truncated}, {"triangulations", items}};
    return out;
}

Output classify_cmd(const Hypergraph& m, const CausalModel& g, const Options& o) {
    auto v = classify(m, g, guards(o));
    Output out;
    out.text = "case (" + case_name(v.which) + ")" + (v.partial ? " [partial: triangulation enumeration truncated]" : "") + "\n";
    out.text += v.guidance + "\n";
    json tris = json::array();
    for (std::size_t i = 0; i < v.triangulations.size(); ++i) {
        const auto& a = v.model_in_tri[i];
        const auto& b = v.tri_in_model[i];
        out.text += "[" + std::to_string(i + 1) + "] " + v.triangulations[i].cliques.str() +
                    (v.witness && *v.witness == i ? "  <- witness" : "") + "\n";
        auto list = [&](const std::vector<CiStatement>& w, const std::string& label) {
            out.text += "    " + label + (w.empty() ? ": yes\n" : ": no, e.g.");
            json j = json::array();
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (k < 4) out.text += " " + w[k].str(m.nodes());
                j.push_back(w[k].str(m.nodes()));
            }
            if (w.size() > 4) out.text += " (+" + std::to_string(w.size() - 4) + " more)";
            if (!w.empty()) out.text += "\n";
            return j;
        };
        json ja = list(a.witnesses, "causal independences inside the triangulation's");
        json jb = list(b.witnesses, "triangulation independences inside the causal ones");
        tris.push_back({{"cliques", io::to_json(v.triangulations[i].cliques)},
                        {"model_in_triangulation", a.included},
                        {"model_not_in_triangulation", ja},
                        {"triangulation_in_model", b.included},
                        {"triangulation_not_in_model", jb}});
    }
    out.doc = {{"case", case_name(v.which)},
               {"partial", v.partial},
               {"guidance", v.guidance},
               {"witness", v.witness ? json(*v.witness) : json(nullptr)},
               {"model_ci", ci_json(v.model_ci)},
               {"triangulations", tris}};
    return out;
}

Output system_output(const LinIneqSystem& s, const io::Provenance& p) {
    Output out;
    out.text = io::header_text(p) + to_text(s);
    out.doc = {{"provenance", io::to_json(p)}, {"system", io::to_json(s)}};
    return out;
}

io::Provenance provenance(const std::string& cmd, const Hypergraph& m, const CiSet& ci, const FmStats& st) {
    return {cmd, m, ci, st.substituted, st.order, {}};
}

Output derive_entropic(const Hypergraph& m, const std::optional<CausalModel>& g, const Options& o) {
    std::optional<CiSet> extra;
    if (!o.ci.empty()) extra = io::ci_set_from_json(io::load(o.ci));
    Universe vars = m.nodes();
    if (g) vars = merge(vars, g->nodes());
    if (extra) vars = merge(vars, extra->universe());
    auto opt = entropic_options(o, vars);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> notes;
    EntropicResult r;
    if (g && !o.combine) {
        if (extra) throw InconsistentInput("--ci together with a causal model needs --combine");
        auto c = entropic_characterize_causal(m, *g, opt);
        r = std::move(c.result);
        notes.push_back("case (" + case_name(c.verdict.which) + "): " + c.verdict.guidance);
    } else {
        if (g) {
            CiSet model = g->ci(o.max_nodes);
            extra = extra ? model.embed_in(vars).unite(extra->embed_in(vars)) : model;
        }
        r = entropic_characterize(m, extra, opt);
    }
    if (r.triangulation) notes.push_back("triangulation " + r.triangulation->str());
    notes.push_back("rows " + std::to_string(r.system.ineqs.size()) + " inequalities, " +
                    std::to_string(r.system.eqs.size()) + " equalities; peak " + std::to_string(r.stats.max_rows) +
                    " rows; " + std::to_string(seconds_since(t0)) + " s");
    auto p = provenance("derive-entropic", m, r.ci, r.stats);
    p.notes = notes;
    return system_output(r.system, p);
}

Output derive_prob(const Hypergraph& m, const Options& o) {
    if (!o.coords.empty()) throw InconsistentInput("--coords applies to entropic derivations only");
    BellOptions b;
    if (o.mode == "direct")
        b.mode = BellMode::direct;
    else if (o.mode != "triangulation")
        throw InconsistentInput("--mode must be direct or triangulation");
    if (!o.triangulation.empty()) b.triangulation = io::hypergraph_from_json(io::load(o.triangulation));
    b.fm.jobs = o.jobs;
    Cards cards = parse_cards(o.cards);
    auto t0 = std::chrono::steady_clock::now();
    auto r = bell_project(m, cards, b);
    LinIneqSystem s = r.system;
    std::size_t facets = nontrivial_facets(r.system).size();
    if (o.correlators) {
        for (const auto& v : m.nodes().labels())
            if (card_of(cards, v) != 2) throw InconsistentInput("correlators need binary variables");
        s = to_correlators(s, m);
    }
    CiSet ci(m.nodes());
    if (b.mode == BellMode::via_triangulation) ci = ci_set_mrf(two_section(r.cliques), o.max_nodes);
    auto p = provenance("derive-prob --mode " + o.mode, m, ci, r.stats);
    p.notes.push_back("cliques " + r.cliques.str());
    p.notes.push_back(std::to_string(facets) + " facets beyond positivity; " + std::to_string(seconds_since(t0)) + " s");
    return system_output(s, p);
}

std::string format_lhs_ray(const std::vector<std::string>& coords, const RationalVector& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!r[i].is_zero()) s += (s.empty() ? "" : " ") + coords[i] + "=" + r[i].str();
    return s.empty() ? "0" : s;
}

Output report_cmd(const Hypergraph& m, const Options& o) {
    ApproximationOptions a;
    a.guards = guards(o);
    a.fm.jobs = o.jobs;
    if (!o.coords.empty()) a.coords = parse_coord_list(o.coords, EntropySpace(m.nodes(), a.max_vars));
    auto t0 = std::chrono::steady_clock::now();
    auto rep = approximation_report(m, a);
    Output out;
    out.text = "scenario " + m.str() + "\ncoordinates " + io::join(rep.coords, " ") + "\n";
    for (const auto& t : rep.triangulations) out.text += "triangulation " + t.str() + "\n";
    json members = json::array();
    for (const auto* mem : {&rep.triangulated, &rep.full, &rep.cliques}) {
        out.text += mem->name + ": ";
        if (mem->computed)
            out.text += std::to_string(mem->system.ineqs.size()) + " inequalities\n";
        else
            out.text += mem->note + "\n";
        json j = {{"name", mem->name}, {"computed", mem->computed}, {"note", mem->note}};
        if (mem->computed) j["system"] = io::to_json(mem->system);
        members.push_back(j);
    }
    json parts = json::array();
    for (std::size_t i = 0; i < rep.part_rays.size(); ++i) {
        out.text += "clique cones of triangulation " + std::to_string(i + 1) + ": " +
                    std::to_string(rep.part_rays[i].size()) + " extreme rays, " +
                    std::to_string(rep.part_rays_outside_full[i].size()) + " outside Shannon\n";
        parts.push_back({{"rays", rep.part_rays[i].size()}, {"outside_shannon", rep.part_rays_outside_full[i].size()}});
    }
    if (!rep.clique_rays.empty()) {
        out.text += "clique member: " + std::to_string(rep.clique_rays.size()) + " extreme rays, " +
                    std::to_string(rep.rays_outside_full.size()) + " outside Shannon";
        for (std::size_t i = 0; i < rep.rays_outside_tri.size(); ++i)
            out.text += ", " + std::to_string(rep.rays_outside_tri[i].size()) + " outside triangulation " + std::to_string(i + 1);
        out.text += "\n";
    }
    json verdicts = json::array();
    for (const auto& v : rep.verdicts) {
        out.text += v.inner + " vs " + v.outer + ": " + inclusion_name(v.verdict) + "\n";
        json j = {{"inner", v.inner}, {"outer", v.outer}, {"verdict", inclusion_name(v.verdict)}};
        if (v.outer_only) {
            out.text += "  inner-only row: " + format_row(rep.coords, *v.outer_only, false) + "\n";
            j["inner_only_row"] = format_row(rep.coords, *v.outer_only, false);
        }
        if (v.ray) {
            out.text += "  separating ray: " + format_lhs_ray(rep.coords, *v.ray) + "\n";
            j["ray"] = rays_json({*v.ray})[0];
        }
        verdicts.push_back(j);
    }
    out.text += (rep.partial ? "partial (triangulation enumeration truncated); " : "") + std::to_string(seconds_since(t0)) + " s\n";
    json trij = json::array();
    for (const auto& t : rep.triangulations) trij.push_back(io::to_json(t));
    out.doc = {{"scenario", io::to_json(m)}, {"coords", rep.coords},  {"triangulations", trij},
               {"members", members},         {"clique_parts", parts}, {"clique_rays", rep.clique_rays.size()},
               {"rays_outside_shannon", rep.rays_outside_full.size()},   {"verdicts", verdicts},
               {"partial", rep.partial}};
    return out;
}

// ---------------------------------------------------------------------------
// reproduce

void append(Output& into, const std::string& key, const Output& part, const std::string& title) {
    into.text += "== " + title + "\n" + part.text;
    into.doc[key] = part.doc;
}

Output reproduce(const Options& base) {
    Options o = base;
    Output out;
    const auto& id = o.example;
    if (id == "chsh") {
        auto m = catalog::chsh();
        append(out, "triangulations", triangulate(m, o), "minimal triangulations");
        o.correlators = true;
        append(out, "bell", derive_prob(m, o), "correlation polytope in correlators");
        EntropicOptions e = entropic_options(o, m.nodes());
        auto r = entropic_characterize(m, std::nullopt, e);
        auto p = provenance("derive-entropic", m, r.ci, r.stats);
        append(out, "entropic", system_output(r.system, p), "entropic inequalities under the default triangulation");
    } else if (id == "eq29") {
        auto m = catalog::five_var();
        o.coords = catalog::five_var_coords();
        auto e = entropic_options(o, m.nodes());
        auto t0 = std::chrono::steady_clock::now();
        auto r = entropic_characterize(m, std::nullopt, e);
        double with = seconds_since(t0);
        e.triangulation_ci = false;
        t0 = std::chrono::steady_clock::now();
        auto plain = entropic_characterize(m, std::nullopt, e);
        double without = seconds_since(t0);
        auto p = provenance("reproduce eq29", m, r.ci, r.stats);
        p.notes.push_back("projection time " + std::to_string(with) + " s with the independence, " +
                          std::to_string(without) + " s without");
        Output s = system_output(r.system, p);
        json ns = json::array();
        s.text += "# rows not implied by the unconstrained projection:\n";
        for (const auto& row : r.system.ineqs)
            if (!implies(plain.system, row.a, row.b)) {
                s.text += "#   " + format_row(r.system.coords, row, false) + "\n";
                ns.push_back(format_row(r.system.coords, row, false));
            }
        s.doc["beyond_shannon"] = ns;
        s.doc["seconds"] = {{"with_independence", with}, {"without", without}};
        append(out, "eq29", s, "five-variable scenario with D _|_ E | A,B,C");
    } else if (id == "bell33") {
        append(out, "report", report_cmd(catalog::bell33(), o), "3x3 Bell scenario, entropic approximations");
    } else if (id == "m1g1" || id == "m2g1") {
        Hypergraph m = id == "m1g1" ? catalog::star() : catalog::star_merged();
        append(out, "fork", classify_cmd(m, CausalModel(catalog::fork()), o), "common cause B -> A, C, D");
        if (id == "m1g1")
            append(out, "fork_plus", classify_cmd(m, CausalModel(catalog::fork_plus()), o),
                   "common cause with an extra arc A -> D");
        auto e = entropic_options(o, catalog::fork().nodes());
        auto c = entropic_characterize_causal(m, CausalModel(catalog::fork()), e);
        auto p = provenance("reproduce " + id, m, c.result.ci, c.result.stats);
        p.notes.push_back("case (" + case_name(c.verdict.which) + ")");
        append(out, "system", system_output(c.result.system, p), "entropic characterisation");
    } else if (id == "infocausality") {
        auto m = catalog::info_causality();
        CausalModel g(catalog::info_causality_dag());
        append(out, "classify", classify_cmd(m, g, o), "classification");
        auto e = entropic_options(o, m.nodes());
        auto c = entropic_characterize_causal(m, g, e);
        auto p = provenance("reproduce infocausality", m, c.result.ci, c.result.stats);
        p.notes.push_back("independences of the causal structure");
        append(out, "causal", system_output(c.result.system, p), "with the causal independences");
        auto t = entropic_characterize(m, std::nullopt, e);
        auto pt = provenance("reproduce infocausality", m, t.ci, t.stats);
        pt.notes.push_back("independences of the triangulation only");
        append(out, "triangulation", system_output(t.system, pt), "with the triangulation's independences");
    } else {
        throw InconsistentInput("unknown example '" + id + "' (chsh, eq29, bell33, m1g1, m2g1, infocausality)");
    }
    out.doc["example"] = id;
    return out;
}

void emit(const Output& out, const Options& o) {
    std::string body = o.format == "json" ? out.doc.dump(2) + "\n" : out.text;
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InconsistentInput("cannot write '" + o.out + "'");
    f << body;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marginal scenarios: triangulations, causal classification, entropic and Bell inequalities"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--scenario", o.scenario, "marginal scenario JSON {nodes, edges}");
    app.add_option("--dag", o.dag, "causal DAG JSON {nodes, arcs}");
    app.add_option("--mrf", o.mrf, "undirected causal graph JSON {nodes, edges}");
    app.add_option("--coords", o.coords, "projection coordinates, e.g. \"B,C,AD\" or \"H(A1,B1) H(B1)\"");
    app.add_option("--max-nodes", o.max_nodes, "node bound for independence and triangulation enumeration");
    app.add_option("--jobs", o.jobs, "worker threads for redundancy checks")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", o.out, "write to FILE instead of stdout");

    auto* tri = app.add_subcommand("triangulate", "minimal triangulations and their independences");
    auto* cls = app.add_subcommand("classify", "compare causal and triangulation independences");
    auto* ent = app.add_subcommand("derive-entropic", "Shannon-type inequalities on the scenario's entropies");
    ent->add_option("--ci", o.ci, "extra independences JSON [{a, b, c}]");
    ent->add_option("--triangulation", o.triangulation, "clique hypergraph to use instead of the default");
    ent->add_flag("--combine", o.combine, "impose causal and triangulation independences together");
    ent->add_flag("--full-axioms", o.full_axioms, "keep every elemental inequality");
    auto* prob = app.add_subcommand("derive-prob", "facets of the correlation polytope");
    prob->add_option("--mode", o.mode, "direct or triangulation")->check(CLI::IsMember({"direct", "triangulation"}));
    prob->add_option("--cards", o.cards, "cardinalities NAME=N,...; others are binary");
    prob->add_option("--triangulation", o.triangulation, "clique hypergraph to use instead of the default");
    prob->add_flag("--correlators", o.correlators, "rewrite in correlators (binary only)");
    auto* rep = app.add_subcommand("report", "lattice of outer approximations");
    auto* repro = app.add_subcommand("reproduce", "worked examples");
    repro->add_option("example", o.example, "chsh | eq29 | bell33 | m1g1 | m2g1 | infocausality")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::failure);
    }

    try {
        Output out;
        if (tri->parsed()) {
            out = triangulate(load_scenario(o), o);
        } else if (cls->parsed()) {
            auto m = load_scenario(o);
            auto g = load_model(o);
            if (!g) throw InconsistentInput("classify needs --dag or --mrf");
            out = classify_cmd(m, *g, o);
        } else if (ent->parsed()) {
            auto m = load_scenario(o);
            out = derive_entropic(m, load_model(o), o);
        } else if (prob->parsed()) {
            out = derive_prob(load_scenario(o), o);
        } else if (rep->parsed()) {
            out = report_cmd(load_scenario(o), o);
        } else if (repro->parsed()) {
            out = reproduce(o);
        }
        emit(out, o);
        return 0;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return static_cast<int>(ExitCode::guard_exceeded);
    } catch (const CaseIiiRejected& e) {
        std::cerr << e.what() << "\n";
        return static_cast<int>(ExitCode::case_iii_rejected);
    } catch (const InconsistentInput& e) {
        std::cerr << "inconsistent input: " << e.what() << "\n";
        return static_cast<int>(ExitCode::inconsistent_input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::failure);
    }
}
