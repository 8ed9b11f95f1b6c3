#pragma once
// Exact joint probability tables over finite variables, marginalisation,
// adhesive gluing of two tables that agree on their overlap, and the
// inductive extension of consistent marginals on an acyclic scenario to a
// global table.

#include "adhesive/causal.hpp"
#include "adhesive/error.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/rational.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace adhesive {

struct Variable {
    NodeId name;
    int card = 2;
    friend bool operator==(const Variable&, const Variable&) = default;
};

using Outcome = std::vector<int>;

class ProbTable {
public:
    ProbTable() = default;

    /// Weights are row-major over `vars` (the first variable varies slowest).
    ProbTable(std::vector<Variable> vars, std::vector<Rational> weights) : vars_(std::move(vars)), w_(std::move(weights)) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].card < 1) throw InconsistentInput("variable '" + vars_[i].name + "' has no outcomes");
            for (std::size_t j = 0; j < i; ++j)
                if (vars_[j].name == vars_[i].name) throw InconsistentInput("duplicate variable '" + vars_[i].name + "'");
            expected *= static_cast<std::size_t>(vars_[i].card);
        }
        if (w_.size() != expected)
            throw InconsistentInput("table has " + std::to_string(w_.size()) + " weights, expected " + std::to_string(expected));
        Rational total;
        for (const auto& x : w_) {
            if (x.sign() < 0) throw InconsistentInput("negative probability " + x.str());
            total += x;
        }
        if (total != Rational(1)) throw InconsistentInput("probabilities sum to " + total.str() + ", not 1");
    }

    /// Normalises nonnegative integer weights.
    static ProbTable from_counts(std::vector<Variable> vars, const std::vector<Rational>& counts) {
        Rational total;
        for (const auto& c : counts) total += c;
        if (total.sign() <= 0) throw InconsistentInput("counts must have a positive total");
        std::vector<Rational> w;
        for (const auto& c : counts) w.push_back(c / total);
        return ProbTable(std::move(vars), std::move(w));
    }

    static ProbTable uniform(std::vector<Variable> vars) {
        std::size_t n = 1;
        for (const auto& v : vars) n *= static_cast<std::size_t>(v.card);
        return from_counts(std::move(vars), std::vector<Rational>(n, Rational(1)));
    }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Rational>& weights() const { return w_; }
    std::size_t size() const { return w_.size(); }

    std::vector<NodeId> names() const {
        std::vector<NodeId> out;
        for (const auto& v : vars_) out.push_back(v.name);
        return out;
    }

    std::size_t position(const NodeId& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        throw InconsistentInput("unknown variable '" + name + "'");
    }
    bool has(const NodeId& name) const {
        for (const auto& v : vars_)
            if (v.name == name) return true;
        return false;
    }

    std::size_t index(const Outcome& o) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (o[i] < 0 || o[i] >= vars_[i].card) throw InconsistentInput("outcome out of range");
            idx = idx * static_cast<std::size_t>(vars_[i].card) + static_cast<std::size_t>(o[i]);
        }
        return idx;
    }
    Outcome outcome(std::size_t idx) const {
        Outcome o(vars_.size());
        for (std::size_t i = vars_.size(); i-- > 0;) {
            o[i] = static_cast<int>(idx % static_cast<std::size_t>(vars_[i].card));
            idx /= static_cast<std::size_t>(vars_[i].card);
        }
        return o;
    }
    const Rational& prob(const Outcome& o) const { return w_[index(o)]; }

    friend bool operator==(const ProbTable&, const ProbTable&) = default;

private:
    std::vector<Variable> vars_;
    std::vector<Rational> w_;
};

inline std::string outcome_str(const Outcome& o) {
    std::string s = "(";
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + std::to_string(o[i]);
    return s + ")";
}

/// Exact marginal on `keep`; the result lists variables in p's order.
inline ProbTable marginalize(const ProbTable& p, const std::vector<NodeId>& keep) {
    std::vector<std::size_t> pos;
    for (const auto& k : keep) pos.push_back(p.position(k));
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::vector<Variable> vars;
    for (auto i : pos) vars.push_back(p.variables()[i]);
    std::size_t n = 1;
    for (const auto& v : vars) n *= static_cast<std::size_t>(v.card);
    std::vector<Rational> w(n);
    Outcome sub(pos.size());
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        const auto& x = p.weights()[idx];
        if (x.is_zero()) continue;
        auto o = p.outcome(idx);
        std::size_t j = 0;
        for (std::size_t k = 0; k < pos.size(); ++k) j = j * static_cast<std::size_t>(vars[k].card) + static_cast<std::size_t>(o[pos[k]]);
        w[j] += x;
    }
    return ProbTable(std::move(vars), std::move(w));
}

/// Same distribution with variables listed in `order` (a permutation of p's names).
inline ProbTable reorder(const ProbTable& p, const std::vector<NodeId>& order) {
    if (order.size() != p.variables().size()) throw InconsistentInput("reorder needs a permutation of the variables");
    std::vector<std::size_t> pos;
    std::vector<Variable> vars;
    for (const auto& k : order) {
        pos.push_back(p.position(k));
        vars.push_back(p.variables()[pos.back()]);
    }
    std::vector<Rational> w(p.size());
    ProbTable shape(vars, [&] {
        std::vector<Rational> u(p.size());
        u[0] = Rational(1);
        return u;
    }());
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        auto o = p.outcome(idx);
        Outcome q(order.size());
        for (std::size_t k = 0; k < pos.size(); ++k) q[k] = o[pos[k]];
        w[shape.index(q)] = p.weights()[idx];
    }
    return ProbTable(std::move(vars), std::move(w));
}

/// Equal as distributions, regardless of variable order.
inline bool same_distribution(const ProbTable& p, const ProbTable& q) {
    if (p.variables().size() != q.variables().size()) return false;
    for (const auto& v : p.variables())
        if (!q.has(v.name) || q.variables()[q.position(v.name)].card != v.card) return false;
    return reorder(q, p.names()) == p;
}

namespace detail {

inline std::vector<NodeId> names_in(const ProbTable& p, const ProbTable& q) {
    std::vector<NodeId> out;
    for (const auto& v : p.variables())
        if (q.has(v.name)) out.push_back(v.name);
    return out;
}

inline void check_cards(const ProbTable& p, const ProbTable& q) {
    for (const auto& v : p.variables())
        if (q.has(v.name) && q.variables()[q.position(v.name)].card != v.card)
            throw InconsistentInput("variable '" + v.name + "' has different cardinalities");
}

} // namespace detail

/// P = p·q / p_{I∩J} with 0/0 := 0. Output lists p's variables, then q's new ones.
inline ProbTable adhesive_glue(const ProbTable& p, const ProbTable& q) {
    detail::check_cards(p, q);
    auto shared = detail::names_in(p, q);
    auto pm = marginalize(p, shared);
    auto qm = reorder(marginalize(q, shared), pm.names());
    for (std::size_t i = 0; i < pm.size(); ++i)
        if (pm.weights()[i] != qm.weights()[i])
            throw InconsistentInput("marginals disagree on {" + [&] {
                std::string s;
                for (const auto& n : shared) s += (s.empty() ? "" : ",") + n;
                return s;
            }() + "} at outcome " + outcome_str(pm.outcome(i)) + ": " + pm.weights()[i].str() + " vs " + qm.weights()[i].str());

    std::vector<Variable> vars = p.variables();
    std::vector<std::size_t> q_new;
    for (std::size_t j = 0; j < q.variables().size(); ++j)
        if (!p.has(q.variables()[j].name)) {
            q_new.push_back(j);
            vars.push_back(q.variables()[j]);
        }
    std::vector<std::size_t> p_shared, q_shared;
    for (const auto& n : pm.names()) {
        p_shared.push_back(p.position(n));
        q_shared.push_back(q.position(n));
    }
    std::size_t q_new_size = 1;
    for (auto j : q_new) q_new_size *= static_cast<std::size_t>(q.variables()[j].card);
    std::vector<Rational> w(p.size() * q_new_size);
    Outcome qo(q.variables().size()), so(pm.variables().size());
    for (std::size_t pi = 0; pi < p.size(); ++pi) {
        const auto& pw = p.weights()[pi];
        if (pw.is_zero()) continue;
        auto po = p.outcome(pi);
        for (std::size_t k = 0; k < p_shared.size(); ++k) {
            so[k] = po[p_shared[k]];
            qo[q_shared[k]] = po[p_shared[k]];
        }
        const auto& sw = pm.prob(so);
        for (std::size_t r = 0; r < q_new_size; ++r) {
            std::size_t rr = r;
            for (std::size_t k = q_new.size(); k-- > 0;) {
                auto c = static_cast<std::size_t>(q.variables()[q_new[k]].card);
                qo[q_new[k]] = static_cast<int>(rr % c);
                rr /= c;
            }
            const auto& qw = q.prob(qo);
            if (qw.is_zero()) continue;
            w[pi * q_new_size + r] = pw * qw / sw;
        }
    }
    return ProbTable(std::move(vars), std::move(w));
}

/// Marginal tables on the edges of a reduced hypergraph. Overlapping tables
/// must agree exactly on shared variables.
class MarginalScenario {
public:
    MarginalScenario(Hypergraph h, std::vector<ProbTable> tables) : h_(std::move(h)) {
        if (!h_.is_reduced()) throw InconsistentInput("marginal scenario hypergraph must be reduced");
        if (tables.size() != h_.size()) throw InconsistentInput("one table per scenario edge required");
        for (auto e : h_.edges()) {
            auto names = h_.nodes().names(e);
            bool found = false;
            for (const auto& t : tables) {
                auto tn = t.names();
                std::sort(tn.begin(), tn.end());
                if (tn == names) {
                    tables_.push_back(t);
                    found = true;
                    break;
                }
            }
            if (!found) throw InconsistentInput("no table for edge {" + h_.nodes().join(e) + "}");
        }
        for (std::size_t i = 0; i < tables_.size(); ++i)
            for (std::size_t j = i + 1; j < tables_.size(); ++j) {
                detail::check_cards(tables_[i], tables_[j]);
                auto shared = detail::names_in(tables_[i], tables_[j]);
                auto a = marginalize(tables_[i], shared);
                auto b = reorder(marginalize(tables_[j], shared), a.names());
                for (std::size_t k = 0; k < a.size(); ++k)
                    if (a.weights()[k] != b.weights()[k])
                        throw InconsistentInput("tables on {" + h_.nodes().join(h_.edges()[i]) + "} and {" +
                                                h_.nodes().join(h_.edges()[j]) + "} disagree at outcome " +
                                                outcome_str(a.outcome(k)));
            }
    }

    /// Marginals of a joint table on the edges of h.
    static MarginalScenario from_joint(const ProbTable& joint, const Hypergraph& h) {
        std::vector<ProbTable> tables;
        for (auto e : h.edges()) tables.push_back(marginalize(joint, h.nodes().names(e)));
        return MarginalScenario(h, std::move(tables));
    }

    const Hypergraph& hypergraph() const { return h_; }
    const std::vector<ProbTable>& tables() const { return tables_; } // aligned with hypergraph().edges()

private:
    Hypergraph h_;
    std::vector<ProbTable> tables_;
};

/// Global table reproducing every marginal of an acyclic scenario, built by
/// gluing the tables along a running-intersection ordering. Variables are
/// listed in label order.
inline ProbTable vorobev_extend(const MarginalScenario& m) {
    const auto& h = m.hypergraph();
    auto rio = rio_ordering(h);
    if (!rio) throw InconsistentInput("scenario hypergraph " + h.str() + " is cyclic; no global extension guaranteed");
    ProbTable acc = m.tables()[rio->order[0]];
    for (std::size_t k = 1; k < rio->order.size(); ++k) acc = adhesive_glue(acc, m.tables()[rio->order[k]]);
    return reorder(acc, h.nodes().labels());
}

/// Π_i P(C_i)/P(S_i) evaluated from the marginals of `p` along a running
/// intersection ordering of h's edges (0 wherever a separator marginal is 0).
inline ProbTable clique_factorization(const ProbTable& p, const Hypergraph& h) {
    auto rio = rio_ordering(h);
    if (!rio) throw InconsistentInput("clique factorization needs an acyclic hypergraph");
    auto names = h.nodes().labels();
    auto base = reorder(marginalize(p, names), names);
    std::vector<ProbTable> cliques, seps;
    for (std::size_t k = 0; k < rio->order.size(); ++k) {
        cliques.push_back(marginalize(base, h.nodes().names(h.edges()[rio->order[k]])));
        seps.push_back(marginalize(base, h.nodes().names(rio->separators[k])));
    }
    std::vector<Rational> w(base.size());
    for (std::size_t idx = 0; idx < base.size(); ++idx) {
        auto o = base.outcome(idx);
        Rational v(1);
        for (std::size_t k = 0; k < cliques.size() && !v.is_zero(); ++k) {
            auto project = [&](const ProbTable& t) {
                Outcome s;
                for (const auto& var : t.variables()) s.push_back(o[base.position(var.name)]);
                return t.prob(s);
            };
            const auto& den = project(seps[k]);
            if (den.is_zero()) {
                v = Rational(0);
                break;
            }
            v *= project(cliques[k]) / den;
        }
        w[idx] = v;
    }
    return ProbTable(base.variables(), std::move(w));
}

/// Exact conditional independence test: P(abc)·P(c) == P(ac)·P(bc) for all outcomes.
inline bool ci_holds(const ProbTable& p, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                     const std::vector<NodeId>& c) {
    auto names = [](std::vector<NodeId> x, const std::vector<NodeId>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    for (const auto& x : a)
        for (const auto& y : b)
            if (x == y) throw InconsistentInput("CI test sets must be disjoint");
    for (const auto& x : c)
        if (std::find(a.begin(), a.end(), x) != a.end() || std::find(b.begin(), b.end(), x) != b.end())
            throw InconsistentInput("CI test sets must be disjoint");
    auto abc = marginalize(p, names(names(a, b), c));
    auto ac = marginalize(p, names(a, c));
    auto bc = marginalize(p, names(b, c));
    auto cc = marginalize(p, c);
    auto pick = [&](const ProbTable& t, const Outcome& o) {
        Outcome s;
        for (const auto& v : t.variables()) s.push_back(o[abc.position(v.name)]);
        return t.prob(s);
    };
    for (std::size_t idx = 0; idx < abc.size(); ++idx) {
        auto o = abc.outcome(idx);
        if (abc.weights()[idx] * pick(cc, o) != pick(ac, o) * pick(bc, o)) return false;
    }
    return true;
}

/// Shannon entropy in bits of a (normalised) table.
inline double shannon_entropy(const ProbTable& p) {
    double h = 0;
    for (const auto& x : p.weights()) {
        if (x.is_zero()) continue;
        double v = x.to_double();
        h -= v * std::log2(v);
    }
    return h;
}

/// I(A:B|C) = H(AC) + H(BC) - H(ABC) - H(C), in bits.
inline double mutual_information(const ProbTable& p, const std::vector<NodeId>& a, const std::vector<NodeId>& b,
                                 const std::vector<NodeId>& c) {
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) != b.end() || std::find(c.begin(), c.end(), x) != c.end())
            throw InconsistentInput("mutual information sets must be disjoint");
    for (const auto& x : b)
        if (std::find(c.begin(), c.end(), x) != c.end()) throw InconsistentInput("mutual information sets must be disjoint");
    auto cat = [](std::vector<NodeId> x, const std::vector<NodeId>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    auto H = [&](const std::vector<NodeId>& s) { return s.empty() ? 0.0 : shannon_entropy(marginalize(p, s)); };
    double v = H(cat(a, c)) + H(cat(b, c)) - H(cat(cat(a, b), c)) - H(c);
    return v < 0 && v > -1e-12 ? 0.0 : v;
}

/// Subset entropies H(S), indexed by bitmask over `vars` (labels in sorted order).
struct EntropyVector {
    Universe vars;
    std::vector<double> h;

    double operator()(NodeMask s) const { return h[s]; }
    double at(const std::vector<NodeId>& s) const { return h[vars.mask(s)]; }
};

inline EntropyVector entropy_vector(const ProbTable& p) {
    EntropyVector ev{Universe(p.names()), {}};
    std::size_t n = ev.vars.size();
    ev.h.assign(std::size_t{1} << n, 0.0);
    for (NodeMask s = 1; s < (NodeMask{1} << n); ++s) ev.h[s] = shannon_entropy(marginalize(p, ev.vars.names(s)));
    return ev;
}

} // namespace adhesive
