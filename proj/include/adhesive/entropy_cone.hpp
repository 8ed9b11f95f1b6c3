#pragma once
// Entropy coordinates H(S) over all subsets of a variable list, the Shannon
// (polymatroid) cone given by elemental inequalities, conditional-independence
// hyperplanes and the reduced axiom set valid on those hyperplanes.

#include "adhesive/causal.hpp"
#include "adhesive/distributions.hpp"
#include "adhesive/error.hpp"
#include "adhesive/hypergraph.hpp"
#include "adhesive/polyhedra.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace adhesive {

/// "H(A,B)"; the empty set is "H()".
inline std::string entropy_label(const Universe& u, NodeMask s) { return "H(" + u.join(s) + ")"; }

/// Coordinates H(S) for every S ⊆ vars, ordered by |S| and then by label list,
/// so H() comes first and singletons follow.
class EntropySpace {
public:
    static constexpr std::size_t default_max_vars = 12;

    explicit EntropySpace(Universe vars, std::size_t max_vars = default_max_vars) : vars_(std::move(vars)) {
        if (vars_.empty()) throw InconsistentInput("entropy space needs at least one variable");
        if (vars_.size() > max_vars)
            throw GuardExceeded("entropy space refused: " + std::to_string(vars_.size()) + " variables exceeds bound " +
                                std::to_string(max_vars));
        std::size_t total = std::size_t{1} << vars_.size();
        for (NodeMask s = 0; s < total; ++s) order_.push_back(s);
        std::sort(order_.begin(), order_.end(), [](NodeMask a, NodeMask b) {
            if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
            return mask_label_less(a, b);
        });
        pos_.assign(total, 0);
        for (std::size_t i = 0; i < total; ++i) {
            pos_[order_[i]] = i;
            labels_.push_back(entropy_label(vars_, order_[i]));
        }
    }

    const Universe& vars() const { return vars_; }
    std::size_t dim() const { return order_.size(); }
    const std::vector<std::string>& coords() const { return labels_; }
    const std::vector<NodeMask>& subsets() const { return order_; }
    std::size_t pos(NodeMask s) const { return pos_.at(s); }
    std::string label(NodeMask s) const { return labels_[pos(s)]; }

    /// Coefficients of I(A:B|C) = H(AC) + H(BC) - H(ABC) - H(C).
    RationalVector mutual_info(NodeMask a, NodeMask b, NodeMask c) const {
        RationalVector r(dim());
        r[pos(a | c)] += Rational(1);
        r[pos(b | c)] += Rational(1);
        r[pos(a | b | c)] -= Rational(1);
        r[pos(c)] -= Rational(1);
        return r;
    }

    /// Coefficients of H(A|C) = H(AC) - H(C).
    RationalVector cond_entropy(NodeMask a, NodeMask c) const {
        RationalVector r(dim());
        r[pos(a | c)] += Rational(1);
        r[pos(c)] -= Rational(1);
        return r;
    }

    /// Empty system over these coordinates with H() = 0.
    LinIneqSystem normalized_system() const {
        LinIneqSystem s(labels_);
        RationalVector e(dim());
        e[pos(0)] = Rational(1);
        s.add_eq(std::move(e));
        return s;
    }

    /// Entropies (bits) of the marginals of `p`, one per coordinate.
    std::vector<double> point(const ProbTable& p) const {
        auto ev = entropy_vector(p);
        std::vector<double> out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = ev.h[vars_.translate(order_[i], ev.vars)];
        return out;
    }

private:
    Universe vars_;
    std::vector<NodeMask> order_;
    std::vector<std::size_t> pos_;
    std::vector<std::string> labels_;
};

/// a·x - b evaluated in floating point, for checking sampled entropy points.
inline double evaluate(const Row& r, const std::vector<double>& x) {
    double v = -r.b.to_double();
    for (std::size_t i = 0; i < r.a.size(); ++i)
        if (!r.a[i].is_zero()) v += r.a[i].to_double() * x[i];
    return v;
}

/// Largest violation of any row of `s` by `x` (0 if satisfied).
inline double max_violation(const LinIneqSystem& s, const std::vector<double>& x) {
    double worst = 0;
    for (const auto& r : s.ineqs) worst = std::max(worst, -evaluate(r, x));
    for (const auto& r : s.eqs) worst = std::max(worst, std::abs(evaluate(r, x)));
    return worst;
}

namespace detail {

// Elemental rows restricted to the variables in `within`, appended to `s`.
inline void add_elemental(LinIneqSystem& s, const EntropySpace& sp, NodeMask within) {
    for (NodeMask r = within; r; r &= r - 1) {
        NodeMask i = r & -r;
        RationalVector a(sp.dim());
        a[sp.pos(within)] += Rational(1);
        a[sp.pos(within & ~i)] -= Rational(1);
        s.add_ineq(std::move(a));
    }
    for (NodeMask r = within; r; r &= r - 1) {
        NodeMask i = r & -r;
        for (NodeMask q = r & (r - 1); q; q &= q - 1) {
            NodeMask j = q & -q;
            for_each_subset(within & ~i & ~j, [&](NodeMask c) { s.add_ineq(sp.mutual_info(i, j, c)); });
        }
    }
}

} // namespace detail

/// Elemental inequalities: n monotonicity rows H(N) - H(N\i) >= 0 and
/// C(n,2) 2^(n-2) rows I(i:j|S) >= 0, plus H() = 0.
inline LinIneqSystem shannon_cone(const EntropySpace& sp) {
    LinIneqSystem s = sp.normalized_system();
    detail::add_elemental(s, sp, sp.vars().full());
    return s;
}

inline std::size_t shannon_row_count(std::size_t n) {
    if (n < 2) return n;
    return n + (n * (n - 1) / 2) * (std::size_t{1} << (n - 2));
}

/// I(A:B|C) = 0 for each statement; the CI universe must be inside the space's variables.
inline std::vector<Row> ci_hyperplanes(const CiSet& ci, const EntropySpace& sp) {
    std::vector<Row> out;
    for (const auto& st : ci.statements()) {
        NodeMask a = ci.universe().translate(st.a, sp.vars());
        NodeMask b = ci.universe().translate(st.b, sp.vars());
        NodeMask c = ci.universe().translate(st.c, sp.vars());
        out.push_back({sp.mutual_info(a, b, c), Rational(0)});
    }
    return out;
}

inline LinIneqSystem with_ci(LinIneqSystem s, const CiSet& ci, const EntropySpace& sp) {
    for (auto& r : ci_hyperplanes(ci, sp)) s.eqs.push_back(std::move(r));
    return s;
}

/// Shannon cone with the CI hyperplanes, minus elemental rows those hyperplanes
/// make redundant. For a statement (a ⟂ b | C) with single variables a, b,
///   I(a:e|bC) = I(a:e|C) + I(a:b|eC) - I(a:b|C),
/// so I(a:e|bC) >= 0 follows from the two elemental rows on the right; the
/// symmetric identity handles I(b:e|aC). A row is dropped only while the rows
/// certifying it are still present, and those are then kept for good, so
/// every dropped row stays implied by the final system.
inline LinIneqSystem reduced_shannon_cone(const EntropySpace& sp, const CiSet& ci) {
    struct Key {
        NodeMask i, j, c;
        auto operator<=>(const Key&) const = default;
    };
    auto key = [](NodeMask x, NodeMask y, NodeMask c) { return x < y ? Key{x, y, c} : Key{y, x, c}; };
    std::set<Key> removed, pinned;
    NodeMask full = sp.vars().full();
    for (const auto& st : ci.statements()) {
        NodeMask a = ci.universe().translate(st.a, sp.vars());
        NodeMask b = ci.universe().translate(st.b, sp.vars());
        NodeMask c = ci.universe().translate(st.c, sp.vars());
        if (popcount(a) != 1 || popcount(b) != 1) continue;
        for (NodeMask r = full & ~(a | b | c); r; r &= r - 1) {
            NodeMask e = r & -r;
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                Key target = key(x, e, y | c), cert1 = key(x, e, c), cert2 = key(x, y, e | c);
                if (removed.count(target) || pinned.count(target)) continue;
                if (removed.count(cert1) || removed.count(cert2)) continue;
                removed.insert(target);
                pinned.insert(cert1);
                pinned.insert(cert2);
            }
        }
    }
    LinIneqSystem s = sp.normalized_system();
    for (NodeMask r = full; r; r &= r - 1) {
        NodeMask i = r & -r;
        RationalVector a(sp.dim());
        a[sp.pos(full)] += Rational(1);
        a[sp.pos(full & ~i)] -= Rational(1);
        s.add_ineq(std::move(a));
    }
    for (NodeMask r = full; r; r &= r - 1) {
        NodeMask i = r & -r;
        for (NodeMask q = r & (r - 1); q; q &= q - 1) {
            NodeMask j = q & -q;
            for_each_subset(full & ~i & ~j, [&](NodeMask c) {
                if (!removed.count(key(i, j, c))) s.add_ineq(sp.mutual_info(i, j, c));
            });
        }
    }
    return with_ci(std::move(s), ci, sp);
}

/// Shannon cone of the variables in `clique`, written over the whole space;
/// coordinates involving other variables are left free.
inline LinIneqSystem clique_cone_embedded(const EntropySpace& sp, const std::vector<NodeId>& clique) {
    NodeMask m = sp.vars().mask(clique);
    if (m == 0) throw InconsistentInput("clique must be nonempty");
    LinIneqSystem s = sp.normalized_system();
    detail::add_elemental(s, sp, m);
    return s;
}

/// Labels H(S) for every nonempty S inside some edge of `m`, in space order.
inline std::vector<std::string> marginal_coords(const Hypergraph& m, const EntropySpace& sp) {
    std::vector<NodeMask> edges;
    for (auto e : m.edges()) edges.push_back(m.nodes().translate(e, sp.vars()));
    std::vector<std::string> out;
    for (auto s : sp.subsets()) {
        if (s == 0) continue;
        for (auto e : edges)
            if (is_subset(s, e)) {
                out.push_back(sp.label(s));
                break;
            }
    }
    return out;
}

/// Parses a comma- or space-separated coordinate list such as
/// "B,C,AD,ABC" (single-letter variables) or "H(A,D) H(B)".
inline std::vector<std::string> parse_coord_list(const std::string& text, const EntropySpace& sp) {
    std::vector<std::string> out;
    std::size_t i = 0;
    auto known = [&](const std::string& l) {
        if (std::find(sp.coords().begin(), sp.coords().end(), l) == sp.coords().end())
            throw InconsistentInput("unknown entropy coordinate '" + l + "'");
        out.push_back(l);
    };
    while (i < text.size()) {
        if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] == 'H' && i + 1 < text.size() && text[i + 1] == '(') {
            auto close = text.find(')', i);
            if (close == std::string::npos) throw InconsistentInput("unterminated coordinate in '" + text + "'");
            std::string inner = text.substr(i + 2, close - i - 2);
            std::vector<NodeId> names;
            std::string cur;
            for (char ch : inner + ",") {
                if (ch == ',') {
                    if (!cur.empty()) names.push_back(cur);
                    cur.clear();
                } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                    cur += ch;
                }
            }
            for (const auto& n : names)
                if (!sp.vars().contains(n)) throw InconsistentInput("unknown variable '" + n + "'");
            known(sp.label(sp.vars().mask(names)));
            i = close + 1;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::vector<NodeId> names;
        for (std::size_t k = i; k < j; ++k) names.push_back(std::string(1, text[k]));
        for (const auto& n : names)
            if (!sp.vars().contains(n)) throw InconsistentInput("unknown variable '" + n + "' in '" + text.substr(i, j - i) + "'");
        known(sp.label(sp.vars().mask(names)));
        i = j;
    }
    return out;
}

} // namespace adhesive
