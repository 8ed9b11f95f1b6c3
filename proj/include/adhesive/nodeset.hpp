#pragma once
// Node labels, label universes and bitmask node sets.

#include "adhesive/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace adhesive {

using NodeId = std::string;

/// Bitmask over the positions of a Universe. Supports up to 64 nodes.
using NodeMask = std::uint64_t;

inline int popcount(NodeMask m) { return std::popcount(m); }
inline bool is_subset(NodeMask a, NodeMask b) { return (a & ~b) == 0; }

/// Calls fn(sub) for every subset of `mask`, including 0 and `mask` itself.
template <class Fn>
void for_each_subset(NodeMask mask, Fn&& fn) {
    NodeMask sub = mask;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

/// Ordered, duplicate-free list of labels. Positions define the bit layout of
/// NodeMask values; labels are kept in lexicographic order.
class Universe {
public:
    Universe() = default;
    Universe(std::initializer_list<NodeId> labels) : Universe(std::vector<NodeId>(labels)) {}
    explicit Universe(std::vector<NodeId> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
        for (const auto& l : labels_)
            if (l.empty()) throw InconsistentInput("empty node label");
        if (labels_.size() > 64) throw GuardExceeded("more than 64 nodes in one universe");
    }

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<NodeId>& labels() const { return labels_; }
    const NodeId& label(std::size_t i) const { return labels_[i]; }
    NodeMask full() const { return labels_.size() == 64 ? ~NodeMask{0} : ((NodeMask{1} << labels_.size()) - 1); }

    bool contains(const NodeId& l) const { return std::binary_search(labels_.begin(), labels_.end(), l); }

    std::size_t index(const NodeId& l) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
        if (it == labels_.end() || *it != l) throw InconsistentInput("unknown node '" + l + "'");
        return static_cast<std::size_t>(it - labels_.begin());
    }

    NodeMask bit(const NodeId& l) const { return NodeMask{1} << index(l); }

    NodeMask mask(const std::vector<NodeId>& ls) const {
        NodeMask m = 0;
        for (const auto& l : ls) m |= bit(l);
        return m;
    }

    std::vector<NodeId> names(NodeMask m) const {
        std::vector<NodeId> out;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (m >> i & 1) out.push_back(labels_[i]);
        return out;
    }

    /// Comma-joined labels, e.g. "A,B,C".
    std::string join(NodeMask m, const std::string& sep = ",") const {
        std::string s;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (m >> i & 1) {
                if (!s.empty()) s += sep;
                s += labels_[i];
            }
        return s;
    }

    /// Translates a mask of this universe into another universe containing all its labels.
    NodeMask translate(NodeMask m, const Universe& other) const {
        NodeMask out = 0;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (m >> i & 1) out |= other.bit(labels_[i]);
        return out;
    }

    friend bool operator==(const Universe&, const Universe&) = default;

private:
    std::vector<NodeId> labels_;
};

/// Union of two universes.
inline Universe merge(const Universe& a, const Universe& b) {
    auto ls = a.labels();
    ls.insert(ls.end(), b.labels().begin(), b.labels().end());
    return Universe(ls);
}

/// Canonical order on node sets of one universe: by the sorted label list.
inline bool mask_label_less(NodeMask a, NodeMask b) {
    // Positions follow lexicographic label order, so comparing the sequences of
    // set bit positions lexicographically is the same as comparing label lists.
    while (a && b) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

} // namespace adhesive
