#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "futs/monoid.hpp"
#include "futs/partition.hpp"

namespace futs {

/// An element of a nested finitely supported weight-function space
/// F_{M0}(F_{M1}(...F_{Ml}(X))). Leaves are state ids (depth 0); a node of
/// depth d+1 maps depth-d terms to non-zero weights of its monoid.
///
/// Terms are immutable and share structure; entries are kept sorted by key
/// with zero weights removed, so equality of values is extensional equality.
class WeightTerm {
public:
    using Entry = std::pair<WeightTerm, Weight>;

    static WeightTerm leaf(std::string state);
    // Canonicalizes: merges equal keys by monoid addition, drops zeros, sorts.
    // Throws ShapeError on a child of the wrong depth or a weight outside `monoid`.
    static WeightTerm node(MonoidDesc monoid, std::size_t depth, std::vector<Entry> entries);
    static WeightTerm zero(MonoidDesc monoid, std::size_t depth);
    // {key: weight}, or the zero function when weight is zero.
    static WeightTerm dirac(MonoidDesc monoid, WeightTerm key, Weight weight);

    [[nodiscard]] bool is_leaf() const { return depth_ == 0; }
    [[nodiscard]] std::size_t depth() const { return depth_; }
    [[nodiscard]] const std::string& state() const;
    [[nodiscard]] const MonoidDesc& monoid() const;
    [[nodiscard]] std::span<const Entry> entries() const;
    [[nodiscard]] bool is_zero() const { return !is_leaf() && entries().empty(); }

    // φ(key), zero when key is outside the support.
    [[nodiscard]] Weight at(const WeightTerm& key) const;

    // Canonical text: `s0`, `{s0: 1/2, s1: 1/2}`, `{{s0: 1}: tt}`.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const WeightTerm& a, const WeightTerm& b);
    friend std::strong_ordering operator<=>(const WeightTerm& a, const WeightTerm& b);

private:
    struct Node {
        MonoidDesc monoid;
        std::vector<Entry> entries;
    };
    WeightTerm() = default;

    std::size_t depth_ = 0;
    std::string state_;
    std::shared_ptr<const Node> node_;
};

using StateMap = std::map<std::string, std::string>;

[[nodiscard]] std::vector<WeightTerm> support(const WeightTerm& t);

// All leaves reachable in t.
[[nodiscard]] std::set<std::string> leaves(const WeightTerm& t);

// The monoids on the path from t down to its leaves, outermost first; levels
// below an empty node are unknown and omitted.
[[nodiscard]] std::vector<MonoidDesc> monoid_stack(const WeightTerm& t);

/// F_{M0}...F_{Ml} f: relabels leaves through f, summing weights of colliding keys at every level.
[[nodiscard]] WeightTerm pushforward(const StateMap& f, const WeightTerm& t);
[[nodiscard]] WeightTerm pushforward(const std::function<std::string(const std::string&)>& f, const WeightTerm& t);

/// (Tκ)(t) for κ the quotient map of `p`.
[[nodiscard]] WeightTerm quotient_term(const WeightTerm& t, const Partition& p);

/// Structural equality; throws ShapeError when the terms have different depth or monoid stacks.
[[nodiscard]] bool term_equal(const WeightTerm& a, const WeightTerm& b);

/// Σ_{k ∈ keys} t(k).
[[nodiscard]] Weight class_sum(const WeightTerm& t, const std::set<WeightTerm>& keys);
[[nodiscard]] Weight class_sum(const WeightTerm& t, const std::function<bool(const WeightTerm&)>& member);

/// Maps every weight at nesting level j (0 = outermost) through per_level[j]
/// and retypes that level as per_level[j].target(). Needs per_level.size() == t.depth().
[[nodiscard]] WeightTerm map_weights(const WeightTerm& t, std::span<const Homomorphism> per_level);

}  // namespace futs
