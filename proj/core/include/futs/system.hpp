#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "futs/monoid.hpp"
#include "futs/weight_term.hpp"

namespace futs {

/// One component i of a FuTS signature: labels A_i and the monoid row ⟨M_{i,0},…,M_{i,l_i}⟩.
struct Component {
    std::vector<std::string> labels;  // sorted, non-empty
    std::vector<MonoidDesc> monoids;  // outermost first, non-empty

    [[nodiscard]] std::size_t depth() const { return monoids.size(); }  // l_i + 1
    [[nodiscard]] bool has_label(const std::string& a) const;

    friend bool operator==(const Component&, const Component&) = default;
};

class FutsSignature {
public:
    FutsSignature() = default;
    // Sorts label sets; throws PreconditionError on empty rows or label sets.
    explicit FutsSignature(std::vector<Component> components);

    [[nodiscard]] const std::vector<Component>& components() const { return components_; }
    [[nodiscard]] const Component& component(std::size_t i) const;
    [[nodiscard]] std::size_t size() const { return components_.size(); }

    [[nodiscard]] bool nested() const;       // n = 0
    [[nodiscard]] bool combined() const;     // every l_i = 0
    [[nodiscard]] bool simple() const;       // nested and combined
    [[nodiscard]] bool tabular() const;      // all rows equally long
    [[nodiscard]] bool homogeneous() const;  // a single monoid everywhere
    [[nodiscard]] bool unlabelled() const;   // every |A_i| = 1
    [[nodiscard]] std::size_t max_depth() const;

    friend bool operator==(const FutsSignature&, const FutsSignature&) = default;

private:
    std::vector<Component> components_;
};

/// A finite FuTS: carrier plus, per component, a transition term for every
/// (state, label). Absent transitions are the zero term of the row's depth.
class Futs {
public:
    Futs() = default;
    // States are sorted; duplicates are rejected.
    Futs(FutsSignature sig, std::vector<std::string> states);

    [[nodiscard]] const FutsSignature& signature() const { return sig_; }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] bool has_state(const std::string& x) const;

    // Stores t without checking it; validate() reports any inconsistency. A zero t erases the entry.
    void set_transition(std::size_t i, const std::string& x, const std::string& a, WeightTerm t);
    [[nodiscard]] WeightTerm transition(std::size_t i, const std::string& x, const std::string& a) const;

    // Non-zero transitions of component i keyed by (state, label).
    [[nodiscard]] const std::map<std::pair<std::string, std::string>, WeightTerm>& transitions(std::size_t i) const;

private:
    FutsSignature sig_;
    std::vector<std::string> states_;
    std::vector<std::map<std::pair<std::string, std::string>, WeightTerm>> trans_;
};

struct Issue {
    std::optional<std::size_t> component;
    std::string state;
    std::string label;
    std::string message;

    [[nodiscard]] std::string to_string() const;
};

/// Every violated invariant, with coordinates; empty when the system is well formed.
[[nodiscard]] std::vector<Issue> validate(const Futs& s);

// Throws PreconditionError carrying the first issue.
void require_valid(const Futs& s);

/// A total function between carriers.
struct CarrierMap {
    StateMap mapping;

    [[nodiscard]] static CarrierMap identity(const std::vector<std::string>& states);
    [[nodiscard]] const std::string& operator()(const std::string& x) const;
    [[nodiscard]] bool total_on(const std::vector<std::string>& source) const;
    [[nodiscard]] bool injective() const;
    [[nodiscard]] bool surjective_onto(const std::vector<std::string>& target) const;
    // (g ∘ f): first this, then g.
    [[nodiscard]] CarrierMap then(const CarrierMap& g) const;
};

/// β(f(x)) = (Tf)(α(x)) for every component, state and label.
[[nodiscard]] bool is_homomorphism(const Futs& source, const Futs& target, const CarrierMap& f);

/// WLTS → ULTraS along x ↦ {x}: every transition φ becomes {φ: tt}.
[[nodiscard]] Futs dirac_embed(const Futs& wlts);

/// Maps the weights at level j of component i through homs[i][j]; every hom must be injective.
[[nodiscard]] Futs relabel_weights(const Futs& s, const std::vector<std::vector<Homomorphism>>& homs);

}  // namespace futs
