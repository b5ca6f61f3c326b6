#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "futs/monoid.hpp"
#include "futs/partition.hpp"
#include "futs/reduce.hpp"
#include "futs/system.hpp"

namespace futs {

/// Finite-conjunction logic: ⊤, φ ∧ φ and ⟨i|a|m_0,…,m_l⟩φ, where the diamond
/// carries one weight lower bound per layer of component i.
class Formula {
public:
    enum class Kind { Top, And, Diamond };

    static Formula top();
    static Formula conj(Formula left, Formula right);
    static Formula diamond(std::size_t component, std::string label, std::vector<Weight> bounds, Formula body);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const Formula& left() const;
    [[nodiscard]] const Formula& right() const;
    [[nodiscard]] std::size_t component() const;
    [[nodiscard]] const std::string& label() const;
    [[nodiscard]] const std::vector<Weight>& bounds() const;
    [[nodiscard]] const Formula& body() const;

    [[nodiscard]] std::size_t modal_depth() const;
    [[nodiscard]] std::size_t size() const;
    // Identity of the shared node; used for memoization.
    [[nodiscard]] const void* id() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Throws ShapeError/PreconditionError unless φ is well formed for `sig`.
void check_formula(const FutsSignature& sig, const Formula& phi);

/// ρ ∈ ⟨m⟩Y, i.e. m ⊴ Σ_{y ∈ Y} ρ(y).
[[nodiscard]] bool diamond_member(const WeightTerm& rho, const Weight& m,
                                  const std::function<bool(const WeightTerm&)>& in_y);

/// ρ ∈ ⟨m_0⟩⟨m_1⟩…⟨m_k⟩Y for a term of depth k+1 and Y a set of states.
[[nodiscard]] bool nested_member(const WeightTerm& rho, std::span<const Weight> bounds,
                                 const std::function<bool(const std::string&)>& in_y);

[[nodiscard]] bool satisfies(const Futs& s, const std::string& x, const Formula& phi);

/// ⟦φ⟧ in state order.
[[nodiscard]] std::vector<std::string> sat_set(const Futs& s, const Formula& phi);

/// θ for one reduction stage, for formulas over `source`.
[[nodiscard]] Formula translate(Stage stage, const FutsSignature& source, const Formula& phi);

/// The composite translation along wts_plan(source).
[[nodiscard]] Formula translate_to_wts(const FutsSignature& source, const Formula& phi);

/// Candidate bounds per component i and level j.
using Grid = std::vector<std::vector<std::vector<Weight>>>;

/// Every sum of a subset of the entries of a transition term (or subterm) at each level.
[[nodiscard]] Grid default_grid(const Futs& s);

/// States grouped by agreement on every formula of modal depth ≤ depth whose bounds come from
/// `grid`. Built level by level: diamonds over all bodies found so far, closed under conjunction.
/// Defaults: depth = |states|, grid = default_grid(s).
[[nodiscard]] Partition bounded_logical_equiv(const Futs& s, std::optional<std::size_t> depth = std::nullopt,
                                              const std::optional<Grid>& grid = std::nullopt);

/// A formula true at exactly one of x, x' (simple systems over any catalog monoid), searched over
/// the same formula family as bounded_logical_equiv. Empty when that family does not separate them.
[[nodiscard]] std::optional<Formula> find_distinguishing_formula(const Futs& s, const std::string& x,
                                                                 const std::string& x2,
                                                                 std::optional<std::size_t> depth = std::nullopt);

/// Empty iff x ∼ x'. Needs a simple system over a cancellative monoid, where the logic
/// characterizes bisimilarity; throws PreconditionError otherwise.
[[nodiscard]] std::optional<Formula> distinguishing_formula(const Futs& s, const std::string& x,
                                                            const std::string& x2);

}  // namespace futs
