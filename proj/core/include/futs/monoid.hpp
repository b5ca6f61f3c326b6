#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace futs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A payload or term does not have the shape its monoid or signature demands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// An operation was called outside of its domain (wrong system class, unknown state, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

enum class MonoidKind { BoolOr, NatPlus, NatMax, RatPlus, Product, Power };

/// An abelian monoid from the closed catalog.
///
/// Descriptions are immutable and cheap to copy; equality is structural.
/// Power label sets are kept sorted and duplicate-free.
class MonoidDesc {
public:
    static MonoidDesc bool_or();
    static MonoidDesc nat_plus();
    static MonoidDesc nat_max();
    static MonoidDesc rat_plus();
    static MonoidDesc product(std::vector<MonoidDesc> factors);
    static MonoidDesc power(std::vector<std::string> labels, MonoidDesc inner);

    [[nodiscard]] MonoidKind kind() const;
    [[nodiscard]] const std::vector<MonoidDesc>& factors() const;
    [[nodiscard]] const std::vector<std::string>& labels() const;
    [[nodiscard]] const MonoidDesc& inner() const;

    // Every catalog member is zerosumfree.
    [[nodiscard]] bool positive() const;
    [[nodiscard]] bool cancellative() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const MonoidDesc& a, const MonoidDesc& b);

private:
    struct Repr;
    explicit MonoidDesc(std::shared_ptr<const Repr> repr);
    std::shared_ptr<const Repr> repr_;
};

/// A monoid element. The payload shape is determined by the monoid:
/// booleans for bool-or, naturals for nat-plus/nat-max, rationals for
/// rat-plus, tuples for products and finitely supported label maps for
/// powers. Label maps never hold zero entries and rationals are always
/// in lowest terms, so structural equality is semantic equality.
class Weight {
public:
    using Tuple = std::vector<Weight>;
    using Entries = std::vector<std::pair<std::string, Weight>>;

    enum class Kind { Bool, Nat, Rat, Tuple, Power };

    Weight();  // ff
    static Weight boolean(bool b);
    static Weight natural(mpz_class n);
    static Weight rational(mpq_class q);
    static Weight tuple(Tuple items);
    // Sorts by label, drops zero entries; duplicate labels are an error.
    static Weight power(Entries entries);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] bool as_bool() const;
    [[nodiscard]] const mpz_class& as_nat() const;
    [[nodiscard]] const mpq_class& as_rat() const;
    [[nodiscard]] const Tuple& as_tuple() const;
    [[nodiscard]] const Entries& as_power() const;

    // Structural zero test; valid for every catalog monoid.
    [[nodiscard]] bool is_zero() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Weight& a, const Weight& b);
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

private:
    std::variant<bool, mpz_class, mpq_class, Tuple, Entries> value_;
};

[[nodiscard]] bool matches(const MonoidDesc& m, const Weight& w);
void require_match(const MonoidDesc& m, const Weight& w);

[[nodiscard]] Weight zero(const MonoidDesc& m);
[[nodiscard]] Weight add(const MonoidDesc& m, const Weight& a, const Weight& b);
[[nodiscard]] Weight sum(const MonoidDesc& m, std::span<const Weight> ws);

/// The natural order: a ⊴ b iff a + c = b for some c.
[[nodiscard]] bool nat_leq(const MonoidDesc& m, const Weight& a, const Weight& b);

/// The element of M^A that is `value` at `label` and zero elsewhere.
[[nodiscard]] Weight power_dirac(const std::string& label, const Weight& value,
                                 const std::vector<std::string>& labels, const MonoidDesc& inner);

/// A monoid homomorphism built from a chain of primitive maps.
class Homomorphism {
public:
    static Homomorphism identity(MonoidDesc m);
    // ι_index: factors()[index] → product (value at index, zero elsewhere).
    static Homomorphism section(MonoidDesc product, std::size_t index);
    // m ↦ label·m, the section of the label projection of a power monoid.
    static Homomorphism power_section(MonoidDesc power, std::string label);
    // Non-injective; used to exercise rejection paths.
    static Homomorphism projection(MonoidDesc product, std::size_t index);
    // m ↦ (m ≠ 0) into bool-or. Non-injective.
    static Homomorphism support(MonoidDesc source);

    // `next ∘ this`
    [[nodiscard]] Homomorphism then(const Homomorphism& next) const;

    [[nodiscard]] const MonoidDesc& source() const { return source_; }
    [[nodiscard]] const MonoidDesc& target() const { return target_; }
    [[nodiscard]] bool injective() const;

    [[nodiscard]] Weight apply(const Weight& w) const;

private:
    enum class Op { Section, PowerSection, Projection, Support };
    struct Step {
        Op op;
        MonoidDesc from;
        MonoidDesc to;
        std::size_t index = 0;
        std::string label;
    };
    Homomorphism(MonoidDesc source, MonoidDesc target, std::vector<Step> steps);

    MonoidDesc source_;
    MonoidDesc target_;
    std::vector<Step> steps_;
};

[[nodiscard]] Weight hom_apply(const Homomorphism& h, const Weight& w);

/// Composite section into nested products: path[0] indexes `product`,
/// path[1] indexes the factor selected by path[0], and so on.
[[nodiscard]] Homomorphism monoid_section(std::span<const std::size_t> path, const MonoidDesc& product);

}  // namespace futs
