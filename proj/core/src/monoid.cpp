#include "futs/monoid.hpp"

#include "futs/ident.hpp"

#include <algorithm>

namespace futs {

struct MonoidDesc::Repr {
    MonoidKind kind;
    std::vector<MonoidDesc> factors;
    std::vector<std::string> labels;
    std::vector<MonoidDesc> inner;  // exactly one element for powers

    static Repr atom(MonoidKind k) { return {k, {}, {}, {}}; }
};

MonoidDesc::MonoidDesc(std::shared_ptr<const Repr> repr) : repr_(std::move(repr)) {}

MonoidDesc MonoidDesc::bool_or() {
    static const auto r = std::make_shared<const Repr>(Repr::atom(MonoidKind::BoolOr));
    return MonoidDesc(r);
}

MonoidDesc MonoidDesc::nat_plus() {
    static const auto r = std::make_shared<const Repr>(Repr::atom(MonoidKind::NatPlus));
    return MonoidDesc(r);
}

MonoidDesc MonoidDesc::nat_max() {
    static const auto r = std::make_shared<const Repr>(Repr::atom(MonoidKind::NatMax));
    return MonoidDesc(r);
}

MonoidDesc MonoidDesc::rat_plus() {
    static const auto r = std::make_shared<const Repr>(Repr::atom(MonoidKind::RatPlus));
    return MonoidDesc(r);
}

MonoidDesc MonoidDesc::product(std::vector<MonoidDesc> factors) {
    if (factors.empty()) throw ShapeError("product monoid needs at least one factor");
    return MonoidDesc(std::make_shared<const Repr>(Repr{MonoidKind::Product, std::move(factors), {}, {}}));
}

MonoidDesc MonoidDesc::power(std::vector<std::string> labels, MonoidDesc inner) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty()) throw ShapeError("power monoid needs a non-empty label set");
    return MonoidDesc(
        std::make_shared<const Repr>(Repr{MonoidKind::Power, {}, std::move(labels), {std::move(inner)}}));
}

MonoidKind MonoidDesc::kind() const { return repr_->kind; }
const std::vector<MonoidDesc>& MonoidDesc::factors() const { return repr_->factors; }
const std::vector<std::string>& MonoidDesc::labels() const { return repr_->labels; }

const MonoidDesc& MonoidDesc::inner() const {
    if (repr_->kind != MonoidKind::Power) throw ShapeError("inner() on a non-power monoid");
    return repr_->inner.front();
}

bool MonoidDesc::positive() const { return true; }

bool MonoidDesc::cancellative() const {
    switch (kind()) {
    case MonoidKind::BoolOr:
    case MonoidKind::NatMax:
        return false;
    case MonoidKind::NatPlus:
    case MonoidKind::RatPlus:
        return true;
    case MonoidKind::Product:
        return std::all_of(factors().begin(), factors().end(), [](const auto& f) { return f.cancellative(); });
    case MonoidKind::Power:
        return inner().cancellative();
    }
    return false;
}

std::string MonoidDesc::to_string() const {
    switch (kind()) {
    case MonoidKind::BoolOr: return "bool-or";
    case MonoidKind::NatPlus: return "nat-plus";
    case MonoidKind::NatMax: return "nat-max";
    case MonoidKind::RatPlus: return "rat-plus";
    case MonoidKind::Product: {
        std::string s = "prod(";
        for (std::size_t i = 0; i < factors().size(); ++i) {
            if (i) s += ", ";
            s += factors()[i].to_string();
        }
        return s + ")";
    }
    case MonoidKind::Power: {
        std::string s = "pow({";
        for (std::size_t i = 0; i < labels().size(); ++i) {
            if (i) s += ", ";
            s += quote_id(labels()[i]);
        }
        return s + "}, " + inner().to_string() + ")";
    }
    }
    return {};
}

bool operator==(const MonoidDesc& a, const MonoidDesc& b) {
    if (a.repr_ == b.repr_) return true;
    return a.repr_->kind == b.repr_->kind && a.repr_->factors == b.repr_->factors &&
           a.repr_->labels == b.repr_->labels && a.repr_->inner == b.repr_->inner;
}

// ---------------------------------------------------------------------------
// Weight

Weight::Weight() : value_(false) {}

Weight Weight::boolean(bool b) {
    Weight w;
    w.value_ = b;
    return w;
}

Weight Weight::natural(mpz_class n) {
    if (sgn(n) < 0) throw ShapeError("negative natural weight");
    Weight w;
    w.value_ = std::move(n);
    return w;
}

Weight Weight::rational(mpq_class q) {
    q.canonicalize();
    if (sgn(q) < 0) throw ShapeError("negative rational weight");
    Weight w;
    w.value_ = std::move(q);
    return w;
}

Weight Weight::tuple(Tuple items) {
    Weight w;
    w.value_ = std::move(items);
    return w;
}

Weight Weight::power(Entries entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].first == entries[i - 1].first) throw ShapeError("duplicate label '" + entries[i].first + "'");
    }
    std::erase_if(entries, [](const auto& e) { return e.second.is_zero(); });
    Weight w;
    w.value_ = std::move(entries);
    return w;
}

Weight::Kind Weight::kind() const { return static_cast<Kind>(value_.index()); }

bool Weight::as_bool() const {
    if (auto p = std::get_if<bool>(&value_)) return *p;
    throw ShapeError("expected a boolean weight, got " + to_string());
}

const mpz_class& Weight::as_nat() const {
    if (auto p = std::get_if<mpz_class>(&value_)) return *p;
    throw ShapeError("expected a natural weight, got " + to_string());
}

const mpq_class& Weight::as_rat() const {
    if (auto p = std::get_if<mpq_class>(&value_)) return *p;
    throw ShapeError("expected a rational weight, got " + to_string());
}

const Weight::Tuple& Weight::as_tuple() const {
    if (auto p = std::get_if<Tuple>(&value_)) return *p;
    throw ShapeError("expected a tuple weight, got " + to_string());
}

const Weight::Entries& Weight::as_power() const {
    if (auto p = std::get_if<Entries>(&value_)) return *p;
    throw ShapeError("expected a label map weight, got " + to_string());
}

bool Weight::is_zero() const {
    switch (kind()) {
    case Kind::Bool: return !as_bool();
    case Kind::Nat: return sgn(as_nat()) == 0;
    case Kind::Rat: return sgn(as_rat()) == 0;
    case Kind::Tuple:
        return std::all_of(as_tuple().begin(), as_tuple().end(), [](const Weight& w) { return w.is_zero(); });
    case Kind::Power: return as_power().empty();
    }
    return false;
}

std::string Weight::to_string() const {
    switch (kind()) {
    case Kind::Bool: return as_bool() ? "tt" : "ff";
    case Kind::Nat: return as_nat().get_str();
    case Kind::Rat: return as_rat().get_str();
    case Kind::Tuple: {
        std::string s = "(";
        for (std::size_t i = 0; i < as_tuple().size(); ++i) {
            if (i) s += ", ";
            s += as_tuple()[i].to_string();
        }
        return s + ")";
    }
    case Kind::Power: {
        std::string s = "{";
        for (std::size_t i = 0; i < as_power().size(); ++i) {
            if (i) s += ", ";
            s += quote_id(as_power()[i].first) + ": " + as_power()[i].second.to_string();
        }
        return s + "}";
    }
    }
    return {};
}

bool operator==(const Weight& a, const Weight& b) { return (a <=> b) == std::strong_ordering::equal; }

namespace {

std::strong_ordering from_cmp(int c) {
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
    switch (a.kind()) {
    case Weight::Kind::Bool: return a.as_bool() <=> b.as_bool();
    case Weight::Kind::Nat: return from_cmp(cmp(a.as_nat(), b.as_nat()));
    case Weight::Kind::Rat: return from_cmp(cmp(a.as_rat(), b.as_rat()));
    case Weight::Kind::Tuple: {
        const auto& x = a.as_tuple();
        const auto& y = b.as_tuple();
        return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
    case Weight::Kind::Power: {
        const auto& x = a.as_power();
        const auto& y = b.as_power();
        return std::lexicographical_compare_three_way(
            x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
                if (auto c = p.first <=> q.first; c != 0) return c;
                return p.second <=> q.second;
            });
    }
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monoid operations

bool matches(const MonoidDesc& m, const Weight& w) {
    switch (m.kind()) {
    case MonoidKind::BoolOr: return w.kind() == Weight::Kind::Bool;
    case MonoidKind::NatPlus:
    case MonoidKind::NatMax: return w.kind() == Weight::Kind::Nat;
    case MonoidKind::RatPlus: return w.kind() == Weight::Kind::Rat;
    case MonoidKind::Product: {
        if (w.kind() != Weight::Kind::Tuple) return false;
        const auto& items = w.as_tuple();
        if (items.size() != m.factors().size()) return false;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (!matches(m.factors()[i], items[i])) return false;
        }
        return true;
    }
    case MonoidKind::Power: {
        if (w.kind() != Weight::Kind::Power) return false;
        for (const auto& [label, value] : w.as_power()) {
            if (!std::binary_search(m.labels().begin(), m.labels().end(), label)) return false;
            if (!matches(m.inner(), value) || value.is_zero()) return false;
        }
        return true;
    }
    }
    return false;
}

void require_match(const MonoidDesc& m, const Weight& w) {
    if (!matches(m, w)) throw ShapeError("weight " + w.to_string() + " does not belong to " + m.to_string());
}

Weight zero(const MonoidDesc& m) {
    switch (m.kind()) {
    case MonoidKind::BoolOr: return Weight::boolean(false);
    case MonoidKind::NatPlus:
    case MonoidKind::NatMax: return Weight::natural(0);
    case MonoidKind::RatPlus: return Weight::rational(0);
    case MonoidKind::Product: {
        Weight::Tuple items;
        items.reserve(m.factors().size());
        for (const auto& f : m.factors()) items.push_back(zero(f));
        return Weight::tuple(std::move(items));
    }
    case MonoidKind::Power: return Weight::power({});
    }
    return {};
}

namespace {

Weight add_unchecked(const MonoidDesc& m, const Weight& a, const Weight& b) {
    switch (m.kind()) {
    case MonoidKind::BoolOr: return Weight::boolean(a.as_bool() || b.as_bool());
    case MonoidKind::NatPlus: return Weight::natural(a.as_nat() + b.as_nat());
    case MonoidKind::NatMax: return Weight::natural(a.as_nat() < b.as_nat() ? b.as_nat() : a.as_nat());
    case MonoidKind::RatPlus: return Weight::rational(a.as_rat() + b.as_rat());
    case MonoidKind::Product: {
        Weight::Tuple items;
        items.reserve(m.factors().size());
        for (std::size_t i = 0; i < m.factors().size(); ++i) {
            items.push_back(add_unchecked(m.factors()[i], a.as_tuple()[i], b.as_tuple()[i]));
        }
        return Weight::tuple(std::move(items));
    }
    case MonoidKind::Power: {
        // merge of two sorted maps
        const auto& x = a.as_power();
        const auto& y = b.as_power();
        Weight::Entries out;
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                out.push_back(x[i++]);
            } else if (i == x.size() || y[j].first < x[i].first) {
                out.push_back(y[j++]);
            } else {
                out.emplace_back(x[i].first, add_unchecked(m.inner(), x[i].second, y[j].second));
                ++i;
                ++j;
            }
        }
        return Weight::power(std::move(out));
    }
    }
    return {};
}

bool leq_unchecked(const MonoidDesc& m, const Weight& a, const Weight& b) {
    switch (m.kind()) {
    case MonoidKind::BoolOr: return !a.as_bool() || b.as_bool();
    case MonoidKind::NatPlus:
    case MonoidKind::NatMax: return a.as_nat() <= b.as_nat();
    case MonoidKind::RatPlus: return a.as_rat() <= b.as_rat();
    case MonoidKind::Product:
        for (std::size_t i = 0; i < m.factors().size(); ++i) {
            if (!leq_unchecked(m.factors()[i], a.as_tuple()[i], b.as_tuple()[i])) return false;
        }
        return true;
    case MonoidKind::Power: {
        const auto& y = b.as_power();
        for (const auto& [label, value] : a.as_power()) {
            auto it = std::lower_bound(y.begin(), y.end(), label,
                                       [](const auto& e, const std::string& l) { return e.first < l; });
            const Weight other = (it != y.end() && it->first == label) ? it->second : zero(m.inner());
            if (!leq_unchecked(m.inner(), value, other)) return false;
        }
        return true;
    }
    }
    return false;
}

}  // namespace

Weight add(const MonoidDesc& m, const Weight& a, const Weight& b) {
    require_match(m, a);
    require_match(m, b);
    return add_unchecked(m, a, b);
}

Weight sum(const MonoidDesc& m, std::span<const Weight> ws) {
    Weight acc = zero(m);
    for (const auto& w : ws) acc = add(m, acc, w);
    return acc;
}

bool nat_leq(const MonoidDesc& m, const Weight& a, const Weight& b) {
    require_match(m, a);
    require_match(m, b);
    return leq_unchecked(m, a, b);
}

Weight power_dirac(const std::string& label, const Weight& value, const std::vector<std::string>& labels,
                   const MonoidDesc& inner) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        throw PreconditionError("label '" + label + "' is not in the power label set");
    }
    require_match(inner, value);
    return Weight::power({{label, value}});
}

// ---------------------------------------------------------------------------
// Homomorphisms

Homomorphism::Homomorphism(MonoidDesc source, MonoidDesc target, std::vector<Step> steps)
    : source_(std::move(source)), target_(std::move(target)), steps_(std::move(steps)) {}

Homomorphism Homomorphism::identity(MonoidDesc m) { return Homomorphism(m, m, {}); }

Homomorphism Homomorphism::section(MonoidDesc product, std::size_t index) {
    if (product.kind() != MonoidKind::Product) throw PreconditionError("section of a non-product monoid");
    if (index >= product.factors().size()) throw PreconditionError("section index out of range");
    MonoidDesc from = product.factors()[index];
    return Homomorphism(from, product, {Step{Op::Section, from, product, index, {}}});
}

Homomorphism Homomorphism::power_section(MonoidDesc power, std::string label) {
    if (power.kind() != MonoidKind::Power) throw PreconditionError("power section of a non-power monoid");
    if (!std::binary_search(power.labels().begin(), power.labels().end(), label)) {
        throw PreconditionError("label '" + label + "' is not in the power label set");
    }
    MonoidDesc from = power.inner();
    return Homomorphism(from, power, {Step{Op::PowerSection, from, power, 0, std::move(label)}});
}

Homomorphism Homomorphism::projection(MonoidDesc product, std::size_t index) {
    if (product.kind() != MonoidKind::Product) throw PreconditionError("projection of a non-product monoid");
    if (index >= product.factors().size()) throw PreconditionError("projection index out of range");
    MonoidDesc to = product.factors()[index];
    return Homomorphism(product, to, {Step{Op::Projection, product, to, index, {}}});
}

Homomorphism Homomorphism::support(MonoidDesc source) {
    auto to = MonoidDesc::bool_or();
    return Homomorphism(source, to, {Step{Op::Support, source, to, 0, {}}});
}

Homomorphism Homomorphism::then(const Homomorphism& next) const {
    if (!(target_ == next.source_)) {
        throw ShapeError("cannot compose " + source_.to_string() + " -> " + target_.to_string() + " with " +
                         next.source_.to_string() + " -> " + next.target_.to_string());
    }
    auto steps = steps_;
    steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
    return Homomorphism(source_, next.target_, std::move(steps));
}

bool Homomorphism::injective() const {
    return std::none_of(steps_.begin(), steps_.end(),
                        [](const Step& s) { return s.op == Op::Projection || s.op == Op::Support; });
}

Weight Homomorphism::apply(const Weight& w) const {
    require_match(source_, w);
    Weight cur = w;
    for (const auto& step : steps_) {
        switch (step.op) {
        case Op::Section: {
            Weight::Tuple items;
            for (std::size_t i = 0; i < step.to.factors().size(); ++i) {
                items.push_back(i == step.index ? cur : zero(step.to.factors()[i]));
            }
            cur = Weight::tuple(std::move(items));
            break;
        }
        case Op::PowerSection:
            cur = Weight::power({{step.label, cur}});
            break;
        case Op::Projection:
            cur = Weight(cur.as_tuple()[step.index]);
            break;
        case Op::Support:
            cur = Weight::boolean(!cur.is_zero());
            break;
        }
    }
    return cur;
}

Weight hom_apply(const Homomorphism& h, const Weight& w) { return h.apply(w); }

Homomorphism monoid_section(std::span<const std::size_t> path, const MonoidDesc& product) {
    if (path.empty()) throw PreconditionError("empty section path");
    // Walk down to collect the product at every step, then compose from the innermost outwards.
    std::vector<MonoidDesc> chain{product};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const auto& p = chain.back();
        if (p.kind() != MonoidKind::Product || path[k] >= p.factors().size()) {
            throw PreconditionError("section path does not address a product factor");
        }
        chain.push_back(p.factors()[path[k]]);
    }
    Homomorphism h = Homomorphism::section(chain.back(), path.back());
    for (std::size_t k = path.size() - 1; k-- > 0;) h = h.then(Homomorphism::section(chain[k], path[k]));
    return h;
}

}  // namespace futs
