#include "futs/system.hpp"

#include <algorithm>
#include <set>

namespace futs {

bool Component::has_label(const std::string& a) const { return std::binary_search(labels.begin(), labels.end(), a); }

FutsSignature::FutsSignature(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw PreconditionError("a signature needs at least one component");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        auto& c = components_[i];
        std::sort(c.labels.begin(), c.labels.end());
        if (std::adjacent_find(c.labels.begin(), c.labels.end()) != c.labels.end()) {
            throw PreconditionError("component " + std::to_string(i) + " has duplicate labels");
        }
        if (c.labels.empty()) throw PreconditionError("component " + std::to_string(i) + " has no labels");
        if (c.monoids.empty()) throw PreconditionError("component " + std::to_string(i) + " has no monoids");
    }
}

const Component& FutsSignature::component(std::size_t i) const {
    if (i >= components_.size()) throw PreconditionError("component index " + std::to_string(i) + " out of range");
    return components_[i];
}

bool FutsSignature::nested() const { return components_.size() == 1; }

bool FutsSignature::combined() const {
    return std::all_of(components_.begin(), components_.end(), [](const Component& c) { return c.depth() == 1; });
}

bool FutsSignature::simple() const { return nested() && combined(); }

bool FutsSignature::tabular() const {
    return std::all_of(components_.begin(), components_.end(),
                       [&](const Component& c) { return c.depth() == components_.front().depth(); });
}

bool FutsSignature::homogeneous() const {
    const MonoidDesc& m = components_.front().monoids.front();
    for (const auto& c : components_) {
        for (const auto& mm : c.monoids) {
            if (!(mm == m)) return false;
        }
    }
    return true;
}

bool FutsSignature::unlabelled() const {
    return std::all_of(components_.begin(), components_.end(), [](const Component& c) { return c.labels.size() == 1; });
}

std::size_t FutsSignature::max_depth() const {
    std::size_t d = 0;
    for (const auto& c : components_) d = std::max(d, c.depth());
    return d;
}

// ---------------------------------------------------------------------------

Futs::Futs(FutsSignature sig, std::vector<std::string> states)
    : sig_(std::move(sig)), states_(std::move(states)), trans_(sig_.size()) {
    std::sort(states_.begin(), states_.end());
    if (std::adjacent_find(states_.begin(), states_.end()) != states_.end()) {
        throw PreconditionError("duplicate state id");
    }
}

bool Futs::has_state(const std::string& x) const { return std::binary_search(states_.begin(), states_.end(), x); }

void Futs::set_transition(std::size_t i, const std::string& x, const std::string& a, WeightTerm t) {
    if (i >= trans_.size()) throw PreconditionError("component index " + std::to_string(i) + " out of range");
    if (t.is_zero()) {
        trans_[i].erase({x, a});
    } else {
        trans_[i].insert_or_assign({x, a}, std::move(t));
    }
}

WeightTerm Futs::transition(std::size_t i, const std::string& x, const std::string& a) const {
    if (i >= trans_.size()) throw PreconditionError("component index " + std::to_string(i) + " out of range");
    auto it = trans_[i].find({x, a});
    if (it != trans_[i].end()) return it->second;
    const auto& c = sig_.component(i);
    return WeightTerm::zero(c.monoids.front(), c.depth());
}

const std::map<std::pair<std::string, std::string>, WeightTerm>& Futs::transitions(std::size_t i) const {
    if (i >= trans_.size()) throw PreconditionError("component index " + std::to_string(i) + " out of range");
    return trans_[i];
}

// ---------------------------------------------------------------------------

std::string Issue::to_string() const {
    std::string s;
    if (component) s += "component " + std::to_string(*component);
    if (!state.empty()) s += (s.empty() ? "" : ", ") + std::string("state ") + state;
    if (!label.empty()) s += (s.empty() ? "" : ", ") + std::string("label ") + label;
    return s.empty() ? message : s + ": " + message;
}

namespace {

void check_term(const Futs& s, const Component& row, const WeightTerm& t, std::size_t level, Issue base,
                std::vector<Issue>& out) {
    const std::size_t expected_depth = row.depth() - level;
    if (t.depth() != expected_depth) {
        base.message = "depth mismatch: term has depth " + std::to_string(t.depth()) + ", signature demands " +
                       std::to_string(expected_depth);
        out.push_back(std::move(base));
        return;
    }
    if (t.is_leaf()) {
        if (!s.has_state(t.state())) {
            base.message = "unknown state '" + t.state() + "'";
            out.push_back(std::move(base));
        }
        return;
    }
    if (!(t.monoid() == row.monoids[level])) {
        base.message = "monoid mismatch at level " + std::to_string(level) + ": " + t.monoid().to_string() +
                       " where the signature has " + row.monoids[level].to_string();
        out.push_back(std::move(base));
        return;
    }
    for (const auto& e : t.entries()) check_term(s, row, e.first, level + 1, base, out);
}

}  // namespace

std::vector<Issue> validate(const Futs& s) {
    std::vector<Issue> out;
    if (s.states().empty()) out.push_back({std::nullopt, {}, {}, "empty carrier"});
    const auto& sig = s.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& row = sig.component(i);
        for (const auto& [key, t] : s.transitions(i)) {
            const auto& [x, a] = key;
            Issue base{i, x, a, {}};
            if (!s.has_state(x)) {
                base.message = "transition from unknown state";
                out.push_back(base);
            }
            if (!row.has_label(a)) {
                base.message = "label not in A" + std::to_string(i);
                out.push_back(base);
            }
            check_term(s, row, t, 0, base, out);
        }
    }
    return out;
}

void require_valid(const Futs& s) {
    auto issues = validate(s);
    if (!issues.empty()) throw PreconditionError("invalid system: " + issues.front().to_string());
}

// ---------------------------------------------------------------------------

CarrierMap CarrierMap::identity(const std::vector<std::string>& states) {
    CarrierMap f;
    for (const auto& x : states) f.mapping.emplace(x, x);
    return f;
}

const std::string& CarrierMap::operator()(const std::string& x) const {
    auto it = mapping.find(x);
    if (it == mapping.end()) throw PreconditionError("carrier map is undefined on '" + x + "'");
    return it->second;
}

bool CarrierMap::total_on(const std::vector<std::string>& source) const {
    return std::all_of(source.begin(), source.end(), [this](const std::string& x) { return mapping.count(x) != 0; });
}

bool CarrierMap::injective() const {
    std::set<std::string> seen;
    for (const auto& [_, y] : mapping) {
        if (!seen.insert(y).second) return false;
    }
    return true;
}

bool CarrierMap::surjective_onto(const std::vector<std::string>& target) const {
    std::set<std::string> image;
    for (const auto& [_, y] : mapping) image.insert(y);
    return std::all_of(target.begin(), target.end(), [&](const std::string& y) { return image.count(y) != 0; });
}

CarrierMap CarrierMap::then(const CarrierMap& g) const {
    CarrierMap h;
    for (const auto& [x, y] : mapping) h.mapping.emplace(x, g(y));
    return h;
}

bool is_homomorphism(const Futs& source, const Futs& target, const CarrierMap& f) {
    if (!(source.signature() == target.signature())) {
        throw PreconditionError("homomorphism check needs systems of the same signature");
    }
    if (!f.total_on(source.states())) throw PreconditionError("carrier map is not total on the source");
    for (const auto& [x, y] : f.mapping) {
        if (!target.has_state(y)) throw PreconditionError("carrier map leaves the target carrier at '" + y + "'");
    }
    const auto& sig = source.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& x : source.states()) {
            for (const auto& a : sig.component(i).labels) {
                if (!(target.transition(i, f(x), a) == pushforward(f.mapping, source.transition(i, x, a)))) {
                    return false;
                }
            }
        }
    }
    return true;
}

Futs dirac_embed(const Futs& wlts) {
    const auto& sig = wlts.signature();
    if (!sig.simple()) throw PreconditionError("dirac_embed needs a simple system (a WLTS)");
    const auto& row = sig.component(0);
    Component out_row{row.labels, {MonoidDesc::bool_or(), row.monoids.front()}};
    Futs out(FutsSignature({out_row}), wlts.states());
    for (const auto& x : wlts.states()) {
        for (const auto& a : row.labels) {
            out.set_transition(0, x, a,
                               WeightTerm::dirac(MonoidDesc::bool_or(), wlts.transition(0, x, a), Weight::boolean(true)));
        }
    }
    return out;
}

Futs relabel_weights(const Futs& s, const std::vector<std::vector<Homomorphism>>& homs) {
    const auto& sig = s.signature();
    if (homs.size() != sig.size()) throw ShapeError("relabel_weights needs one homomorphism row per component");
    std::vector<Component> rows;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& row = sig.component(i);
        if (homs[i].size() != row.depth()) {
            throw ShapeError("relabel_weights: row " + std::to_string(i) + " needs " + std::to_string(row.depth()) +
                             " homomorphisms");
        }
        Component out_row{row.labels, {}};
        for (std::size_t j = 0; j < row.depth(); ++j) {
            const auto& h = homs[i][j];
            if (!(h.source() == row.monoids[j])) {
                throw ShapeError("relabel_weights: homomorphism (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") has source " + h.source().to_string() + ", expected " +
                                 row.monoids[j].to_string());
            }
            if (!h.injective()) {
                throw PreconditionError("relabel_weights: homomorphism (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") is not injective");
            }
            out_row.monoids.push_back(h.target());
        }
        rows.push_back(std::move(out_row));
    }
    Futs out(FutsSignature(std::move(rows)), s.states());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& [key, t] : s.transitions(i)) out.set_transition(i, key.first, key.second, map_weights(t, homs[i]));
    }
    return out;
}

}  // namespace futs
