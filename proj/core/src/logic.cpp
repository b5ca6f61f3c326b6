#include "futs/logic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "futs/bisim.hpp"

namespace futs {

struct Formula::Node {
    Kind kind;
    std::vector<Formula> children;  // [left, right] or [body]
    std::size_t component = 0;
    std::string label;
    std::vector<Weight> bounds;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() {
    static const auto t = std::make_shared<const Node>(Node{Kind::Top, {}, 0, {}, {}});
    return Formula(t);
}

Formula Formula::conj(Formula left, Formula right) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, {std::move(left), std::move(right)}, 0, {}, {}}));
}

Formula Formula::diamond(std::size_t component, std::string label, std::vector<Weight> bounds, Formula body) {
    if (bounds.empty()) throw ShapeError("a diamond needs at least one bound");
    return Formula(std::make_shared<const Node>(
        Node{Kind::Diamond, {std::move(body)}, component, std::move(label), std::move(bounds)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Formula& Formula::left() const {
    if (kind() != Kind::And) throw ShapeError("left() of a non-conjunction");
    return node_->children[0];
}

const Formula& Formula::right() const {
    if (kind() != Kind::And) throw ShapeError("right() of a non-conjunction");
    return node_->children[1];
}

std::size_t Formula::component() const { return node_->component; }
const std::string& Formula::label() const { return node_->label; }
const std::vector<Weight>& Formula::bounds() const { return node_->bounds; }

const Formula& Formula::body() const {
    if (kind() != Kind::Diamond) throw ShapeError("body() of a non-diamond");
    return node_->children[0];
}

std::size_t Formula::modal_depth() const {
    switch (kind()) {
    case Kind::Top: return 0;
    case Kind::And: return std::max(left().modal_depth(), right().modal_depth());
    case Kind::Diamond: return 1 + body().modal_depth();
    }
    return 0;
}

std::size_t Formula::size() const {
    switch (kind()) {
    case Kind::Top: return 1;
    case Kind::And: return 1 + left().size() + right().size();
    case Kind::Diamond: return 1 + body().size();
    }
    return 0;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::And: return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Diamond:
        return a.component() == b.component() && a.label() == b.label() && a.bounds() == b.bounds() &&
               a.body() == b.body();
    }
    return false;
}

void check_formula(const FutsSignature& sig, const Formula& phi) {
    switch (phi.kind()) {
    case Formula::Kind::Top: return;
    case Formula::Kind::And:
        check_formula(sig, phi.left());
        check_formula(sig, phi.right());
        return;
    case Formula::Kind::Diamond: {
        if (phi.component() >= sig.size()) {
            throw PreconditionError("diamond component " + std::to_string(phi.component()) + " out of range");
        }
        const auto& row = sig.component(phi.component());
        if (!row.has_label(phi.label())) {
            throw PreconditionError("label '" + phi.label() + "' is not in A" + std::to_string(phi.component()));
        }
        if (phi.bounds().size() != row.depth()) {
            throw ShapeError("diamond has " + std::to_string(phi.bounds().size()) + " bounds, component " +
                             std::to_string(phi.component()) + " has " + std::to_string(row.depth()) + " layers");
        }
        for (std::size_t j = 0; j < row.depth(); ++j) require_match(row.monoids[j], phi.bounds()[j]);
        check_formula(sig, phi.body());
        return;
    }
    }
}

bool diamond_member(const WeightTerm& rho, const Weight& m, const std::function<bool(const WeightTerm&)>& in_y) {
    return nat_leq(rho.monoid(), m, class_sum(rho, in_y));
}

bool nested_member(const WeightTerm& rho, std::span<const Weight> bounds,
                   const std::function<bool(const std::string&)>& in_y) {
    if (rho.is_leaf()) return in_y(rho.state());
    if (bounds.size() != rho.depth()) throw ShapeError("bound vector length differs from term depth");
    return diamond_member(rho, bounds.front(),
                          [&](const WeightTerm& child) { return nested_member(child, bounds.subspan(1), in_y); });
}

namespace {

using StateSet = std::vector<bool>;

class SatEvaluator {
public:
    explicit SatEvaluator(const Futs& s) : s_(s) {
        for (std::size_t k = 0; k < s.states().size(); ++k) index_.emplace(s.states()[k], k);
    }

    const StateSet& eval(const Formula& phi) {
        if (auto it = memo_.find(phi.id()); it != memo_.end()) return it->second;
        const std::size_t n = s_.states().size();
        StateSet out(n, false);
        switch (phi.kind()) {
        case Formula::Kind::Top: out.assign(n, true); break;
        case Formula::Kind::And: {
            const StateSet l = eval(phi.left());
            const StateSet& r = eval(phi.right());
            for (std::size_t k = 0; k < n; ++k) out[k] = l[k] && r[k];
            break;
        }
        case Formula::Kind::Diamond: {
            const StateSet body = eval(phi.body());
            auto in_body = [&](const std::string& y) {
                auto it = index_.find(y);
                return it != index_.end() && body[it->second];
            };
            for (std::size_t k = 0; k < n; ++k) {
                out[k] = nested_member(s_.transition(phi.component(), s_.states()[k], phi.label()), phi.bounds(), in_body);
            }
            break;
        }
        }
        return memo_.emplace(phi.id(), std::move(out)).first->second;
    }

    std::size_t index(const std::string& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) throw PreconditionError("unknown state '" + x + "'");
        return it->second;
    }

private:
    const Futs& s_;
    std::map<std::string, std::size_t> index_;
    std::unordered_map<const void*, StateSet> memo_;
};

}  // namespace

bool satisfies(const Futs& s, const std::string& x, const Formula& phi) {
    check_formula(s.signature(), phi);
    SatEvaluator ev(s);
    const std::size_t k = ev.index(x);
    return ev.eval(phi)[k];
}

std::vector<std::string> sat_set(const Futs& s, const Formula& phi) {
    check_formula(s.signature(), phi);
    SatEvaluator ev(s);
    const auto& set = ev.eval(phi);
    std::vector<std::string> out;
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (set[k]) out.push_back(s.states()[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Translations

namespace {

template <typename F>
Formula rewrite_diamonds(const Formula& phi, const F& rewrite) {
    switch (phi.kind()) {
    case Formula::Kind::Top: return phi;
    case Formula::Kind::And: return Formula::conj(rewrite_diamonds(phi.left(), rewrite), rewrite_diamonds(phi.right(), rewrite));
    case Formula::Kind::Diamond: return rewrite(phi, rewrite_diamonds(phi.body(), rewrite));
    }
    return phi;
}

}  // namespace

Formula translate(Stage stage, const FutsSignature& source, const Formula& phi) {
    check_formula(source, phi);
    const std::string star{kUnitLabel};
    switch (stage) {
    case Stage::Unlabel:
        return rewrite_diamonds(phi, [&](const Formula& d, Formula body) {
            const auto& row = source.component(d.component());
            auto bounds = d.bounds();
            if (row.labels.size() > 1) bounds.front() = power_dirac(d.label(), bounds.front(), row.labels, row.monoids.front());
            return Formula::diamond(d.component(), star, std::move(bounds), std::move(body));
        });
    case Stage::Tabularize: {
        const std::size_t l = source.max_depth();
        return rewrite_diamonds(phi, [&](const Formula& d, Formula body) {
            const auto& row = source.component(d.component());
            std::vector<Weight> bounds(l - row.depth(), Weight::natural(1));
            bounds.insert(bounds.end(), d.bounds().begin(), d.bounds().end());
            return Formula::diamond(d.component(), d.label(), std::move(bounds), std::move(body));
        });
    }
    case Stage::Homogenize: {
        const MonoidDesc q = reduced_signature(Stage::Homogenize, source).component(0).monoids.front();
        std::vector<std::size_t> offsets;
        std::size_t offset = 0;
        for (const auto& c : source.components()) {
            offsets.push_back(offset);
            offset += c.depth();
        }
        return rewrite_diamonds(phi, [&](const Formula& d, Formula body) {
            std::vector<Weight> bounds;
            for (std::size_t j = 0; j < d.bounds().size(); ++j) {
                bounds.push_back(Homomorphism::section(q, offsets[d.component()] + j).apply(d.bounds()[j]));
            }
            return Formula::diamond(d.component(), d.label(), std::move(bounds), std::move(body));
        });
    }
    case Stage::Nest:
        (void)reduced_signature(Stage::Nest, source);
        return rewrite_diamonds(phi, [&](const Formula& d, Formula body) {
            return Formula::diamond(0, fused_label(d.component(), d.label()), d.bounds(), std::move(body));
        });
    case Stage::Flatten:
        (void)reduced_signature(Stage::Flatten, source);
        return rewrite_diamonds(phi, [&](const Formula& d, Formula body) {
            Formula chain = std::move(body);
            for (std::size_t j = d.bounds().size(); j-- > 0;) chain = Formula::diamond(0, d.label(), {d.bounds()[j]}, chain);
            return chain;
        });
    }
    throw PreconditionError("unknown stage");
}

Formula translate_to_wts(const FutsSignature& source, const Formula& phi) {
    FutsSignature sig = source;
    Formula out = phi;
    for (auto stage : wts_plan(source)) {
        out = translate(stage, sig, out);
        sig = reduced_signature(stage, sig);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounded logical equivalence

namespace {

void subset_sums(const WeightTerm& t, std::set<Weight>& out) {
    std::set<Weight> sums{zero(t.monoid())};
    for (const auto& e : t.entries()) {
        std::set<Weight> next = sums;
        for (const auto& s : sums) next.insert(add(t.monoid(), s, e.second));
        sums = std::move(next);
    }
    out.insert(sums.begin(), sums.end());
}

void grid_walk(const WeightTerm& t, std::size_t level, std::vector<std::set<Weight>>& per_level) {
    if (t.is_leaf()) return;
    subset_sums(t, per_level[level]);
    for (const auto& e : t.entries()) grid_walk(e.first, level + 1, per_level);
}

// Distinct (sub)terms of one component, indexed per depth, with child indices resolved.
struct TermUniverse {
    struct Item {
        WeightTerm term;
        std::vector<std::pair<std::size_t, Weight>> children;  // index at depth-1 (state index at depth 0)
    };
    std::vector<std::vector<Item>> by_depth;            // [depth] → items, depth 1..L
    std::vector<std::map<WeightTerm, std::size_t>> ids;  // [depth] → index
    // outer[label_index][state_index] = index at depth L
    std::vector<std::vector<std::size_t>> outer;
    MonoidDesc monoid_at(std::size_t depth) const { return by_depth[depth].front().term.monoid(); }
};

class LevelwiseEngine {
public:
    LevelwiseEngine(const Futs& s, Grid grid) : s_(s), grid_(std::move(grid)) {
        const auto& states = s.states();
        for (std::size_t k = 0; k < states.size(); ++k) state_index_.emplace(states[k], k);
        const auto& sig = s.signature();
        if (grid_.size() != sig.size()) throw ShapeError("grid needs one row per component");
        for (std::size_t i = 0; i < sig.size(); ++i) {
            const auto& row = sig.component(i);
            if (grid_[i].size() != row.depth()) throw ShapeError("grid row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < row.depth(); ++j) {
                if (grid_[i][j].empty()) throw PreconditionError("empty grid at (" + std::to_string(i) + "," + std::to_string(j) + ")");
                for (const auto& w : grid_[i][j]) require_match(row.monoids[j], w);
            }
            universes_.push_back(build_universe(i));
        }
        add_set(StateSet(states.size(), true), Formula::top());
    }

    // One more modal level. Returns false when nothing new appeared.
    bool step() {
        const std::size_t before = family_.size();
        const std::size_t snapshot = family_.size();
        const auto& sig = s_.signature();
        for (std::size_t f = 0; f < snapshot; ++f) {
            const StateSet body = family_[f].first;
            const Formula witness = family_[f].second;
            for (std::size_t i = 0; i < sig.size(); ++i) {
                for (const auto& [outer_set, bounds] : chains(i, body)) {
                    const auto& labels = sig.component(i).labels;
                    for (std::size_t a = 0; a < labels.size(); ++a) {
                        StateSet out(s_.states().size(), false);
                        for (std::size_t k = 0; k < out.size(); ++k) out[k] = outer_set[universes_[i].outer[a][k]];
                        add_set(std::move(out), Formula::diamond(i, labels[a], bounds, witness));
                    }
                }
            }
        }
        close_under_intersection(before);
        return family_.size() != before;
    }

    const std::vector<std::pair<StateSet, Formula>>& family() const { return family_; }

    Partition partition() const {
        std::map<std::vector<bool>, std::size_t> classes;
        std::vector<std::size_t> labels;
        for (std::size_t k = 0; k < s_.states().size(); ++k) {
            std::vector<bool> membership;
            membership.reserve(family_.size());
            for (const auto& [set, _] : family_) membership.push_back(set[k]);
            labels.push_back(classes.emplace(std::move(membership), classes.size()).first->second);
        }
        return Partition::from_labelling(s_.states(), labels);
    }

    std::size_t index(const std::string& x) const {
        auto it = state_index_.find(x);
        if (it == state_index_.end()) throw PreconditionError("unknown state '" + x + "'");
        return it->second;
    }

private:
    TermUniverse build_universe(std::size_t i) {
        const auto& row = s_.signature().component(i);
        const std::size_t depth = row.depth();
        TermUniverse u;
        u.by_depth.resize(depth + 1);
        u.ids.resize(depth + 1);
        std::function<std::size_t(const WeightTerm&)> intern = [&](const WeightTerm& t) -> std::size_t {
            if (t.is_leaf()) return state_index_.at(t.state());
            auto& ids = u.ids[t.depth()];
            if (auto it = ids.find(t); it != ids.end()) return it->second;
            TermUniverse::Item item{t, {}};
            for (const auto& [child, w] : t.entries()) item.children.emplace_back(intern(child), w);
            const std::size_t id = u.by_depth[t.depth()].size();
            u.by_depth[t.depth()].push_back(std::move(item));
            ids.emplace(t, id);
            return id;
        };
        for (const auto& a : row.labels) {
            std::vector<std::size_t> per_state;
            for (const auto& x : s_.states()) per_state.push_back(intern(s_.transition(i, x, a)));
            u.outer.push_back(std::move(per_state));
        }
        return u;
    }

    // All distinct ⟨m_0⟩…⟨m_l⟩Y over depth-(l+1) terms of component i, with a witness bound vector.
    std::vector<std::pair<std::vector<bool>, std::vector<Weight>>> chains(std::size_t i, const StateSet& y) const {
        const auto& u = universes_[i];
        const std::size_t depth = u.by_depth.size() - 1;
        const auto& monoids = s_.signature().component(i).monoids;
        std::map<std::vector<bool>, std::vector<Weight>> current{{y, {}}};  // sets over depth-0 (states)
        for (std::size_t d = 1; d <= depth; ++d) {
            const std::size_t level = depth - d;  // bound index used at this depth
            const MonoidDesc& m = monoids[level];
            std::map<std::vector<bool>, std::vector<Weight>> next;
            for (const auto& [inner, suffix] : current) {
                // sums over `inner` for each term at depth d
                std::vector<Weight> sums;
                sums.reserve(u.by_depth[d].size());
                for (const auto& item : u.by_depth[d]) {
                    Weight acc = zero(m);
                    for (const auto& [child, w] : item.children) {
                        if (inner[child]) acc = add(m, acc, w);
                    }
                    sums.push_back(std::move(acc));
                }
                for (const auto& bound : grid_[i][level]) {
                    std::vector<bool> set(sums.size());
                    for (std::size_t t = 0; t < sums.size(); ++t) set[t] = nat_leq(m, bound, sums[t]);
                    if (next.count(set)) continue;
                    std::vector<Weight> bounds{bound};
                    bounds.insert(bounds.end(), suffix.begin(), suffix.end());
                    next.emplace(std::move(set), std::move(bounds));
                }
            }
            current = std::move(next);
        }
        return {current.begin(), current.end()};
    }

    void add_set(StateSet set, Formula witness) {
        if (index_of_.count(set)) return;
        index_of_.emplace(set, family_.size());
        family_.emplace_back(std::move(set), std::move(witness));
    }

    void close_under_intersection(std::size_t first_new) {
        for (std::size_t k = first_new; k < family_.size(); ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                StateSet meet(family_[k].first.size());
                for (std::size_t b = 0; b < meet.size(); ++b) meet[b] = family_[k].first[b] && family_[j].first[b];
                if (index_of_.count(meet)) continue;
                Formula w = Formula::conj(family_[j].second, family_[k].second);
                add_set(std::move(meet), std::move(w));
            }
        }
    }

    const Futs& s_;
    Grid grid_;
    std::map<std::string, std::size_t> state_index_;
    std::vector<TermUniverse> universes_;
    std::vector<std::pair<StateSet, Formula>> family_;
    std::map<StateSet, std::size_t> index_of_;
};

}  // namespace

Grid default_grid(const Futs& s) {
    Grid grid;
    const auto& sig = s.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& row = sig.component(i);
        std::vector<std::set<Weight>> per_level(row.depth());
        for (const auto& x : s.states()) {
            for (const auto& a : row.labels) grid_walk(s.transition(i, x, a), 0, per_level);
        }
        std::vector<std::vector<Weight>> out;
        for (std::size_t j = 0; j < row.depth(); ++j) {
            per_level[j].insert(zero(row.monoids[j]));
            out.emplace_back(per_level[j].begin(), per_level[j].end());
        }
        grid.push_back(std::move(out));
    }
    return grid;
}

Partition bounded_logical_equiv(const Futs& s, std::optional<std::size_t> depth, const std::optional<Grid>& grid) {
    LevelwiseEngine engine(s, grid ? *grid : default_grid(s));
    const std::size_t limit = depth.value_or(s.states().size());
    for (std::size_t level = 0; level < limit; ++level) {
        if (!engine.step()) break;
    }
    return engine.partition();
}

std::optional<Formula> find_distinguishing_formula(const Futs& s, const std::string& x, const std::string& x2,
                                                   std::optional<std::size_t> depth) {
    const auto& sig = s.signature();
    if (!sig.simple()) throw PreconditionError("distinguishing formulas are built for simple systems");
    if (!s.has_state(x) || !s.has_state(x2)) throw PreconditionError("unknown state");
    const MonoidDesc& m = sig.component(0).monoids.front();
    LevelwiseEngine engine(s, default_grid(s));
    const std::size_t limit = depth.value_or(s.states().size());
    std::size_t searched = 0;
    for (std::size_t level = 0;; ++level) {
        const auto& family = engine.family();
        for (; searched < family.size(); ++searched) {
            const auto& [set, witness] = family[searched];
            auto in_set = [&](const WeightTerm& t) { return set[engine.index(t.state())]; };
            for (const auto& a : sig.component(0).labels) {
                const Weight w1 = class_sum(s.transition(0, x, a), in_set);
                const Weight w2 = class_sum(s.transition(0, x2, a), in_set);
                if (w1 == w2) continue;
                std::optional<Formula> found;
                if (!nat_leq(m, w1, w2)) {
                    found = Formula::diamond(0, a, {w1}, witness);
                } else if (!nat_leq(m, w2, w1)) {
                    found = Formula::diamond(0, a, {w2}, witness);
                }
                if (found) {
                    if (satisfies(s, x, *found) == satisfies(s, x2, *found)) {
                        throw Error("internal: constructed formula does not separate the states");
                    }
                    return found;
                }
            }
        }
        if (level >= limit || !engine.step()) return std::nullopt;
    }
}

std::optional<Formula> distinguishing_formula(const Futs& s, const std::string& x, const std::string& x2) {
    const auto& sig = s.signature();
    if (!sig.simple()) throw PreconditionError("distinguishing_formula needs a simple system");
    if (!sig.component(0).monoids.front().cancellative()) {
        throw PreconditionError("distinguishing_formula needs a cancellative monoid; " +
                                sig.component(0).monoids.front().to_string() + " is not");
    }
    if (!s.has_state(x) || !s.has_state(x2)) throw PreconditionError("unknown state");
    if (largest_bisimulation(s).related(x, x2)) return std::nullopt;
    auto phi = find_distinguishing_formula(s, x, x2, s.states().size() + 1);
    if (!phi) throw Error("internal: no distinguishing formula found for non-bisimilar states");
    return phi;
}

}  // namespace futs
