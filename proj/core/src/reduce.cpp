#include "futs/reduce.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "futs/bisim.hpp"

namespace futs {

std::string_view stage_name(Stage s) {
    switch (s) {
    case Stage::Unlabel: return "unlabelled";
    case Stage::Tabularize: return "tabular";
    case Stage::Homogenize: return "homogeneous";
    case Stage::Nest: return "nested";
    case Stage::Flatten: return "flattened";
    }
    return "?";
}

std::string_view kind_name(ReductionKind k) {
    switch (k) {
    case ReductionKind::Identity: return "identity";
    case ReductionKind::Unlabel: return "unlabel";
    case ReductionKind::Tabularize: return "tabularize";
    case ReductionKind::Homogenize: return "homogenize";
    case ReductionKind::Nest: return "nest";
    case ReductionKind::Flatten: return "flatten";
    case ReductionKind::Composite: return "composite";
    }
    return "?";
}

std::string fused_label(std::size_t component, const std::string& label) {
    return "(" + std::to_string(component) + "," + label + ")";
}

std::string hidden_state_id(const WeightTerm& t) { return "#" + std::to_string(t.depth()) + ":" + t.to_string(); }

namespace {

const std::string kStar{kUnitLabel};

MonoidDesc homogeneous_monoid(const FutsSignature& sig) {
    std::vector<MonoidDesc> all;
    for (const auto& c : sig.components()) all.insert(all.end(), c.monoids.begin(), c.monoids.end());
    return MonoidDesc::product(std::move(all));
}

ReductionResult full_result(const Futs& source, Futs target, ReductionKind kind) {
    ReductionResult r;
    r.source = std::make_shared<const Futs>(source);
    r.carrier_map = CarrierMap::identity(source.states());
    r.target = std::move(target);
    r.kind = kind;
    r.full = true;
    return r;
}

}  // namespace

FutsSignature reduced_signature(Stage stage, const FutsSignature& sig) {
    std::vector<Component> rows;
    switch (stage) {
    case Stage::Unlabel:
        for (const auto& c : sig.components()) {
            Component row{{kStar}, c.monoids};
            // M^{a} ≅ M: a singleton label set keeps its monoid
            if (c.labels.size() > 1) row.monoids.front() = MonoidDesc::power(c.labels, c.monoids.front());
            rows.push_back(std::move(row));
        }
        break;
    case Stage::Tabularize: {
        const std::size_t l = sig.max_depth();
        for (const auto& c : sig.components()) {
            Component row{c.labels, std::vector<MonoidDesc>(l - c.depth(), MonoidDesc::nat_plus())};
            row.monoids.insert(row.monoids.end(), c.monoids.begin(), c.monoids.end());
            rows.push_back(std::move(row));
        }
        break;
    }
    case Stage::Homogenize: {
        const MonoidDesc q = homogeneous_monoid(sig);
        for (const auto& c : sig.components()) rows.push_back({c.labels, std::vector<MonoidDesc>(c.depth(), q)});
        break;
    }
    case Stage::Nest: {
        if (!sig.tabular() || !sig.homogeneous()) {
            throw PreconditionError("nest requires tabular homogeneous input");
        }
        Component row{{}, sig.component(0).monoids};
        for (std::size_t i = 0; i < sig.size(); ++i) {
            for (const auto& a : sig.component(i).labels) row.labels.push_back(fused_label(i, a));
        }
        rows.push_back(std::move(row));
        break;
    }
    case Stage::Flatten:
        if (!sig.nested() || !sig.unlabelled() || !sig.homogeneous()) {
            throw PreconditionError("flatten requires unlabelled homogeneous nested input");
        }
        rows.push_back({sig.component(0).labels, {sig.component(0).monoids.front()}});
        break;
    }
    return FutsSignature(std::move(rows));
}

std::vector<Stage> wts_plan(const FutsSignature& sig) {
    std::vector<Stage> plan{Stage::Unlabel, Stage::Tabularize, Stage::Homogenize, Stage::Nest, Stage::Unlabel};
    FutsSignature cur = sig;
    for (auto st : plan) cur = reduced_signature(st, cur);
    // With several components the second unlabel types the outer level as a power of the
    // shared monoid, so the row is homogenized once more before flattening.
    if (!cur.homogeneous()) plan.push_back(Stage::Homogenize);
    plan.push_back(Stage::Flatten);
    return plan;
}

ReductionResult identity_reduction(const Futs& s) { return full_result(s, s, ReductionKind::Identity); }

ReductionResult unlabel(const Futs& s) {
    const auto& sig = s.signature();
    Futs out(reduced_signature(Stage::Unlabel, sig), s.states());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& c = sig.component(i);
        if (c.labels.size() == 1) {
            for (const auto& [key, t] : s.transitions(i)) out.set_transition(i, key.first, kStar, t);
            continue;
        }
        const MonoidDesc outer = out.signature().component(i).monoids.front();
        std::map<std::string, std::vector<WeightTerm::Entry>> merged;
        for (const auto& [key, t] : s.transitions(i)) {
            const auto& [x, a] = key;
            for (const auto& [child, w] : t.entries()) {
                merged[x].emplace_back(child, power_dirac(a, w, c.labels, c.monoids.front()));
            }
        }
        for (auto& [x, entries] : merged) out.set_transition(i, x, kStar, WeightTerm::node(outer, c.depth(), std::move(entries)));
    }
    return full_result(s, std::move(out), ReductionKind::Unlabel);
}

ReductionResult tabularize(const Futs& s) {
    const auto& sig = s.signature();
    if (sig.tabular()) return full_result(s, s, ReductionKind::Tabularize);
    Futs out(reduced_signature(Stage::Tabularize, sig), s.states());
    const std::size_t l = sig.max_depth();
    const Weight p = Weight::natural(1);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& c = sig.component(i);
        const std::size_t pad = l - c.depth();
        for (const auto& x : s.states()) {
            for (const auto& a : c.labels) {
                // x ↦ p·x, once per missing level; applies to zero transitions too
                WeightTerm t = s.transition(i, x, a);
                for (std::size_t k = 0; k < pad; ++k) t = WeightTerm::dirac(MonoidDesc::nat_plus(), t, p);
                out.set_transition(i, x, a, t);
            }
        }
    }
    return full_result(s, std::move(out), ReductionKind::Tabularize);
}

ReductionResult homogenize(const Futs& s) {
    const auto& sig = s.signature();
    const MonoidDesc q = homogeneous_monoid(sig);
    std::vector<std::vector<Homomorphism>> homs;
    std::size_t offset = 0;
    for (const auto& c : sig.components()) {
        std::vector<Homomorphism> row;
        for (std::size_t j = 0; j < c.depth(); ++j) row.push_back(Homomorphism::section(q, offset++));
        homs.push_back(std::move(row));
    }
    return full_result(s, relabel_weights(s, homs), ReductionKind::Homogenize);
}

ReductionResult nest(const Futs& s) {
    const auto& sig = s.signature();
    Futs out(reduced_signature(Stage::Nest, sig), s.states());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& [key, t] : s.transitions(i)) out.set_transition(0, key.first, fused_label(i, key.second), t);
    }
    return full_result(s, std::move(out), ReductionKind::Nest);
}

namespace {

// Reinterprets a term one level down: its keys become state ids.
WeightTerm as_step(const WeightTerm& t, const MonoidDesc& m) {
    std::vector<WeightTerm::Entry> entries;
    entries.reserve(t.entries().size());
    for (const auto& [child, w] : t.entries()) {
        entries.emplace_back(WeightTerm::leaf(child.is_leaf() ? child.state() : hidden_state_id(child)), w);
    }
    return WeightTerm::node(m, 1, std::move(entries));
}

void collect_hidden(const WeightTerm& t, std::map<std::string, WeightTerm>& hidden) {
    for (const auto& e : t.entries()) {
        const auto& child = e.first;
        if (child.is_leaf()) continue;
        if (hidden.emplace(hidden_state_id(child), child).second) collect_hidden(child, hidden);
    }
}

}  // namespace

ReductionResult flatten(const Futs& s) {
    const auto& sig = s.signature();
    const FutsSignature out_sig = reduced_signature(Stage::Flatten, sig);
    const auto& label = sig.component(0).labels.front();
    const MonoidDesc m = sig.component(0).monoids.front();

    std::map<std::string, WeightTerm> hidden;
    for (const auto& [key, t] : s.transitions(0)) collect_hidden(t, hidden);

    std::vector<std::string> states = s.states();
    for (const auto& [id, _] : hidden) {
        if (s.has_state(id)) throw PreconditionError("intermediate state id '" + id + "' clashes with a state");
        states.push_back(id);
    }
    Futs out(out_sig, states);
    for (const auto& [key, t] : s.transitions(0)) out.set_transition(0, key.first, label, as_step(t, m));
    for (const auto& [id, t] : hidden) out.set_transition(0, id, label, as_step(t, m));

    ReductionResult r;
    r.source = std::make_shared<const Futs>(s);
    r.carrier_map = CarrierMap::identity(s.states());
    r.target = std::move(out);
    r.kind = ReductionKind::Flatten;
    r.full = hidden.empty();
    r.hidden = std::move(hidden);
    return r;
}

ReductionResult apply_stage(Stage stage, const Futs& s) {
    switch (stage) {
    case Stage::Unlabel: return unlabel(s);
    case Stage::Tabularize: return tabularize(s);
    case Stage::Homogenize: return homogenize(s);
    case Stage::Nest: return nest(s);
    case Stage::Flatten: return flatten(s);
    }
    throw PreconditionError("unknown stage");
}

ReductionResult to_wts(const Futs& s) {
    ReductionResult acc = identity_reduction(s);
    for (auto stage : wts_plan(s.signature())) acc = compose(acc, apply_stage(stage, acc.target));
    return acc;
}

ReductionResult compose(const ReductionResult& first, const ReductionResult& second) {
    if (first.target.states() != second.source->states() ||
        !(first.target.signature() == second.source->signature())) {
        throw PreconditionError("reductions do not compose: carriers or signatures differ");
    }
    if (first.kind == ReductionKind::Identity) return second;
    if (second.kind == ReductionKind::Identity) return first;
    ReductionResult r;
    r.source = first.source;
    r.target = second.target;
    r.carrier_map = first.carrier_map.then(second.carrier_map);
    r.kind = ReductionKind::Composite;
    r.full = first.full && second.full;
    for (const auto* part : {&first, &second}) {
        if (part->kind == ReductionKind::Composite) {
            r.stages.insert(r.stages.end(), part->stages.begin(), part->stages.end());
        } else {
            r.stages.push_back(*part);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bisimulation transport

namespace {

Partition pull_back(const ReductionResult& r, const Partition& target_partition) {
    const auto& src = r.source->states();
    std::vector<std::size_t> labels;
    labels.reserve(src.size());
    for (const auto& x : src) labels.push_back(target_partition.block_index(r.carrier_map(x)));
    return Partition::from_labelling(src, labels);
}

// One step of extend_bisim without checking that the input is a bisimulation.
Partition push_forward_step(const ReductionResult& r, const Partition& p) {
    const auto& tgt = r.target.states();
    std::map<std::string, std::string> inverse;
    for (const auto& [x, y] : r.carrier_map.mapping) inverse.emplace(y, x);

    std::map<std::string, std::size_t> hidden_classes;
    std::vector<std::size_t> labels;
    labels.reserve(tgt.size());
    for (const auto& y : tgt) {
        if (auto it = inverse.find(y); it != inverse.end()) {
            labels.push_back(p.block_index(it->second));
            continue;
        }
        auto h = r.hidden.find(y);
        if (h == r.hidden.end()) throw PreconditionError("target state '" + y + "' has no preimage");
        // intermediate terms are grouped by their image under the level extension of p
        const std::string key = hidden_state_id(quotient_term(h->second, p));
        auto [cls, _] = hidden_classes.emplace(key, p.size() + hidden_classes.size());
        labels.push_back(cls->second);
    }
    return Partition::from_labelling(tgt, labels);
}

Partition push_forward(const ReductionResult& r, const Partition& p) {
    if (r.kind != ReductionKind::Composite) return push_forward_step(r, p);
    Partition cur = p;
    for (const auto& stage : r.stages) cur = push_forward_step(stage, cur);
    // the composite's own target may have been built independently of its steps' targets
    if (cur.carrier() != r.target.states()) throw PreconditionError("composite target carrier differs from its steps");
    return cur;
}

}  // namespace

Partition restrict_bisim(const ReductionResult& r, const Partition& target_partition) {
    if (target_partition.carrier() != r.target.states()) {
        throw PreconditionError("partition carrier differs from the target states");
    }
    if (!is_bisimulation(r.target, target_partition)) throw PreconditionError("not a bisimulation of the target");
    return pull_back(r, target_partition);
}

Partition extend_bisim(const ReductionResult& r, const Partition& source_partition) {
    if (source_partition.carrier() != r.source->states()) {
        throw PreconditionError("partition carrier differs from the source states");
    }
    if (!is_bisimulation(*r.source, source_partition)) throw PreconditionError("not a bisimulation of the source");
    return push_forward(r, source_partition);
}

// ---------------------------------------------------------------------------
// Verification

std::string VerificationReport::summary() const {
    return std::to_string(checked) + "/" + std::to_string(total) + " relations checked, " +
           std::to_string(violations.size()) + " violations";
}

namespace {

Partition random_partition(const std::vector<std::string>& carrier, std::mt19937_64& rng) {
    std::vector<std::size_t> labels;
    std::size_t max_label = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i == 0 ? 0 : max_label + 1);
        labels.push_back(pick(rng));
        max_label = std::max(max_label, labels.back());
    }
    return Partition::from_labelling(carrier, labels);
}

void check_relation(const ReductionResult& r, const Partition& rel, VerificationReport& report) {
    const Futs& src = *r.source;
    ++report.checked;
    const bool bisim = is_bisimulation(src, rel);
    Partition image;
    try {
        image = push_forward(r, rel);
    } catch (const Error& e) {
        report.violations.push_back({rel.to_string(), std::string("transport failed: ") + e.what()});
        return;
    }
    const bool image_bisim = is_bisimulation(r.target, image);
    if (!bisim) {
        if (image_bisim) {
            report.violations.push_back({rel.to_string(), "not a bisimulation, but its transport " + image.to_string() +
                                                              " is a bisimulation of the target"});
        }
        return;
    }
    ++report.bisimulations;
    if (!image_bisim) {
        report.violations.push_back(
            {rel.to_string(), "bisimulation whose transport " + image.to_string() + " is not a target bisimulation"});
        return;
    }
    const auto& states = src.states();
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            const bool lhs = rel.related(states[a], states[b]);
            const bool rhs = image.related(r.carrier_map(states[a]), r.carrier_map(states[b]));
            if (lhs != rhs) {
                report.violations.push_back({rel.to_string(), "pair (" + states[a] + ", " + states[b] + ") is " +
                                                                  (lhs ? "" : "not ") + "related in the source but " +
                                                                  (rhs ? "" : "not ") + "in the target"});
                return;
            }
        }
    }
    if (!(pull_back(r, image) == rel)) {
        report.violations.push_back({rel.to_string(), "restricting the transported relation does not give it back"});
    }
}

}  // namespace

VerificationReport verify_reduction(const ReductionResult& r, const VerifyOptions& options) {
    VerificationReport report;
    const Futs& src = *r.source;
    const auto& states = src.states();

    if (options.exhaustive && states.size() > options.max_exhaustive_states) {
        throw PreconditionError("exhaustive verification is limited to " +
                                std::to_string(options.max_exhaustive_states) + " states (source has " +
                                std::to_string(states.size()) + "); use sampled mode");
    }

    // carrier map shape
    if (!r.carrier_map.total_on(states)) report.violations.push_back({"-", "carrier map is not total"});
    if (!r.carrier_map.injective()) report.violations.push_back({"-", "carrier map is not injective"});
    for (const auto& [x, y] : r.carrier_map.mapping) {
        if (!r.target.has_state(y)) report.violations.push_back({"-", "carrier map sends " + x + " outside the target"});
    }
    if (r.full && !r.carrier_map.surjective_onto(r.target.states())) {
        report.violations.push_back({"-", "full reduction with a non-surjective carrier map"});
    }
    if (!report.violations.empty()) return report;

    // largest bisimulations correspond
    const Partition source_largest = largest_bisimulation(src);
    const Partition target_largest = largest_bisimulation(r.target);
    if (!(pull_back(r, target_largest) == source_largest)) {
        report.violations.push_back({source_largest.to_string(), "largest target bisimulation restricts to " +
                                                                     pull_back(r, target_largest).to_string()});
    }

    if (options.exhaustive) {
        report.total = bell_number(states.size());
        for_each_partition(states, [&](const Partition& rel) { check_relation(r, rel, report); });
    } else {
        std::mt19937_64 rng(options.seed);
        std::set<std::vector<std::vector<std::string>>> seen;
        std::vector<Partition> sample{Partition::identity(states), source_largest};
        for (std::size_t k = 0; k < options.samples; ++k) sample.push_back(random_partition(states, rng));
        for (const auto& rel : sample) {
            if (!seen.insert(rel.blocks()).second) continue;
            check_relation(r, rel, report);
        }
        report.total = report.checked;
    }
    return report;
}

}  // namespace futs
