#include "futs/bisim.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace futs {

namespace {

void require_carrier(const Futs& s, const Partition& p) {
    if (p.carrier() != s.states()) throw PreconditionError("partition carrier differs from the system's states");
}

// The split key of x: its quotiented transitions over every (component, label).
std::string signature_of(const Futs& s, const Partition& p, const std::string& x) {
    std::string key;
    const auto& sig = s.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& a : sig.component(i).labels) {
            key += quotient_term(s.transition(i, x, a), p).to_string();
            key += '\x1f';
        }
    }
    return key;
}

}  // namespace

bool ext_related(const Partition& p, const WeightTerm& t, const WeightTerm& u) {
    return term_equal(quotient_term(t, p), quotient_term(u, p));
}

bool is_bisimulation(const Futs& s, const Partition& p) {
    require_carrier(s, p);
    const auto& sig = s.signature();
    for (const auto& block : p.blocks()) {
        const auto& rep = block.front();
        for (std::size_t k = 1; k < block.size(); ++k) {
            for (std::size_t i = 0; i < sig.size(); ++i) {
                for (const auto& a : sig.component(i).labels) {
                    if (!ext_related(p, s.transition(i, rep, a), s.transition(i, block[k], a))) return false;
                }
            }
        }
    }
    return true;
}

Partition largest_bisimulation(const Futs& s) {
    const auto& states = s.states();
    Partition current = Partition::one_block(states);
    while (true) {
        std::map<std::pair<std::size_t, std::string>, std::size_t> classes;
        std::vector<std::size_t> labels;
        labels.reserve(states.size());
        for (const auto& x : states) {
            auto key = std::make_pair(current.block_index(x), signature_of(s, current, x));
            auto [it, _] = classes.emplace(std::move(key), classes.size());
            labels.push_back(it->second);
        }
        Partition next = Partition::from_labelling(states, labels);
        if (next.size() == current.size()) return current;
        current = std::move(next);
    }
}

Futs quotient_system(const Futs& s, const Partition& p) {
    if (!is_bisimulation(s, p)) throw PreconditionError("quotient needs a bisimulation");
    std::vector<std::string> ids;
    for (const auto& block : p.blocks()) ids.push_back(block.front());
    Futs q(s.signature(), ids);
    const auto& sig = s.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& id : ids) {
            for (const auto& a : sig.component(i).labels) q.set_transition(i, id, a, quotient_term(s.transition(i, id, a), p));
        }
    }
    return q;
}

bool is_kernel_bisimulation(const Futs& s, const Partition& p) {
    require_carrier(s, p);
    std::vector<std::string> ids;
    for (const auto& block : p.blocks()) ids.push_back(block.front());
    Futs candidate(s.signature(), ids);
    const auto& sig = s.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& id : ids) {
            for (const auto& a : sig.component(i).labels) {
                candidate.set_transition(i, id, a, quotient_term(s.transition(i, id, a), p));
            }
        }
    }
    CarrierMap kappa;
    for (const auto& x : s.states()) kappa.mapping.emplace(x, p.block_id(x));
    return is_homomorphism(s, candidate, kappa);
}

Partition largest_bisimulation_by_enumeration(const Futs& s) {
    const auto& states = s.states();
    // union-find over all bisimulations, then close transitively
    std::vector<std::size_t> parent(states.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto index_of = [&](const std::string& x) {
        return static_cast<std::size_t>(std::lower_bound(states.begin(), states.end(), x) - states.begin());
    };
    for_each_partition(states, [&](const Partition& p) {
        if (!is_bisimulation(s, p)) return;
        for (const auto& block : p.blocks()) {
            const auto root = find(index_of(block.front()));
            for (const auto& x : block) parent[find(index_of(x))] = root;
        }
    });
    std::vector<std::size_t> labels;
    for (std::size_t v = 0; v < states.size(); ++v) labels.push_back(find(v));
    return Partition::from_labelling(states, labels);
}

}  // namespace futs
