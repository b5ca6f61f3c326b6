#include "futs/weight_term.hpp"

#include <algorithm>

#include "futs/ident.hpp"

namespace futs {

WeightTerm WeightTerm::leaf(std::string state) {
    WeightTerm t;
    t.state_ = std::move(state);
    return t;
}

WeightTerm WeightTerm::node(MonoidDesc monoid, std::size_t depth, std::vector<Entry> entries) {
    if (depth == 0) throw ShapeError("a weight-function node has depth at least 1");
    for (const auto& [key, w] : entries) {
        if (key.depth() != depth - 1) {
            throw ShapeError("child " + key.to_string() + " has depth " + std::to_string(key.depth()) + ", expected " +
                             std::to_string(depth - 1));
        }
        require_match(monoid, w);
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
        if (!merged.empty() && merged.back().first == e.first) {
            merged.back().second = add(monoid, merged.back().second, e.second);
        } else {
            merged.push_back(std::move(e));
        }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
    WeightTerm t;
    t.depth_ = depth;
    t.node_ = std::make_shared<const Node>(Node{std::move(monoid), std::move(merged)});
    return t;
}

WeightTerm WeightTerm::zero(MonoidDesc monoid, std::size_t depth) { return node(std::move(monoid), depth, {}); }

WeightTerm WeightTerm::dirac(MonoidDesc monoid, WeightTerm key, Weight weight) {
    const std::size_t d = key.depth() + 1;
    return node(std::move(monoid), d, {{std::move(key), std::move(weight)}});
}

const std::string& WeightTerm::state() const {
    if (!is_leaf()) throw ShapeError("state() on a weight-function node");
    return state_;
}

const MonoidDesc& WeightTerm::monoid() const {
    if (is_leaf()) throw ShapeError("monoid() on a leaf");
    return node_->monoid;
}

std::span<const WeightTerm::Entry> WeightTerm::entries() const {
    if (is_leaf()) throw ShapeError("entries() on a leaf");
    return node_->entries;
}

Weight WeightTerm::at(const WeightTerm& key) const {
    auto es = entries();
    auto it = std::lower_bound(es.begin(), es.end(), key, [](const Entry& e, const WeightTerm& k) { return e.first < k; });
    if (it != es.end() && it->first == key) return it->second;
    return futs::zero(monoid());
}

std::string WeightTerm::to_string() const {
    if (is_leaf()) return quote_id(state_);
    std::string s = "{";
    bool first = true;
    for (const auto& [key, w] : node_->entries) {
        if (!first) s += ", ";
        first = false;
        s += key.to_string() + ": " + w.to_string();
    }
    return s + "}";
}

bool operator==(const WeightTerm& a, const WeightTerm& b) {
    if (a.depth_ != b.depth_) return false;
    if (a.is_leaf()) return a.state_ == b.state_;
    if (a.node_ == b.node_) return true;
    return a.node_->entries == b.node_->entries && a.node_->monoid == b.node_->monoid;
}

std::strong_ordering operator<=>(const WeightTerm& a, const WeightTerm& b) {
    if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
    if (a.is_leaf()) return a.state_ <=> b.state_;
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const auto& x = a.node_->entries;
    const auto& y = b.node_->entries;
    auto c = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end(),
                                                    [](const WeightTerm::Entry& p, const WeightTerm::Entry& q) {
                                                        if (auto k = p.first <=> q.first; k != 0) return k;
                                                        return p.second <=> q.second;
                                                    });
    if (c != 0) return c;
    if (a.node_->monoid == b.node_->monoid) return std::strong_ordering::equal;
    return a.node_->monoid.to_string() <=> b.node_->monoid.to_string();
}

std::vector<WeightTerm> support(const WeightTerm& t) {
    if (t.is_leaf()) throw ShapeError("support of a leaf");
    std::vector<WeightTerm> keys;
    for (const auto& e : t.entries()) keys.push_back(e.first);
    return keys;
}

namespace {

void collect_leaves(const WeightTerm& t, std::set<std::string>& out) {
    if (t.is_leaf()) {
        out.insert(t.state());
        return;
    }
    for (const auto& e : t.entries()) collect_leaves(e.first, out);
}

}  // namespace

std::set<std::string> leaves(const WeightTerm& t) {
    std::set<std::string> out;
    collect_leaves(t, out);
    return out;
}

std::vector<MonoidDesc> monoid_stack(const WeightTerm& t) {
    std::vector<MonoidDesc> stack;
    const WeightTerm* cur = &t;
    while (!cur->is_leaf()) {
        stack.push_back(cur->monoid());
        if (cur->entries().empty()) break;
        cur = &cur->entries().front().first;
    }
    return stack;
}

WeightTerm pushforward(const std::function<std::string(const std::string&)>& f, const WeightTerm& t) {
    if (t.is_leaf()) return WeightTerm::leaf(f(t.state()));
    std::vector<WeightTerm::Entry> mapped;
    mapped.reserve(t.entries().size());
    for (const auto& [key, w] : t.entries()) mapped.emplace_back(pushforward(f, key), w);
    return WeightTerm::node(t.monoid(), t.depth(), std::move(mapped));
}

WeightTerm pushforward(const StateMap& f, const WeightTerm& t) {
    return pushforward(
        [&f](const std::string& x) -> std::string {
            auto it = f.find(x);
            if (it == f.end()) throw PreconditionError("state map is undefined on '" + x + "'");
            return it->second;
        },
        t);
}

WeightTerm quotient_term(const WeightTerm& t, const Partition& p) {
    return pushforward([&p](const std::string& x) { return p.block_id(x); }, t);
}

namespace {

void require_same_shape(const WeightTerm& a, const WeightTerm& b) {
    if (a.depth() != b.depth()) {
        throw ShapeError("terms of depth " + std::to_string(a.depth()) + " and " + std::to_string(b.depth()) +
                         " are not comparable");
    }
    auto sa = monoid_stack(a);
    auto sb = monoid_stack(b);
    for (std::size_t i = 0; i < std::min(sa.size(), sb.size()); ++i) {
        if (!(sa[i] == sb[i])) {
            throw ShapeError("terms differ in monoid at level " + std::to_string(i) + ": " + sa[i].to_string() +
                             " vs " + sb[i].to_string());
        }
    }
}

}  // namespace

bool term_equal(const WeightTerm& a, const WeightTerm& b) {
    require_same_shape(a, b);
    return a == b;
}

Weight class_sum(const WeightTerm& t, const std::function<bool(const WeightTerm&)>& member) {
    Weight acc = zero(t.monoid());
    for (const auto& [key, w] : t.entries()) {
        if (member(key)) acc = add(t.monoid(), acc, w);
    }
    return acc;
}

Weight class_sum(const WeightTerm& t, const std::set<WeightTerm>& keys) {
    return class_sum(t, [&keys](const WeightTerm& k) { return keys.count(k) != 0; });
}

WeightTerm map_weights(const WeightTerm& t, std::span<const Homomorphism> per_level) {
    if (t.is_leaf()) return t;
    if (per_level.size() != t.depth()) throw ShapeError("map_weights needs one homomorphism per level");
    const auto& h = per_level.front();
    if (!(h.source() == t.monoid())) {
        throw ShapeError("homomorphism source " + h.source().to_string() + " differs from term monoid " +
                         t.monoid().to_string());
    }
    std::vector<WeightTerm::Entry> mapped;
    mapped.reserve(t.entries().size());
    for (const auto& [key, w] : t.entries()) mapped.emplace_back(map_weights(key, per_level.subspan(1)), h.apply(w));
    return WeightTerm::node(h.target(), t.depth(), std::move(mapped));
}

}  // namespace futs
