#include "futs/partition.hpp"

#include <algorithm>

#include "futs/ident.hpp"
#include "futs/monoid.hpp"

namespace futs {

Partition Partition::from_blocks(std::vector<std::string> carrier, std::vector<std::vector<std::string>> blocks) {
    std::sort(carrier.begin(), carrier.end());
    if (std::adjacent_find(carrier.begin(), carrier.end()) != carrier.end()) {
        throw PreconditionError("partition carrier has duplicate elements");
    }
    Partition p;
    for (auto& b : blocks) {
        if (b.empty()) throw PreconditionError("partition has an empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (const auto& x : blocks[i]) {
            if (!std::binary_search(carrier.begin(), carrier.end(), x)) {
                throw PreconditionError("partition block member '" + x + "' is outside the carrier");
            }
            if (!p.index_.emplace(x, i).second) throw PreconditionError("partition blocks overlap on '" + x + "'");
        }
    }
    if (p.index_.size() != carrier.size()) throw PreconditionError("partition blocks do not cover the carrier");
    p.carrier_ = std::move(carrier);
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::from_labelling(std::vector<std::string> carrier, const std::vector<std::size_t>& labels) {
    if (labels.size() != carrier.size()) throw PreconditionError("labelling size differs from carrier size");
    std::map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < carrier.size(); ++i) groups[labels[i]].push_back(carrier[i]);
    std::vector<std::vector<std::string>> blocks;
    for (auto& [_, b] : groups) blocks.push_back(std::move(b));
    return from_blocks(std::move(carrier), std::move(blocks));
}

Partition Partition::identity(std::vector<std::string> carrier) {
    std::vector<std::vector<std::string>> blocks;
    for (const auto& x : carrier) blocks.push_back({x});
    return from_blocks(std::move(carrier), std::move(blocks));
}

Partition Partition::one_block(std::vector<std::string> carrier) {
    if (carrier.empty()) return from_blocks({}, {});
    auto block = carrier;
    return from_blocks(std::move(carrier), {std::move(block)});
}

std::size_t Partition::block_index(const std::string& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw PreconditionError("'" + x + "' is not in the partition carrier");
    return it->second;
}

const std::string& Partition::block_id(const std::string& x) const { return blocks_[block_index(x)].front(); }

bool Partition::related(const std::string& x, const std::string& y) const { return block_index(x) == block_index(y); }

Partition Partition::restrict_to(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> labels;
    labels.reserve(subset.size());
    for (const auto& x : subset) labels.push_back(block_index(x));
    return from_labelling(subset, labels);
}

std::string Partition::to_string() const {
    std::string s = "{ ";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += ", ";
        s += "{";
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) s += ", ";
            s += quote_id(blocks_[i][j]);
        }
        s += "}";
    }
    return s + (blocks_.empty() ? "}" : " }");
}

void for_each_partition(const std::vector<std::string>& carrier, const std::function<void(const Partition&)>& visit) {
    const std::size_t n = carrier.size();
    if (n == 0) {
        visit(Partition::from_blocks({}, {}));
        return;
    }
    // restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1])
    std::vector<std::size_t> rgs(n, 0), maxes(n, 0);
    while (true) {
        visit(Partition::from_labelling(carrier, rgs));
        std::size_t i = n - 1;
        while (i > 0 && rgs[i] == maxes[i - 1] + 1) --i;
        if (i == 0) return;
        ++rgs[i];
        maxes[i] = std::max(maxes[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

std::size_t bell_number(std::size_t n) {
    // Bell triangle
    std::vector<std::size_t> row{1};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

}  // namespace futs
