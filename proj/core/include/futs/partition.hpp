#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace futs {

/// An equivalence relation on a finite carrier of state ids.
///
/// Carrier and blocks are sorted; the id of a block is its least member, so
/// two partitions with the same blocks are identical values.
class Partition {
public:
    Partition() = default;

    // Throws PreconditionError unless `blocks` covers `carrier` exactly with non-empty disjoint sets.
    static Partition from_blocks(std::vector<std::string> carrier, std::vector<std::vector<std::string>> blocks);
    // Blocks are the fibres of `labels` (labels[i] belongs to carrier[i]).
    static Partition from_labelling(std::vector<std::string> carrier, const std::vector<std::size_t>& labels);
    static Partition identity(std::vector<std::string> carrier);
    static Partition one_block(std::vector<std::string> carrier);

    [[nodiscard]] const std::vector<std::string>& carrier() const { return carrier_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
    [[nodiscard]] std::size_t size() const { return blocks_.size(); }

    [[nodiscard]] bool contains(const std::string& x) const { return index_.count(x) != 0; }
    // κ(x): the least member of x's block.
    [[nodiscard]] const std::string& block_id(const std::string& x) const;
    [[nodiscard]] std::size_t block_index(const std::string& x) const;
    [[nodiscard]] bool related(const std::string& x, const std::string& y) const;

    // The partition restricted to `subset` (which must lie inside the carrier).
    [[nodiscard]] Partition restrict_to(const std::vector<std::string>& subset) const;

    // `{ {s0, s2}, {s1} }`
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_ && a.carrier_ == b.carrier_; }

private:
    std::vector<std::string> carrier_;
    std::vector<std::vector<std::string>> blocks_;
    std::map<std::string, std::size_t> index_;  // element → block index
};

/// Calls `visit` once for every equivalence relation on `carrier`
/// (Bell(|carrier|) calls, restricted growth string order).
void for_each_partition(const std::vector<std::string>& carrier, const std::function<void(const Partition&)>& visit);

[[nodiscard]] std::size_t bell_number(std::size_t n);

}  // namespace futs
