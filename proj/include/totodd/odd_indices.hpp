#pragma once

#include <totodd/numbers.hpp>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace totodd {

/// Index tuple (n_1, ..., n_r) with every part odd and >= 3. These tuples
/// index every matrix, vector and polynomial space in the library.
using OddComposition = std::vector<int>;

inline bool all_parts_odd_ge3(const OddComposition& c) {
    for (int p : c) {
        if (p < 3 || p % 2 == 0) return false;
    }
    return true;
}

inline int composition_weight(const OddComposition& c) {
    return std::accumulate(c.begin(), c.end(), 0);
}

/// Number of totally odd compositions of `weight` into `depth` parts.
/// Stars and bars on (weight - 3*depth)/2 surplus units.
inline std::int64_t count_totally_odd(int weight, int depth) {
    if (depth < 1) throw std::invalid_argument("count_totally_odd: depth must be >= 1");
    if (weight < 3 * depth || (weight - depth) % 2 != 0) return 0;
    const Int n = binomial((weight - 3 * depth) / 2 + depth - 1, depth - 1);
    return static_cast<std::int64_t>(n);
}

/// The set of totally odd compositions of a fixed weight and depth, arranged
/// in lexicographically decreasing order. Positions are zero-based; the
/// ordering is canonical for every matrix built on top of it (the block
/// structure of the sliced matrices depends on it).
class IndexTable {
public:
    IndexTable() = default;

    IndexTable(int weight, int depth) : weight_(weight), depth_(depth) {
        if (depth < 1) throw std::invalid_argument("IndexTable: depth must be >= 1");
        OddComposition prefix;
        prefix.reserve(depth);
        enumerate(weight, depth, prefix);
        for (std::size_t i = 0; i < entries_.size(); ++i) position_[entries_[i]] = i;
    }

    int weight() const { return weight_; }
    int depth() const { return depth_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const OddComposition& operator[](std::size_t i) const { return entries_.at(i); }
    const std::vector<OddComposition>& entries() const { return entries_; }

    bool contains(const OddComposition& c) const { return position_.find(c) != position_.end(); }

    std::size_t position_of(const OddComposition& c) const {
        const auto it = position_.find(c);
        if (it == position_.end())
            throw std::out_of_range("IndexTable::position_of: composition is not a member");
        return it->second;
    }

    nlohmann::json to_json() const {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& c : entries_) entries.push_back(c);
        return {{"N", weight_}, {"r", depth_}, {"entries", entries}};
    }

    static IndexTable from_json(const nlohmann::json& j) {
        IndexTable t(j.at("N").get<int>(), j.at("r").get<int>());
        const auto& entries = j.at("entries");
        if (entries.size() != t.size())
            throw std::invalid_argument("IndexTable::from_json: entry count mismatch");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (entries[i].get<OddComposition>() != t[i])
                throw std::invalid_argument("IndexTable::from_json: entry order mismatch");
        }
        return t;
    }

private:
    void enumerate(int remaining, int slots, OddComposition& prefix) {
        if (slots == 1) {
            if (remaining >= 3 && remaining % 2 == 1) {
                prefix.push_back(remaining);
                entries_.push_back(prefix);
                prefix.pop_back();
            }
            return;
        }
        int hi = remaining - 3 * (slots - 1);
        if (hi % 2 == 0) --hi;  // largest admissible odd first part
        for (int p = hi; p >= 3; p -= 2) {
            prefix.push_back(p);
            enumerate(remaining - p, slots - 1, prefix);
            prefix.pop_back();
        }
    }

    int weight_ = 0;
    int depth_ = 1;
    std::vector<OddComposition> entries_;
    std::map<OddComposition, std::size_t, std::greater<OddComposition>> position_;
};

inline IndexTable enumerate_totally_odd(int weight, int depth) { return IndexTable(weight, depth); }

}  // namespace totodd
