#include "bergman/partition.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bergman {

BlockPartition::BlockPartition(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("BlockPartition: no blocks");
    for (int k : blocks_) {
        if (k < 1) throw std::invalid_argument("BlockPartition: block sizes must be >= 1");
        begin_.push_back(n_);
        for (int j = 0; j < k; ++j) owner_.push_back(static_cast<int>(begin_.size()) - 1);
        n_ += k;
    }
}

bool BlockPartition::refines(const BlockPartition& coarser) const {
    if (coarser.n_ != n_) return false;
    for (int b = 0; b < block_count(); ++b) {
        const int first = block_begin(b), last = first + block_size(b) - 1;
        if (coarser.block_of(first) != coarser.block_of(last)) return false;
    }
    return true;
}

BlockPartition meet(const BlockPartition& a, const BlockPartition& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("meet: partitions of different n");
    std::set<int> cuts;
    for (int i = 0; i < a.block_count(); ++i) cuts.insert(a.block_begin(i));
    for (int i = 0; i < b.block_count(); ++i) cuts.insert(b.block_begin(i));
    cuts.insert(a.n_);
    std::vector<int> blocks;
    int prev = 0;
    for (int c : cuts) {
        if (c == 0) continue;
        blocks.push_back(c - prev);
        prev = c;
    }
    return BlockPartition(std::move(blocks));
}

std::string BlockPartition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t b = 0; b < blocks_.size(); ++b) os << (b ? "," : "") << blocks_[b];
    os << ')';
    return os.str();
}

std::vector<BlockPartition> all_block_partitions(int n) {
    if (n < 1) throw std::invalid_argument("all_block_partitions: n must be >= 1");
    std::vector<BlockPartition> out;
    // bit j of mask set <=> a block boundary after coordinate j
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> blocks;
        int size = 1;
        for (int j = 0; j < n - 1; ++j) {
            if (mask & (1u << j)) {
                blocks.push_back(size);
                size = 1;
            } else {
                ++size;
            }
        }
        blocks.push_back(size);
        out.emplace_back(std::move(blocks));
    }
    return out;
}

} // namespace bergman
