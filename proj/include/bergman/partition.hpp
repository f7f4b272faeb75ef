#pragma once

#include <string>
#include <vector>

namespace bergman {

/// Block sizes (k_1, ..., k_s) of a block-diagonal subgroup U(k_1) x ... x U(k_s) of U(n).
/// All ones is the torus T^n; a single block is U(n).
class BlockPartition {
public:
    BlockPartition() = default;
    explicit BlockPartition(std::vector<int> blocks);

    static BlockPartition torus(int n) { return BlockPartition(std::vector<int>(static_cast<std::size_t>(n), 1)); }
    static BlockPartition full(int n) { return BlockPartition(std::vector<int>{n}); }

    int n() const { return n_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_size(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
    int block_begin(int b) const { return begin_[static_cast<std::size_t>(b)]; }
    int block_of(int coordinate) const { return owner_[static_cast<std::size_t>(coordinate)]; }
    const std::vector<int>& blocks() const { return blocks_; }

    bool is_torus() const { return block_count() == n_; }
    bool is_full() const { return block_count() == 1; }

    /// True when every block of *this lies inside a block of coarser, i.e. K_this is a subgroup of K_coarser.
    bool refines(const BlockPartition& coarser) const;

    /// Coarsest common refinement (the partition of K_a intersected with K_b).
    friend BlockPartition meet(const BlockPartition& a, const BlockPartition& b);

    std::string to_string() const;

    friend bool operator==(const BlockPartition& a, const BlockPartition& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<int> blocks_;
    std::vector<int> begin_;
    std::vector<int> owner_;
    int n_ = 0;
};

/// All ordered block partitions (compositions) of n.
std::vector<BlockPartition> all_block_partitions(int n);

} // namespace bergman
