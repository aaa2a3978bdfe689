#ifndef PSM1D_INTERFACE_VECTOR_HPP
#define PSM1D_INTERFACE_VECTOR_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "psm1d/errors.hpp"
#include "psm1d/numerics.hpp"

namespace psm1d {

/// One block of the interface vector: the values a subdomain's solution
/// takes at its two interface evaluation points, left one first.
template <class R>
struct block_values {
    R left{};
    R right{};

    friend bool operator==(const block_values&, const block_values&) = default;
};

/// Swap the two slots of a block (the 2x2 permutation that encodes the
/// left-right mirror symmetry of the decomposition).
template <class R>
block_values<R> swapped(const block_values<R>& v) {
    return {v.right, v.left};
}

/// Element of R^{2N} viewed as N blocks of two interface values each.
/// Flattening interleaves the blocks in their natural left-to-right order.
template <class R>
class interface_vector {
public:
    interface_vector() = default;

    explicit interface_vector(std::vector<block_values<R>> blocks) : blocks_(std::move(blocks)) {}

    static interface_vector constant(int n_subdomains, const R& value) {
        return interface_vector(std::vector<block_values<R>>(
            static_cast<std::size_t>(n_subdomains), block_values<R>{value, value}));
    }

    static interface_vector ones(int n_subdomains) { return constant(n_subdomains, R(1)); }
    static interface_vector zero(int n_subdomains) { return constant(n_subdomains, R(0)); }

    int block_count() const { return static_cast<int>(blocks_.size()); }

    block_values<R>& operator[](int j) { return blocks_[static_cast<std::size_t>(j)]; }
    const block_values<R>& operator[](int j) const { return blocks_[static_cast<std::size_t>(j)]; }

    const std::vector<block_values<R>>& blocks() const { return blocks_; }

    std::vector<R> flatten() const {
        std::vector<R> flat;
        flat.reserve(2 * blocks_.size());
        for (const auto& blk : blocks_) {
            flat.push_back(blk.left);
            flat.push_back(blk.right);
        }
        return flat;
    }

    static interface_vector from_flat(const std::vector<R>& flat) {
        if (flat.size() % 2 != 0)
            throw dimension_error("interface_vector: flat length must be even");
        std::vector<block_values<R>> blocks;
        blocks.reserve(flat.size() / 2);
        for (std::size_t i = 0; i < flat.size(); i += 2)
            blocks.push_back({flat[i], flat[i + 1]});
        return interface_vector(std::move(blocks));
    }

    R inf_norm() const {
        R best(0);
        for (const auto& blk : blocks_) {
            R l = blk.left < R(0) ? R(-blk.left) : blk.left;
            R r = blk.right < R(0) ? R(-blk.right) : blk.right;
            if (l > best) best = l;
            if (r > best) best = r;
        }
        return best;
    }

    /// The vector seen from the mirrored domain: block order reversed and
    /// each block's slots swapped. A left-right symmetric iterate equals its
    /// own mirror.
    interface_vector mirrored() const {
        std::vector<block_values<R>> out(blocks_.rbegin(), blocks_.rend());
        for (auto& blk : out) blk = swapped(blk);
        return interface_vector(std::move(out));
    }

    friend bool operator==(const interface_vector&, const interface_vector&) = default;

private:
    std::vector<block_values<R>> blocks_;
};

} // namespace psm1d

#endif
