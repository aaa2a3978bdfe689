#ifndef PSM1D_ITERATION_MATRIX_HPP
#define PSM1D_ITERATION_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "psm1d/errors.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/interface_vector.hpp"
#include "psm1d/numerics.hpp"

namespace psm1d {

inline constexpr std::size_t default_dense_cap = 20000; // cap on 2N for materialization

/// 2x2 block acting on a neighbour's interface values.
template <class R>
struct block_matrix {
    // [[a, b], [c, d]]
    R a{}, b{}, c{}, d{};

    block_values<R> operator*(const block_values<R>& v) const {
        return {a * v.left + b * v.right, c * v.left + d * v.right};
    }

    friend bool operator==(const block_matrix&, const block_matrix&) = default;
};

template <class R>
block_values<R> operator+(const block_values<R>& x, const block_values<R>& y) {
    return {x.left + y.left, x.right + y.right};
}

/// The four 2x2 generators of the block-tridiagonal iteration matrix, all
/// determined by the overlap ratio r = delta/ell.
///
/// An interior subdomain's new interface values combine the previous trace
/// of its left neighbour (weight matrix `from_left`) and of its right
/// neighbour (`from_right`). The first and last subdomains carry a
/// homogeneous boundary condition at the outer end; pinning that end to
/// zero removes one column, giving the `*_pinned` variants (their zero rows
/// encode the boundary condition itself).
template <class R>
struct generator_blocks {
    R ratio{};                          // r = delta/ell
    block_matrix<R> from_left;          // interior row, left neighbour
    block_matrix<R> from_right;         // interior row, right neighbour
    block_matrix<R> from_right_pinned;  // first subdomain (left end fixed at zero)
    block_matrix<R> from_left_pinned;   // last subdomain (right end fixed at zero)
};

/// Formula-level constructor; accepts any ratio so limiting cases can be
/// evaluated even where no valid decomposition exists.
template <class R>
generator_blocks<R> generator_blocks_for_ratio(const R& r) {
    generator_blocks<R> g;
    const R one(1);
    g.ratio = r;
    g.from_left = {R(0), one - r, R(0), r};
    g.from_right = {r, R(0), one - r, R(0)};
    g.from_right_pinned = {R(0), R(0), one - r, R(0)};
    g.from_left_pinned = {R(0), one - r, R(0), R(0)};
    return g;
}

template <class R>
generator_blocks<R> build_blocks(const decomposition<R>& dec) {
    return generator_blocks_for_ratio(dec.overlap_ratio());
}

/// Row sums of from_left + from_right are exactly one: an interior value is
/// a convex combination of the neighbour traces.
template <class R>
bool unit_partition_ok(const generator_blocks<R>& g) {
    const block_values<R> ones{R(1), R(1)};
    const block_values<R> sum = g.from_left * ones + g.from_right * ones;
    return sum.left == R(1) && sum.right == R(1);
}

/// One matrix-free application of the iteration operator via the block
/// recurrence. O(N), the production path.
template <class R>
interface_vector<R> apply_operator(const generator_blocks<R>& g, const interface_vector<R>& v) {
    const int n = v.block_count();
    if (n < 2)
        throw dimension_error("apply_operator: interface vector needs at least two blocks");
    std::vector<block_values<R>> out(static_cast<std::size_t>(n));
    out[0] = g.from_right_pinned * v[1];
    for (int j = 1; j + 1 < n; ++j)
        out[static_cast<std::size_t>(j)] = g.from_left * v[j - 1] + g.from_right * v[j + 1];
    out[static_cast<std::size_t>(n - 1)] = g.from_left_pinned * v[n - 2];
    return interface_vector<R>(std::move(out));
}

template <class R>
interface_vector<R> apply_operator(const decomposition<R>& dec, const interface_vector<R>& v) {
    if (v.block_count() != dec.n_subdomains)
        throw dimension_error("apply_operator: vector has " + std::to_string(v.block_count()) +
                              " blocks but the decomposition has " + std::to_string(dec.n_subdomains));
    return apply_operator(build_blocks(dec), v);
}

/// n repeated matrix-free applications; n = 0 returns v unchanged.
template <class R>
interface_vector<R> power_apply(const generator_blocks<R>& g, interface_vector<R> v, long n) {
    if (n < 0)
        throw std::invalid_argument("power_apply: exponent must be nonnegative");
    for (long i = 0; i < n; ++i) v = apply_operator(g, v);
    return v;
}

template <class R>
interface_vector<R> power_apply(const decomposition<R>& dec, const interface_vector<R>& v, long n) {
    if (v.block_count() != dec.n_subdomains)
        throw dimension_error("power_apply: block count mismatch");
    return power_apply(build_blocks(dec), v, n);
}

/// Row-major dense matrix. Only used for cross-validation, eigenvalues and
/// export; the matrix-free path is the production one.
template <class R>
class dense_matrix {
public:
    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, R(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<R>& data() const { return data_; }

    static dense_matrix identity(std::size_t n) {
        dense_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    R row_sum(std::size_t i) const {
        R s(0);
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }

    R max_abs_row_sum() const {
        R best(0);
        for (std::size_t i = 0; i < rows_; ++i) {
            R s(0);
            for (std::size_t j = 0; j < cols_; ++j) {
                const R& x = (*this)(i, j);
                s += x < R(0) ? R(-x) : x;
            }
            if (s > best) best = s;
        }
        return best;
    }

    std::vector<R> operator*(const std::vector<R>& v) const {
        if (v.size() != cols_)
            throw dimension_error("dense_matrix: vector length mismatch");
        std::vector<R> out(rows_, R(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            R s(0);
            for (std::size_t j = 0; j < cols_; ++j)
                if (!((*this)(i, j) == R(0))) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    dense_matrix operator*(const dense_matrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw dimension_error("dense_matrix: inner dimension mismatch");
        dense_matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const R& lik = (*this)(i, k);
                if (lik == R(0)) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) {
                    const R& rkj = rhs(k, j);
                    if (!(rkj == R(0))) out(i, j) += lik * rkj;
                }
            }
        return out;
    }

    friend bool operator==(const dense_matrix&, const dense_matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> data_;
};

/// Materializes the 2N x 2N iteration matrix: block row 1 holds the pinned
/// right-neighbour block at block column 2, interior block row j holds
/// from_left at column j-1 and from_right at column j+1, block row N holds
/// the pinned left-neighbour block at column N-1.
template <class R>
dense_matrix<R> assemble_dense(const decomposition<R>& dec, std::size_t size_cap = default_dense_cap) {
    const std::size_t size = 2 * static_cast<std::size_t>(dec.n_subdomains);
    if (size > size_cap)
        throw size_cap_error("assemble_dense: 2N = " + std::to_string(size) +
                             " exceeds the size cap " + std::to_string(size_cap));
    const generator_blocks<R> g = build_blocks(dec);
    dense_matrix<R> m(size, size);
    auto put = [&](int bi, int bj, const block_matrix<R>& blk) {
        const std::size_t i = 2 * static_cast<std::size_t>(bi);
        const std::size_t j = 2 * static_cast<std::size_t>(bj);
        m(i, j) = blk.a;
        m(i, j + 1) = blk.b;
        m(i + 1, j) = blk.c;
        m(i + 1, j + 1) = blk.d;
    };
    const int n = dec.n_subdomains;
    put(0, 1, g.from_right_pinned);
    for (int j = 1; j + 1 < n; ++j) {
        put(j, j - 1, g.from_left);
        put(j, j + 1, g.from_right);
    }
    put(n - 1, n - 2, g.from_left_pinned);
    return m;
}

/// Result of checking the three algebraic relations between the interior
/// generator blocks on ordered values 0 <= a < b <= c < d < 1:
///   - strict bounds: b*1 < from_left*(a,b) + from_right*(1,1) < 1,
///   - betweenness:   b*1 <= from_left*(a,b) + from_right*(c,d) <= c*1,
///     with equality exactly when b == c,
///   - conservation and mirror: unit row sums of from_left + from_right, and
///     the swap-conjugation from_left*(a,b) + from_right*(c,d)
///       == swapped(from_left*(d,c) + from_right*(b,a)).
struct block_relation_report {
    bool strict_bounds_ok = false;
    bool betweenness_ok = false;
    bool conservation_and_mirror_ok = false;

    bool all() const { return strict_bounds_ok && betweenness_ok && conservation_and_mirror_ok; }
};

template <class R>
block_relation_report check_block_relations(const R& a, const R& b, const R& c, const R& d,
                                            const generator_blocks<R>& g) {
    if (!(R(0) <= a && a < b && b <= c && c < d && d < R(1)))
        throw std::invalid_argument("check_block_relations: need 0 <= a < b <= c < d < 1");

    block_relation_report rep;
    const block_values<R> ones{R(1), R(1)};
    const block_values<R> ab{a, b};
    const block_values<R> cd{c, d};

    const block_values<R> edge = g.from_left * ab + g.from_right * ones;
    rep.strict_bounds_ok = b < edge.left && b < edge.right && edge.left < R(1) && edge.right < R(1);

    const block_values<R> mid = g.from_left * ab + g.from_right * cd;
    if (b == c) {
        rep.betweenness_ok = mid.left == b && mid.right == b;
    } else {
        rep.betweenness_ok = b < mid.left && b < mid.right && mid.left < c && mid.right < c;
    }

    const block_values<R> mirrored_mid = g.from_left * block_values<R>{d, c} + g.from_right * block_values<R>{b, a};
    rep.conservation_and_mirror_ok = unit_partition_ok(g) && mid == swapped(mirrored_mid);
    return rep;
}

} // namespace psm1d

#endif
