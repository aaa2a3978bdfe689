#ifndef PSM1D_ANALYSIS_HPP
#define PSM1D_ANALYSIS_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "psm1d/errors.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/interface_vector.hpp"
#include "psm1d/iteration_matrix.hpp"
#include "psm1d/numerics.hpp"

namespace psm1d {

inline constexpr long default_iteration_cap = 1'000'000;

/// Smallest iteration count after which the ones-initialized norm drops
/// below one. Equals ceil(N/2) for every valid decomposition: the
/// contraction enters from the two boundary subdomains and moves inward one
/// block per sweep from each side.
inline long predicted_onset(int n_subdomains) {
    return (n_subdomains + 1) / 2;
}

template <class R>
struct norm_entry {
    long n = 0;
    R norm{};
    std::optional<R> ratio;  // norm(n) / norm(n-1), absent at n = 0 or after a zero norm
};

template <class R>
struct norm_sequence {
    int n_subdomains = 0;
    std::vector<norm_entry<R>> entries;
};

/// Norms of the iterates of the all-ones vector, computed by a single O(N)
/// vector recurrence per step. Because the operator is nonnegative, these
/// equal the operator norms of the matrix powers; the identity itself is
/// cross-checked by verify_ones_norm_identity.
template <class R>
norm_sequence<R> norm_via_ones(const decomposition<R>& dec, long n_max) {
    if (n_max < 0)
        throw std::invalid_argument("norm_via_ones: n_max must be nonnegative");
    const generator_blocks<R> g = build_blocks(dec);
    norm_sequence<R> seq;
    seq.n_subdomains = dec.n_subdomains;
    seq.entries.reserve(static_cast<std::size_t>(n_max) + 1);
    interface_vector<R> w = interface_vector<R>::ones(dec.n_subdomains);
    R prev = w.inf_norm();
    seq.entries.push_back({0, prev, std::nullopt});
    for (long n = 1; n <= n_max; ++n) {
        w = apply_operator(g, w);
        R norm = w.inf_norm();
        std::optional<R> ratio;
        if (!(prev == R(0))) ratio = norm / prev;
        seq.entries.push_back({n, norm, ratio});
        prev = norm;
    }
    return seq;
}

/// Outcome of a single verification check.
struct check_result {
    std::string name;
    std::string range_tested;
    bool pass = false;
    std::optional<std::string> first_violation;
    std::string backend;
    std::optional<std::string> note;
};

namespace detail {

template <class R>
bool norm_equal(const R& x, const R& y) {
    if constexpr (scalar_traits<R>::backend == backend_kind::exact)
        return x == y;
    else
        return approx_equal(x, y, default_float_tolerance);
}

} // namespace detail

/// Cross-checks the via-ones norm against the max-abs-row-sum of explicitly
/// computed dense powers, for every n <= n_max. Exact backend demands exact
/// equality. `inject_fault` negates one generator entry in the dense route
/// only, a self-test hook that must make the check fail.
template <class R>
check_result verify_ones_norm_identity(const decomposition<R>& dec, long n_max,
                                       std::size_t size_cap = default_dense_cap,
                                       bool inject_fault = false) {
    check_result res;
    res.name = "ones_norm_identity";
    res.range_tested = "n in [0, " + std::to_string(n_max) + "]";
    res.backend = scalar_traits<R>::name;
    res.pass = true;

    dense_matrix<R> t = assemble_dense(dec, size_cap);
    if (inject_fault) t(1, 2) = -t(1, 2);
    dense_matrix<R> power = dense_matrix<R>::identity(t.rows());

    const generator_blocks<R> g = build_blocks(dec);
    interface_vector<R> w = interface_vector<R>::ones(dec.n_subdomains);
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            power = power * t;
            w = apply_operator(g, w);
        }
        const R dense_norm = power.max_abs_row_sum();
        const R ones_norm = w.inf_norm();
        if (!detail::norm_equal<R>(dense_norm, ones_norm)) {
            res.pass = false;
            res.first_violation = "n=" + std::to_string(n) +
                                  ": dense=" + scalar_traits<R>::to_string(dense_norm) +
                                  ", via_ones=" + scalar_traits<R>::to_string(ones_norm);
            break;
        }
    }
    return res;
}

namespace detail {

template <class R>
bool below_one(const R& norm) {
    if constexpr (scalar_traits<R>::backend == backend_kind::exact)
        return norm < R(1);
    else
        return compare(norm, 1.0, default_float_tolerance) == ordering::less;
}

} // namespace detail

/// Measured contraction onset: the smallest n with ||T^n 1|| < 1. The exact
/// backend decides strictly and always returns predicted_onset(N); the float
/// backend can only report the first tolerance-visible drop, which lags the
/// true onset once (delta/L)^(N/2) falls below the tolerance.
template <class R>
long contraction_onset(const decomposition<R>& dec) {
    const generator_blocks<R> g = build_blocks(dec);
    interface_vector<R> w = interface_vector<R>::ones(dec.n_subdomains);
    const long cap = scalar_traits<R>::backend == backend_kind::exact
                         ? dec.n_subdomains + 2
                         : 64L * dec.n_subdomains + 4096;
    for (long n = 1; n <= cap; ++n) {
        w = apply_operator(g, w);
        if (detail::below_one<R>(w.inf_norm())) return n;
    }
    throw not_converged_error("contraction_onset: no norm drop within " + std::to_string(cap) + " iterations",
                              scalar_traits<R>::to_double(w.inf_norm()), cap);
}

template <class R>
check_result verify_contraction_onset(const decomposition<R>& dec) {
    check_result res;
    res.name = "contraction_onset";
    res.range_tested = "single value";
    res.backend = scalar_traits<R>::name;
    const long expected = predicted_onset(dec.n_subdomains);
    const long got = contraction_onset(dec);
    res.pass = (got == expected);
    if (!res.pass)
        res.first_violation = "onset=" + std::to_string(got) + ", expected " + std::to_string(expected);
    return res;
}

/// Strict norm decrease past the onset: every step for even N, every second
/// step for odd N. Strictness is only asserted on the exact backend; the
/// float instantiation reports the smallest observed decrease instead.
template <class R>
check_result verify_monotone_contraction(const decomposition<R>& dec, long n_max) {
    const long onset = predicted_onset(dec.n_subdomains);
    if (n_max < onset + 2)
        throw std::invalid_argument("verify_monotone_contraction: n_max must be at least onset + 2");

    check_result res;
    res.name = "monotone_contraction";
    res.backend = scalar_traits<R>::name;
    const bool even = dec.n_subdomains % 2 == 0;
    const long stride = even ? 1 : 2;
    res.range_tested = std::string(even ? "single-step" : "two-step") + ", n in [" +
                       std::to_string(onset) + ", " + std::to_string(n_max - stride) + "]";
    res.pass = true;

    const norm_sequence<R> seq = norm_via_ones(dec, n_max);
    if constexpr (scalar_traits<R>::backend == backend_kind::exact) {
        for (long n = onset; n + stride <= n_max; ++n) {
            const R& before = seq.entries[static_cast<std::size_t>(n)].norm;
            const R& after = seq.entries[static_cast<std::size_t>(n + stride)].norm;
            if (!(after < before)) {
                res.pass = false;
                res.first_violation = "n=" + std::to_string(n) +
                                      ": ||T^" + std::to_string(n + stride) + " 1|| = " +
                                      scalar_traits<R>::to_string(after) + " not < ||T^" +
                                      std::to_string(n) + " 1|| = " + scalar_traits<R>::to_string(before);
                break;
            }
        }
    } else {
        double min_slack = std::numeric_limits<double>::infinity();
        for (long n = onset; n + stride <= n_max; ++n) {
            const double before = seq.entries[static_cast<std::size_t>(n)].norm;
            const double after = seq.entries[static_cast<std::size_t>(n + stride)].norm;
            min_slack = std::min(min_slack, before - after);
        }
        res.pass = true;
        res.note = "float backend reports margins only: min decrease = " +
                   scalar_traits<double>::to_string(min_slack);
    }
    return res;
}

/// Per-iteration shape classification of w = T^n 1.
///
/// front_membership: for n <= ceil(N/2), the n outermost blocks on each side
/// lie strictly below one componentwise and every other block equals one
/// exactly (the contraction front has advanced exactly n blocks inward).
///
/// mirror_symmetry: w equals its left-right mirror (blocks reversed, slots
/// swapped), checked at every n.
///
/// slot_order / block_monotone: within the front, each block's outer slot
/// does not exceed its inner slot, and blocks increase strictly toward the
/// centre; mirrored on the right half. Checked for j up to
/// min(n, floor(N/2)-1).
///
/// odd_center: for odd N and n >= floor(N/2), the block left of centre never
/// exceeds the centre block, and the block right of centre lies strictly
/// below the centre on the two-step cadence n = floor(N/2), floor(N/2)+2, ...
/// (off-cadence iterations tie in one slot; they are recorded in
/// odd_center_strict and reported, not asserted).
struct shape_report {
    long n = 0;
    bool front_membership = true;
    bool mirror_symmetry = true;
    bool slot_order = true;
    bool block_monotone = true;
    bool odd_center = true;
    bool odd_center_strict = true;
    std::string violation;  // first failed comparison, empty if none

    bool all_asserted() const {
        return front_membership && mirror_symmetry && slot_order && block_monotone && odd_center;
    }
};

namespace detail {

template <class R>
bool strictly_below(const block_values<R>& x, const block_values<R>& y) {
    return x.left < y.left && x.right < y.right;
}

template <class R>
bool weakly_below(const block_values<R>& x, const block_values<R>& y) {
    return x.left <= y.left && x.right <= y.right;
}

template <class R>
shape_report classify_shape(const interface_vector<R>& w, long n, int n_subdomains) {
    const int N = n_subdomains;
    const long ceil_half = predicted_onset(N);
    const long floor_half = N / 2;
    const block_values<R> unit{R(1), R(1)};

    shape_report rep;
    rep.n = n;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (rep.violation.empty()) rep.violation = "n=" + std::to_string(n) + ": " + what;
    };

    if (n >= 1 && n <= ceil_half) {
        for (int j = 1; j <= N; ++j) {
            const bool outer = j <= n || j >= N + 1 - n;
            const block_values<R>& blk = w[j - 1];
            if (outer && !strictly_below(blk, unit))
                fail(rep.front_membership, "front block " + std::to_string(j) + " not strictly below one");
            if (!outer && !(blk == unit))
                fail(rep.front_membership, "interior block " + std::to_string(j) + " deviates from one");
        }
    }

    for (int j = 1; j <= N; ++j) {
        if (!(w[j - 1] == swapped(w[N - j]))) {
            fail(rep.mirror_symmetry, "block " + std::to_string(j) + " breaks mirror symmetry");
            break;
        }
    }

    const long j_max = std::min<long>(n, floor_half - 1);
    for (long j = 1; j <= j_max; ++j) {
        const block_values<R>& left_blk = w[static_cast<int>(j) - 1];
        const block_values<R>& mirror_blk = w[N - static_cast<int>(j)];
        if (!(left_blk.left <= left_blk.right))
            fail(rep.slot_order, "block " + std::to_string(j) + " slots out of order");
        if (!(mirror_blk.right <= mirror_blk.left))
            fail(rep.slot_order, "block " + std::to_string(N + 1 - j) + " slots out of order");
        if (!strictly_below(left_blk, w[static_cast<int>(j)]))
            fail(rep.block_monotone, "block " + std::to_string(j) + " not strictly below block " +
                                         std::to_string(j + 1));
        if (!strictly_below(mirror_blk, w[N - static_cast<int>(j) - 1]))
            fail(rep.block_monotone, "block " + std::to_string(N + 1 - j) + " not strictly below block " +
                                         std::to_string(N - j));
    }

    if (N % 2 == 1 && n >= floor_half) {
        const block_values<R>& before_centre = w[static_cast<int>(floor_half) - 1];
        const block_values<R>& centre = w[static_cast<int>(ceil_half) - 1];
        const block_values<R>& after_centre = w[static_cast<int>(floor_half) + 1];
        if (!weakly_below(before_centre, centre))
            fail(rep.odd_center, "block left of centre exceeds centre");
        rep.odd_center_strict = strictly_below(after_centre, centre);
        const bool on_cadence = (n - floor_half) % 2 == 0;
        if (on_cadence && !rep.odd_center_strict)
            fail(rep.odd_center, "block right of centre not strictly below centre on cadence step");
    }
    return rep;
}

} // namespace detail

/// Shape classification of T^n 1 for one n (computes the iterate afresh).
template <class R>
shape_report verify_shape(const decomposition<R>& dec, long n) {
    if (n < 1)
        throw std::invalid_argument("verify_shape: n must be positive");
    const interface_vector<R> w =
        power_apply(dec, interface_vector<R>::ones(dec.n_subdomains), n);
    return detail::classify_shape(w, n, dec.n_subdomains);
}

/// Shape classification for every n in [1, n_max], sharing one iteration.
template <class R>
std::vector<shape_report> shape_reports(const decomposition<R>& dec, long n_max) {
    const generator_blocks<R> g = build_blocks(dec);
    interface_vector<R> w = interface_vector<R>::ones(dec.n_subdomains);
    std::vector<shape_report> reports;
    reports.reserve(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        w = apply_operator(g, w);
        reports.push_back(detail::classify_shape(w, n, dec.n_subdomains));
    }
    return reports;
}

/// Smallest n with ||T^n v|| < tol, starting from `init`.
/// Throws not_converged_error carrying the last norm if `cap` is reached.
template <class R>
long iterations_to_tolerance(const decomposition<R>& dec, const R& tol, interface_vector<R> v,
                             long cap = default_iteration_cap) {
    if (!(tol > R(0) && tol < R(1)))
        throw std::invalid_argument("iterations_to_tolerance: tol must lie in (0, 1)");
    if (v.block_count() != dec.n_subdomains)
        throw dimension_error("iterations_to_tolerance: block count mismatch");
    const generator_blocks<R> g = build_blocks(dec);
    R norm = v.inf_norm();
    if (norm < tol) return 0;
    for (long n = 1; n <= cap; ++n) {
        v = apply_operator(g, v);
        norm = v.inf_norm();
        if (norm < tol) return n;
    }
    throw not_converged_error("iterations_to_tolerance: cap of " + std::to_string(cap) +
                                  " iterations reached",
                              scalar_traits<R>::to_double(norm), cap);
}

} // namespace psm1d

#endif
