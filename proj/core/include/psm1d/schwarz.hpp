#ifndef PSM1D_SCHWARZ_HPP
#define PSM1D_SCHWARZ_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "psm1d/errors.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/interface_vector.hpp"

namespace psm1d {

/// A subdomain solve of the error equation is the affine function through
/// its two boundary values, so the endpoint pair determines the solution on
/// the whole subdomain exactly.
template <class R>
struct subdomain_solution {
    int j = 0;        // 1-based subdomain index
    R left_value{};   // value at a_j
    R right_value{};  // value at b_j

    friend bool operator==(const subdomain_solution&, const subdomain_solution&) = default;
};

template <class R>
using psm_state = std::vector<subdomain_solution<R>>;

/// Affine interpolation between (a_j, left_value) and (b_j, right_value).
/// Throws std::domain_error if x lies outside [a_j, b_j].
template <class R>
R evaluate(const subdomain_solution<R>& sol, const decomposition<R>& dec, const R& x) {
    const R& lo = dec.a[static_cast<std::size_t>(sol.j - 1)];
    const R& hi = dec.b[static_cast<std::size_t>(sol.j - 1)];
    if (x < lo || x > hi)
        throw std::domain_error("evaluate: x outside subdomain " + std::to_string(sol.j));
    return sol.left_value + (x - lo) * (sol.right_value - sol.left_value) / (hi - lo);
}

template <class R>
psm_state<R> constant_state(const decomposition<R>& dec, const R& value) {
    psm_state<R> state;
    state.reserve(static_cast<std::size_t>(dec.n_subdomains));
    for (int j = 1; j <= dec.n_subdomains; ++j)
        state.push_back({j, value, value});
    return state;
}

template <class R>
psm_state<R> ones_state(const decomposition<R>& dec) {
    return constant_state(dec, R(1));
}

template <class R>
psm_state<R> zero_state(const decomposition<R>& dec) {
    return constant_state(dec, R(0));
}

namespace detail {

/// Seeded dyadic values in [-1, 1]: k / 2^20 with k drawn uniformly. Dyadics
/// convert to binary64 without rounding, so the exact and float backends see
/// identical random initializations for the same seed.
class dyadic_sampler {
public:
    explicit dyadic_sampler(std::uint64_t seed) : rng_(seed) {}

    long draw_numerator() {
        return static_cast<long>(rng_() % (2 * scale + 1)) - static_cast<long>(scale);
    }

    template <class R>
    R next() {
        return R(draw_numerator()) / R(static_cast<long>(scale));
    }

    static constexpr std::uint64_t scale = 1 << 20;

private:
    std::mt19937_64 rng_;
};

} // namespace detail

/// Per-subdomain endpoint values drawn from the seeded dyadic sampler.
template <class R>
psm_state<R> random_state(const decomposition<R>& dec, std::uint64_t seed) {
    detail::dyadic_sampler sampler(seed);
    psm_state<R> state;
    state.reserve(static_cast<std::size_t>(dec.n_subdomains));
    for (int j = 1; j <= dec.n_subdomains; ++j) {
        R left = sampler.next<R>();
        R right = sampler.next<R>();
        state.push_back({j, std::move(left), std::move(right)});
    }
    return state;
}

/// One parallel (Jacobi) sweep: every subdomain is re-solved with boundary
/// data read from the previous iteration's neighbour solutions, all
/// simultaneously. The outer ends of the first and last subdomains stay
/// pinned at zero.
template <class R>
psm_state<R> psm_step(const decomposition<R>& dec, const psm_state<R>& current) {
    const int n = dec.n_subdomains;
    if (static_cast<int>(current.size()) != n)
        throw dimension_error("psm_step: state has " + std::to_string(current.size()) +
                              " subdomains, decomposition has " + std::to_string(n));
    psm_state<R> next;
    next.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        R left = (j == 1) ? R(0)
                          : evaluate(current[static_cast<std::size_t>(j - 2)], dec,
                                     dec.a[static_cast<std::size_t>(j - 1)]);
        R right = (j == n) ? R(0)
                           : evaluate(current[static_cast<std::size_t>(j)], dec,
                                      dec.b[static_cast<std::size_t>(j - 1)]);
        next.push_back({j, std::move(left), std::move(right)});
    }
    return next;
}

/// Reads the interface vector off a state: block 1 = (e_1(a_1), e_1(a_2)),
/// interior block j = (e_j(b_{j-1}), e_j(a_{j+1})), block N =
/// (e_N(b_{N-1}), e_N(b_N)).
template <class R>
interface_vector<R> to_interface_vector(const decomposition<R>& dec, const psm_state<R>& state) {
    const int n = dec.n_subdomains;
    if (static_cast<int>(state.size()) != n)
        throw dimension_error("to_interface_vector: state size mismatch");
    std::vector<block_values<R>> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    blocks.push_back({state[0].left_value,
                      evaluate(state[0], dec, dec.a[1])});
    for (int j = 2; j < n; ++j) {
        const auto& sol = state[static_cast<std::size_t>(j - 1)];
        blocks.push_back({evaluate(sol, dec, dec.b[static_cast<std::size_t>(j - 2)]),
                          evaluate(sol, dec, dec.a[static_cast<std::size_t>(j)])});
    }
    const auto& last = state[static_cast<std::size_t>(n - 1)];
    blocks.push_back({evaluate(last, dec, dec.b[static_cast<std::size_t>(n - 2)]),
                      last.right_value});
    return interface_vector<R>(std::move(blocks));
}

/// Trace of a PSM run: the state after every sweep, iteration 0 being the
/// initialization.
template <class R>
struct psm_trace {
    decomposition<R> dec;
    std::string init_label;
    std::vector<psm_state<R>> iterations;
};

template <class R>
psm_trace<R> run_psm(const decomposition<R>& dec, psm_state<R> init, long n_steps,
                     std::string init_label = "custom") {
    psm_trace<R> trace{dec, std::move(init_label), {}};
    trace.iterations.reserve(static_cast<std::size_t>(n_steps) + 1);
    trace.iterations.push_back(std::move(init));
    for (long i = 0; i < n_steps; ++i)
        trace.iterations.push_back(psm_step(dec, trace.iterations.back()));
    return trace;
}

// --- discretized oracle -----------------------------------------------------
//
// Independent check on the closed-form affine solve: each subdomain problem
// is solved on a uniform grid with the three-point second-difference stencil
// and a Thomas elimination, and neighbour traces are read off that grid by
// piecewise-linear interpolation. The discrete solution of the flat equation
// is itself exactly linear, so on the exact backend this route must agree
// bit for bit with the affine route.

template <class R>
std::vector<R> fd_solve_values(const decomposition<R>& dec, int j, const R& left_bc,
                               const R& right_bc, int interior_points,
                               const std::vector<R>& eval_points) {
    if (interior_points < 1)
        throw std::invalid_argument("fd_solve_values: need at least one interior point");
    const R lo = dec.a[static_cast<std::size_t>(j - 1)];
    const R hi = dec.b[static_cast<std::size_t>(j - 1)];
    const int m = interior_points;
    const R h = (hi - lo) / R(m + 1);

    // Tridiagonal system u_{i-1} - 2 u_i + u_{i+1} = 0; Thomas elimination.
    std::vector<R> diag(static_cast<std::size_t>(m), R(-2));
    std::vector<R> rhs(static_cast<std::size_t>(m), R(0));
    rhs[0] -= left_bc;
    rhs[static_cast<std::size_t>(m - 1)] -= right_bc;
    for (int i = 1; i < m; ++i) {
        const R w = R(1) / diag[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] -= w;
        rhs[static_cast<std::size_t>(i)] -= w * rhs[static_cast<std::size_t>(i - 1)];
    }
    std::vector<R> u(static_cast<std::size_t>(m + 2), R(0));
    u[0] = left_bc;
    u[static_cast<std::size_t>(m + 1)] = right_bc;
    u[static_cast<std::size_t>(m)] = rhs[static_cast<std::size_t>(m - 1)] / diag[static_cast<std::size_t>(m - 1)];
    for (int i = m - 1; i >= 1; --i)
        u[static_cast<std::size_t>(i)] = (rhs[static_cast<std::size_t>(i - 1)] - u[static_cast<std::size_t>(i + 1)]) /
                                         diag[static_cast<std::size_t>(i - 1)];

    std::vector<R> values;
    values.reserve(eval_points.size());
    for (const R& x : eval_points) {
        if (x < lo || x > hi)
            throw std::domain_error("fd_solve_values: evaluation point outside subdomain");
        // Locate the grid cell and interpolate linearly within it.
        R t = (x - lo) / h;
        long cell = 0;
        while (R(cell + 1) <= t && cell < m) ++cell;
        const R frac = t - R(cell);
        values.push_back(u[static_cast<std::size_t>(cell)] +
                         frac * (u[static_cast<std::size_t>(cell + 1)] - u[static_cast<std::size_t>(cell)]));
    }
    return values;
}

/// psm_step with every neighbour evaluation routed through the discretized
/// solver instead of the affine closed form.
template <class R>
psm_state<R> psm_step_fd(const decomposition<R>& dec, const psm_state<R>& current, int interior_points) {
    const int n = dec.n_subdomains;
    if (static_cast<int>(current.size()) != n)
        throw dimension_error("psm_step_fd: state size mismatch");
    auto eval_fd = [&](int j, const R& x) {
        const auto& sol = current[static_cast<std::size_t>(j - 1)];
        return fd_solve_values(dec, j, sol.left_value, sol.right_value, interior_points, {x})[0];
    };
    psm_state<R> next;
    next.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        R left = (j == 1) ? R(0) : eval_fd(j - 1, dec.a[static_cast<std::size_t>(j - 1)]);
        R right = (j == n) ? R(0) : eval_fd(j + 1, dec.b[static_cast<std::size_t>(j - 1)]);
        next.push_back({j, std::move(left), std::move(right)});
    }
    return next;
}

} // namespace psm1d

#endif
