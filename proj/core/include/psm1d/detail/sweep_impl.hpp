#ifndef PSM1D_DETAIL_SWEEP_IMPL_HPP
#define PSM1D_DETAIL_SWEEP_IMPL_HPP

#include <algorithm>
#include <future>
#include <thread>

namespace psm1d {

template <class R>
sweep_result run_sweep(const std::vector<int>& n_values, const R& ell, const R& delta,
                       const R& tol, const sweep_options& options) {
    if (n_values.empty())
        throw std::invalid_argument("run_sweep: empty subdomain-count list");

    sweep_result result;
    result.ell = scalar_traits<R>::to_string(ell);
    result.delta = scalar_traits<R>::to_string(delta);
    result.tol = scalar_traits<R>::to_string(tol);

    auto compute_row = [&](int n) {
        const decomposition<R> dec = build_decomposition(n, ell, delta);
        sweep_row row;
        row.n_subdomains = n;
        row.onset = predicted_onset(n);
        row.iterations = iterations_to_tolerance(dec, tol, interface_vector<R>::ones(n),
                                                 options.max_iterations);
        const spectral_result spec = spectral_radius_of(dec, options.eig_cap);
        row.rho = spec.radius;
        row.bound = spectral_bound_of(dec);
        row.rho_via_eigenvalues = spec.via_eigenvalues;
        row.rho_converged = spec.converged;
        return row;
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned jobs = options.jobs == 0 ? hw : options.jobs;

    if (jobs <= 1 || n_values.size() == 1) {
        for (int n : n_values) result.rows.push_back(compute_row(n));
    } else {
        // Fan out in windows of `jobs` rows; results are collected in order.
        std::vector<std::future<sweep_row>> futures;
        for (std::size_t base = 0; base < n_values.size(); base += jobs) {
            const std::size_t end = std::min(n_values.size(), base + jobs);
            futures.clear();
            for (std::size_t i = base; i < end; ++i)
                futures.push_back(std::async(std::launch::async, compute_row, n_values[i]));
            for (auto& f : futures) result.rows.push_back(f.get());
        }
    }

    std::vector<double> xs, ys;
    xs.reserve(result.rows.size());
    ys.reserve(result.rows.size());
    for (const sweep_row& row : result.rows) {
        xs.push_back(static_cast<double>(row.n_subdomains));
        ys.push_back(static_cast<double>(row.iterations));
    }
    fit_line(xs, ys, result.slope, result.intercept);
    return result;
}

inline void fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                     double& intercept) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw std::invalid_argument("fit_line: empty or mismatched samples");
    if (n == 1) {
        slope = 0.0;
        intercept = y[0];
        return;
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_line: all abscissae coincide");
    slope = sxy / sxx;
    intercept = mean_y - slope * mean_x;
}

} // namespace psm1d

#endif
