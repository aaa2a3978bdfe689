#ifndef PSM1D_SWEEP_HPP
#define PSM1D_SWEEP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "psm1d/analysis.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/spectrum.hpp"

namespace psm1d {

struct sweep_row {
    int n_subdomains = 0;
    long iterations = 0;   // iterations to reach tol from the all-ones start
    long onset = 0;        // ceil(N/2), where contraction provably begins
    double rho = 0.0;      // spectral radius (eigenvalues or norm-root estimate)
    double bound = 0.0;    // closed-form radius estimate
    bool rho_via_eigenvalues = true;
    bool rho_converged = true;
};

struct sweep_result {
    std::string ell, delta, tol;  // canonical scalar text, echoed into reports
    std::vector<sweep_row> rows;
    double slope = 0.0;      // least-squares slope of iterations against N
    double intercept = 0.0;
};

struct sweep_options {
    long max_iterations = default_iteration_cap;
    std::size_t eig_cap = default_eig_cap;
    unsigned jobs = 0;  // 0: one task per hardware thread
};

/// One row per subdomain count: iterations to tolerance from the all-ones
/// initialization, the predicted onset, and the spectral data. Rows are
/// independent and run concurrently. Fails (propagating the row's error) if
/// any geometry is invalid or an iteration hits the cap.
template <class R>
sweep_result run_sweep(const std::vector<int>& n_values, const R& ell, const R& delta,
                       const R& tol, const sweep_options& options = {});

/// Ordinary least squares y = slope * x + intercept.
void fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
              double& intercept);

} // namespace psm1d

#include "psm1d/detail/sweep_impl.hpp"

#endif
