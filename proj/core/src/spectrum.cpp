#include "psm1d/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace psm1d {

double max_eigenvalue_modulus(const dense_matrix<double>& m,
                              std::vector<std::complex<double>>* spectrum) {
    if (m.rows() != m.cols())
        throw dimension_error("max_eigenvalue_modulus: matrix must be square");
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("max_eigenvalue_modulus: eigensolver did not converge");

    double radius = 0.0;
    if (spectrum) spectrum->clear();
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        radius = std::max(radius, std::abs(ev));
        if (spectrum) spectrum->push_back(ev);
    }
    return radius;
}

namespace {

/// Norm-root estimate with per-step renormalization so long products cannot
/// underflow.
double gelfand_estimate(const decomposition<double>& dec, long steps) {
    const generator_blocks<double> g = build_blocks(dec);
    interface_vector<double> v = interface_vector<double>::ones(dec.n_subdomains);
    double log_norm = 0.0;
    for (long n = 0; n < steps; ++n) {
        v = apply_operator(g, v);
        const double norm = v.inf_norm();
        if (norm == 0.0) return 0.0;
        log_norm += std::log(norm);
        const int blocks = v.block_count();
        for (int j = 0; j < blocks; ++j) {
            v[j].left /= norm;
            v[j].right /= norm;
        }
    }
    return std::exp(log_norm / static_cast<double>(steps));
}

} // namespace

spectral_result spectral_radius(const decomposition<double>& dec, std::size_t eig_cap) {
    spectral_result result;
    const std::size_t size = 2 * static_cast<std::size_t>(dec.n_subdomains);
    if (size <= eig_cap) {
        const dense_matrix<double> t = assemble_dense(dec, eig_cap);
        result.radius = max_eigenvalue_modulus(t, &result.eigenvalues);
        result.via_eigenvalues = true;
        result.converged = true;
        return result;
    }
    const long steps = 64 * predicted_onset(dec.n_subdomains);
    const double full = gelfand_estimate(dec, steps);
    const double half = gelfand_estimate(dec, steps / 2);
    result.radius = full;
    result.via_eigenvalues = false;
    result.power_steps = steps;
    result.converged = std::abs(full - half) <= 1e-6 * std::max(1.0, std::abs(full));
    return result;
}

} // namespace psm1d
