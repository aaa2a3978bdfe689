#ifndef PSM1D_SPECTRUM_HPP
#define PSM1D_SPECTRUM_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "psm1d/analysis.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/iteration_matrix.hpp"

namespace psm1d {

inline constexpr std::size_t default_eig_cap = 2000; // cap on 2N for dense eigensolves

struct spectral_result {
    double radius = 0.0;
    bool via_eigenvalues = true;  // false: Gelfand-style power estimate
    long power_steps = 0;         // iterations used by the estimate path
    bool converged = true;        // estimate stability flag (true on the eigen path)
    std::vector<std::complex<double>> eigenvalues;  // empty on the estimate path
};

/// Largest eigenvalue modulus of a dense real matrix (nonsymmetric solver).
/// Optionally returns the full spectrum.
double max_eigenvalue_modulus(const dense_matrix<double>& m,
                              std::vector<std::complex<double>>* spectrum = nullptr);

/// Spectral radius of the iteration matrix. Below the cap this is a dense
/// eigenvalue computation; the operator is nonsymmetric with possibly
/// complex spectrum, so plain power iteration on a fixed vector is not
/// trusted there. Above the cap it falls back to the norm-root estimate
/// ||T^n 1||^(1/n) at n = 64 * ceil(N/2), with a convergence flag comparing
/// against the half-length estimate.
spectral_result spectral_radius(const decomposition<double>& dec,
                                std::size_t eig_cap = default_eig_cap);

template <class R>
spectral_result spectral_radius_of(const decomposition<R>& dec,
                                   std::size_t eig_cap = default_eig_cap) {
    return spectral_radius(to_float(dec), eig_cap);
}

/// The closed-form radius estimate [1 - x^k]^(1/k) with x = delta/L and
/// k = ceil(N/2). Conservative: it approaches one as the overlap shrinks
/// relative to the domain.
inline double spectral_bound_value(double delta_over_length, long k) {
    return std::pow(1.0 - std::pow(delta_over_length, static_cast<double>(k)),
                    1.0 / static_cast<double>(k));
}

inline double spectral_bound(const decomposition<double>& dec) {
    return spectral_bound_value(dec.delta / dec.length, predicted_onset(dec.n_subdomains));
}

template <class R>
double spectral_bound_of(const decomposition<R>& dec) {
    return spectral_bound(to_float(dec));
}

} // namespace psm1d

#endif
