#ifndef PSM1D_GEOMETRY_HPP
#define PSM1D_GEOMETRY_HPP

#include <string>
#include <vector>

#include "psm1d/errors.hpp"
#include "psm1d/numerics.hpp"

namespace psm1d {

/// Overlapping decomposition of the interval (0, L) into N equal subdomains
/// (a_j, b_j) of length ell, each sharing an overlap of width delta with its
/// immediate neighbours only:
///
///     a_j = (j-1)(ell - delta),   b_j = a_j + ell,   L = N*ell - (N-1)*delta.
///
/// Endpoints are always produced by these closed formulas, never by running
/// sums, so both backends reproduce them deterministically.
template <class R>
struct decomposition {
    int n_subdomains = 0;   // N >= 2
    R ell{};                // subdomain length, > 0
    R delta{};              // overlap width, 0 < delta < ell, ell >= 2*delta
    R length{};             // L = N*ell - (N-1)*delta
    std::vector<R> a;       // left endpoints, size N
    std::vector<R> b;       // right endpoints, size N

    R overlap_ratio() const { return delta / ell; }
};

/// Validates the constraints and fills in endpoints and total length.
/// Throws invalid_geometry_error naming the violated constraint.
template <class R>
decomposition<R> build_decomposition(int n_subdomains, const R& ell, const R& delta) {
    if (n_subdomains < 2)
        throw invalid_geometry_error("invalid geometry: N < 2 (need at least two subdomains, got N = " +
                                     std::to_string(n_subdomains) + ")");
    if (!(delta > R(0)))
        throw invalid_geometry_error("invalid geometry: delta <= 0 (overlap must be positive)");
    if (!(delta < ell))
        throw invalid_geometry_error("invalid geometry: delta >= ell (overlap must be smaller than the subdomain length)");
    if (ell < R(2) * delta)
        throw invalid_geometry_error("invalid geometry: ell < 2*delta (subdomains would overlap beyond immediate neighbours)");

    decomposition<R> dec;
    dec.n_subdomains = n_subdomains;
    dec.ell = ell;
    dec.delta = delta;
    dec.length = R(n_subdomains) * ell - R(n_subdomains - 1) * delta;
    dec.a.reserve(n_subdomains);
    dec.b.reserve(n_subdomains);
    const R step = ell - delta;
    for (int j = 0; j < n_subdomains; ++j) {
        dec.a.push_back(R(j) * step);
        dec.b.push_back(R(j) * step + ell);
    }
    return dec;
}

/// The x-coordinates carried by the 2N interface-vector components, in
/// block order: block 1 holds (a_1, a_2), interior block j holds
/// (b_{j-1}, a_{j+1}), and block N holds (b_{N-1}, b_N).
template <class R>
std::vector<R> interface_points(const decomposition<R>& dec) {
    const int n = dec.n_subdomains;
    std::vector<R> pts;
    pts.reserve(2 * static_cast<std::size_t>(n));
    pts.push_back(dec.a[0]);
    pts.push_back(dec.a[1]);
    for (int j = 1; j + 1 < n; ++j) {
        pts.push_back(dec.b[j - 1]);
        pts.push_back(dec.a[j + 1]);
    }
    pts.push_back(dec.b[n - 2]);
    pts.push_back(dec.b[n - 1]);
    return pts;
}

template <class R>
decomposition<double> to_float(const decomposition<R>& dec) {
    decomposition<double> out;
    out.n_subdomains = dec.n_subdomains;
    out.ell = scalar_traits<R>::to_double(dec.ell);
    out.delta = scalar_traits<R>::to_double(dec.delta);
    out.length = scalar_traits<R>::to_double(dec.length);
    out.a.reserve(dec.a.size());
    out.b.reserve(dec.b.size());
    for (const R& x : dec.a) out.a.push_back(scalar_traits<R>::to_double(x));
    for (const R& x : dec.b) out.b.push_back(scalar_traits<R>::to_double(x));
    return out;
}

} // namespace psm1d

#endif
