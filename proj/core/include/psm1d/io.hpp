#ifndef PSM1D_IO_HPP
#define PSM1D_IO_HPP

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "psm1d/analysis.hpp"
#include "psm1d/geometry.hpp"
#include "psm1d/interface_vector.hpp"
#include "psm1d/iteration_matrix.hpp"
#include "psm1d/schwarz.hpp"
#include "psm1d/spectrum.hpp"
#include "psm1d/sweep.hpp"
#include "psm1d/verification.hpp"

namespace psm1d {

using ordered_json = nlohmann::ordered_json;

template <class R>
std::string format_scalar(const R& x) {
    return scalar_traits<R>::to_string(x);
}

// --- CSV ---------------------------------------------------------------

/// Row-major, one matrix row per line, no header. Exact entries print as
/// "p/q", float entries with 17 significant digits.
template <class R>
void write_matrix_csv(std::ostream& os, const dense_matrix<R>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_scalar(m(i, j));
        }
        os << '\n';
    }
}

/// Columns: flat component index, owning block, slot within the block, the
/// x-coordinate the component lives at, and the value.
template <class R>
void write_interface_vector_csv(std::ostream& os, const decomposition<R>& dec,
                                const interface_vector<R>& v) {
    os << "index,block,slot,x,value\n";
    const std::vector<R> xs = interface_points(dec);
    const std::vector<R> flat = v.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i)
        os << i << ',' << (i / 2 + 1) << ',' << (i % 2 + 1) << ',' << format_scalar(xs[i]) << ','
           << format_scalar(flat[i]) << '\n';
}

template <class R>
void write_norms_csv(std::ostream& os, const norm_sequence<R>& seq) {
    os << "n,norm,ratio\n";
    for (const norm_entry<R>& e : seq.entries) {
        os << e.n << ',' << format_scalar(e.norm) << ',';
        if (e.ratio) os << format_scalar(*e.ratio);
        os << '\n';
    }
}

template <class R>
void write_trace_csv(std::ostream& os, const psm_trace<R>& trace) {
    os << "n,j,a_j,b_j,left_value,right_value\n";
    for (std::size_t n = 0; n < trace.iterations.size(); ++n)
        for (const subdomain_solution<R>& sol : trace.iterations[n])
            os << n << ',' << sol.j << ',' << format_scalar(trace.dec.a[static_cast<std::size_t>(sol.j - 1)])
               << ',' << format_scalar(trace.dec.b[static_cast<std::size_t>(sol.j - 1)]) << ','
               << format_scalar(sol.left_value) << ',' << format_scalar(sol.right_value) << '\n';
}

/// Sampled solution curves for plotting: `samples` equispaced points per
/// subdomain, endpoints included.
template <class R>
void write_trace_samples_csv(std::ostream& os, const psm_trace<R>& trace, int samples) {
    if (samples < 2)
        throw std::invalid_argument("write_trace_samples_csv: need at least two sample points");
    os << "n,j,x,value\n";
    for (std::size_t n = 0; n < trace.iterations.size(); ++n)
        for (const subdomain_solution<R>& sol : trace.iterations[n]) {
            const R lo = trace.dec.a[static_cast<std::size_t>(sol.j - 1)];
            const R hi = trace.dec.b[static_cast<std::size_t>(sol.j - 1)];
            for (int s = 0; s < samples; ++s) {
                const R x = lo + (hi - lo) * R(s) / R(samples - 1);
                os << n << ',' << sol.j << ',' << format_scalar(x) << ','
                   << format_scalar(evaluate(sol, trace.dec, x)) << '\n';
            }
        }
}

inline std::string sweep_note(const sweep_result& sweep, const sweep_row& row) {
    std::string note = "slope=" + scalar_traits<double>::to_string(sweep.slope);
    note += row.rho_via_eigenvalues ? ";rho=eig" : ";rho=gelfand";
    if (!row.rho_converged) note += "(unconverged)";
    return note;
}

inline void write_sweep_csv(std::ostream& os, const sweep_result& sweep) {
    os << "N,ell,delta,tol,iterations,onset,rho,bound,slope_note\n";
    for (const sweep_row& row : sweep.rows)
        os << row.n_subdomains << ',' << sweep.ell << ',' << sweep.delta << ',' << sweep.tol << ','
           << row.iterations << ',' << row.onset << ',' << format_scalar(row.rho) << ','
           << format_scalar(row.bound) << ',' << sweep_note(sweep, row) << '\n';
}

// --- JSON ----------------------------------------------------------------
//
// JSON payloads mirror the CSV rows one-to-one; exact scalars are "p/q"
// strings, float scalars plain numbers.

template <class R>
ordered_json scalar_to_json(const R& x) {
    if constexpr (scalar_traits<R>::backend == backend_kind::exact)
        return format_scalar(x);
    else
        return x;
}

template <class R>
ordered_json decomposition_to_json(const decomposition<R>& dec) {
    ordered_json j;
    j["N"] = dec.n_subdomains;
    j["ell"] = scalar_to_json(dec.ell);
    j["delta"] = scalar_to_json(dec.delta);
    j["L"] = scalar_to_json(dec.length);
    j["a"] = ordered_json::array();
    j["b"] = ordered_json::array();
    for (const R& x : dec.a) j["a"].push_back(scalar_to_json(x));
    for (const R& x : dec.b) j["b"].push_back(scalar_to_json(x));
    return j;
}

template <class R>
ordered_json matrix_to_json(const dense_matrix<R>& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class R>
ordered_json interface_vector_to_json(const decomposition<R>& dec, const interface_vector<R>& v) {
    ordered_json rows = ordered_json::array();
    const std::vector<R> xs = interface_points(dec);
    const std::vector<R> flat = v.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) {
        ordered_json row;
        row["index"] = i;
        row["block"] = i / 2 + 1;
        row["slot"] = i % 2 + 1;
        row["x"] = scalar_to_json(xs[i]);
        row["value"] = scalar_to_json(flat[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class R>
ordered_json norms_to_json(const norm_sequence<R>& seq) {
    ordered_json rows = ordered_json::array();
    for (const norm_entry<R>& e : seq.entries) {
        ordered_json row;
        row["n"] = e.n;
        row["norm"] = scalar_to_json(e.norm);
        row["ratio"] = e.ratio ? scalar_to_json(*e.ratio) : ordered_json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class R>
ordered_json trace_to_json(const psm_trace<R>& trace) {
    ordered_json rows = ordered_json::array();
    for (std::size_t n = 0; n < trace.iterations.size(); ++n)
        for (const subdomain_solution<R>& sol : trace.iterations[n]) {
            ordered_json row;
            row["n"] = n;
            row["j"] = sol.j;
            row["a_j"] = scalar_to_json(trace.dec.a[static_cast<std::size_t>(sol.j - 1)]);
            row["b_j"] = scalar_to_json(trace.dec.b[static_cast<std::size_t>(sol.j - 1)]);
            row["left_value"] = scalar_to_json(sol.left_value);
            row["right_value"] = scalar_to_json(sol.right_value);
            rows.push_back(std::move(row));
        }
    return rows;
}

inline ordered_json check_to_json(const check_result& c) {
    ordered_json j;
    j["name"] = c.name;
    j["range_tested"] = c.range_tested;
    j["pass"] = c.pass;
    j["first_violation"] = c.first_violation ? ordered_json(*c.first_violation) : ordered_json(nullptr);
    j["backend"] = c.backend;
    if (c.note) j["note"] = *c.note;
    return j;
}

inline ordered_json report_to_json(const verification_report& report) {
    ordered_json j;
    j["backend"] = report.backend;
    j["N"] = report.n_subdomains;
    j["ell"] = report.ell;
    j["delta"] = report.delta;
    j["n_max"] = report.n_max;
    j["all_pass"] = report.all_pass();
    j["checks"] = ordered_json::array();
    for (const check_result& c : report.checks) j["checks"].push_back(check_to_json(c));
    j["observations"] = ordered_json::array();
    for (const check_result& c : report.observations) j["observations"].push_back(check_to_json(c));
    return j;
}

inline ordered_json sweep_to_json(const sweep_result& sweep) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const sweep_row& row : sweep.rows) {
        ordered_json r;
        r["N"] = row.n_subdomains;
        r["ell"] = sweep.ell;
        r["delta"] = sweep.delta;
        r["tol"] = sweep.tol;
        r["iterations"] = row.iterations;
        r["onset"] = row.onset;
        r["rho"] = row.rho;
        r["bound"] = row.bound;
        r["slope_note"] = sweep_note(sweep, row);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["slope"] = sweep.slope;
    j["intercept"] = sweep.intercept;
    return j;
}

template <class R>
ordered_json spectrum_to_json(const decomposition<R>& dec, const spectral_result& spec,
                              double bound) {
    ordered_json j;
    j["N"] = dec.n_subdomains;
    j["rho"] = spec.radius;
    j["bound"] = bound;
    j["method"] = spec.via_eigenvalues ? "eigenvalues" : "gelfand";
    j["converged"] = spec.converged;
    if (spec.power_steps > 0) j["power_steps"] = spec.power_steps;
    if (!spec.eigenvalues.empty()) {
        ordered_json evs = ordered_json::array();
        for (const auto& ev : spec.eigenvalues) {
            ordered_json e;
            e["re"] = ev.real();
            e["im"] = ev.imag();
            evs.push_back(std::move(e));
        }
        j["eigenvalues"] = std::move(evs);
    }
    return j;
}

} // namespace psm1d

#endif
