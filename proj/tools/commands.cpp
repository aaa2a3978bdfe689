#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "psm1d/io.hpp"
#include "psm1d/schwarz.hpp"
#include "psm1d/sweep.hpp"
#include "psm1d/verification.hpp"

namespace psm1d::cli {

namespace {

template <class R>
R scalar_as(const scalar_value& v);

template <>
rational scalar_as<rational>(const scalar_value& v) {
    return v.as_rational();
}

template <>
double scalar_as<double>(const scalar_value& v) {
    return v.as_double();
}

int single_n(const run_config& config) {
    if (config.n_values.size() != 1)
        throw std::invalid_argument(std::string(to_string(config.command)) +
                                    " takes a single subdomain count");
    return config.n_values.front();
}

/// RAII writer that targets stdout for "-" and a file otherwise.
class output_sink {
public:
    output_sink(const std::string& output, std::ostream& fallback) {
        if (output == "-") {
            stream_ = &fallback;
            return;
        }
        const std::string path = resolve_output_path(output);
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_)
            throw std::invalid_argument("cannot open output file: " + path);
        stream_ = &file_;
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

void write_json(std::ostream& os, const ordered_json& j) {
    os << j.dump(2) << '\n';
}

template <class R>
psm_state<R> read_state_file(const decomposition<R>& dec, const std::string& path) {
    std::ifstream in(resolve_output_path(path));
    if (!in)
        throw std::invalid_argument("cannot open init file: " + path);
    psm_state<R> state;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("j,", 0) == 0) continue;
        std::istringstream row(line);
        std::string jtext, left, right;
        if (!std::getline(row, jtext, ',') || !std::getline(row, left, ',') ||
            !std::getline(row, right))
            throw std::invalid_argument("malformed init row: '" + line + "'");
        state.push_back({std::stoi(jtext), scalar_traits<R>::from_string(left),
                         scalar_traits<R>::from_string(right)});
    }
    if (static_cast<int>(state.size()) != dec.n_subdomains)
        throw dimension_error("init file holds " + std::to_string(state.size()) +
                              " subdomains, expected " + std::to_string(dec.n_subdomains));
    for (int j = 1; j <= dec.n_subdomains; ++j)
        if (state[static_cast<std::size_t>(j - 1)].j != j)
            throw std::invalid_argument("init file rows must list subdomains 1..N in order");
    return state;
}

template <class R>
psm_state<R> make_init(const run_config& config, const decomposition<R>& dec) {
    switch (config.init) {
        case init_kind::ones: return ones_state(dec);
        case init_kind::zero: return zero_state(dec);
        case init_kind::random: return random_state(dec, config.seed);
        case init_kind::file: return read_state_file(dec, config.init_file);
    }
    throw std::invalid_argument("unknown init kind");
}

const char* init_label(const run_config& config) {
    return to_string(config.init);
}

template <class R>
int cmd_matrix(const run_config& config, std::ostream& out, std::ostream& err) {
    const auto dec = build_decomposition<R>(single_n(config), scalar_as<R>(config.ell),
                                            scalar_as<R>(config.delta));
    const auto t = assemble_dense(dec, config.size_cap);

    output_sink sink(config.output, out);
    if (config.format == output_format::csv)
        write_matrix_csv(sink.stream(), t);
    else
        write_json(sink.stream(), matrix_to_json(t));

    R min_sum = t.row_sum(0), max_sum = t.row_sum(0);
    for (std::size_t i = 1; i < t.rows(); ++i) {
        const R s = t.row_sum(i);
        if (s < min_sum) min_sum = s;
        if (s > max_sum) max_sum = s;
    }
    err << "2N=" << t.rows() << " row sums: min=" << format_scalar(min_sum)
        << " max=" << format_scalar(max_sum) << '\n';
    return 0;
}

template <class R>
int cmd_iterate(const run_config& config, std::ostream& out, std::ostream& err) {
    const auto dec = build_decomposition<R>(single_n(config), scalar_as<R>(config.ell),
                                            scalar_as<R>(config.delta));
    const auto trace = run_psm(dec, make_init(config, dec), config.n_max, init_label(config));

    output_sink sink(config.output, out);
    if (config.format == output_format::csv)
        write_trace_csv(sink.stream(), trace);
    else
        write_json(sink.stream(), trace_to_json(trace));

    if (config.curve_samples > 0) {
        if (config.curve_output.empty())
            throw std::invalid_argument("--samples needs --curve-output PATH");
        output_sink curves(config.curve_output, out);
        write_trace_samples_csv(curves.stream(), trace, config.curve_samples);
    }

    if (config.fd_check) {
        // Replay the run through the discretized solver and compare traces.
        double worst = 0.0;
        psm_state<R> fd = trace.iterations.front();
        for (std::size_t n = 1; n < trace.iterations.size(); ++n) {
            fd = psm_step_fd(dec, fd, 32);
            const auto& affine = trace.iterations[n];
            for (std::size_t j = 0; j < fd.size(); ++j) {
                worst = std::max(worst, std::abs(scalar_traits<R>::to_double(affine[j].left_value) -
                                                 scalar_traits<R>::to_double(fd[j].left_value)));
                worst = std::max(worst, std::abs(scalar_traits<R>::to_double(affine[j].right_value) -
                                                 scalar_traits<R>::to_double(fd[j].right_value)));
            }
        }
        err << "fd-check: max deviation = " << scalar_traits<double>::to_string(worst) << '\n';
        if (worst > 1e-9) return 3;
    }
    return 0;
}

template <class R>
int cmd_norms(const run_config& config, std::ostream& out, std::ostream&) {
    const auto dec = build_decomposition<R>(single_n(config), scalar_as<R>(config.ell),
                                            scalar_as<R>(config.delta));
    const auto seq = norm_via_ones(dec, config.n_max);
    output_sink sink(config.output, out);
    if (config.format == output_format::csv)
        write_norms_csv(sink.stream(), seq);
    else
        write_json(sink.stream(), norms_to_json(seq));
    return 0;
}

int cmd_verify(const run_config& config, std::ostream& out, std::ostream&) {
    if (config.backend != backend_kind::exact)
        throw std::invalid_argument(
            "verification requires the exact backend; pass rational --ell/--delta (\"p/q\") "
            "and --backend exact");

    verify_options options;
    options.n_max = config.n_max;
    options.seed = config.seed;
    options.relation_samples = config.relation_samples;
    options.size_cap = config.size_cap;
    options.inject_fault = config.inject_fault;

    bool all_pass = true;
    ordered_json reports = ordered_json::array();
    for (int n : config.n_values) {
        const auto dec =
            build_decomposition<rational>(n, config.ell.as_rational(), config.delta.as_rational());
        const verification_report report = run_verification(dec, options);
        all_pass = all_pass && report.all_pass();
        reports.push_back(report_to_json(report));
    }

    ordered_json j;
    j["all_pass"] = all_pass;
    j["reports"] = std::move(reports);
    output_sink sink(config.output, out);
    write_json(sink.stream(), j);
    return all_pass ? 0 : 3;
}

template <class R>
int cmd_spectrum(const run_config& config, std::ostream& out, std::ostream&) {
    const auto dec = build_decomposition<R>(single_n(config), scalar_as<R>(config.ell),
                                            scalar_as<R>(config.delta));
    const spectral_result spec = spectral_radius_of(dec, config.eig_cap);
    const double bound = spectral_bound_of(dec);

    output_sink sink(config.output, out);
    if (config.format == output_format::csv) {
        sink.stream() << "N,rho,bound,method,converged\n"
                      << dec.n_subdomains << ',' << format_scalar(spec.radius) << ','
                      << format_scalar(bound) << ','
                      << (spec.via_eigenvalues ? "eigenvalues" : "gelfand") << ','
                      << (spec.converged ? 1 : 0) << '\n';
    } else {
        write_json(sink.stream(), spectrum_to_json(dec, spec, bound));
    }
    return 0;
}

template <class R>
int cmd_sweep(const run_config& config, std::ostream& out, std::ostream&) {
    sweep_options options;
    options.max_iterations = config.max_iterations;
    options.eig_cap = config.eig_cap;
    options.jobs = config.jobs;
    const sweep_result sweep = run_sweep<R>(config.n_values, scalar_as<R>(config.ell),
                                            scalar_as<R>(config.delta), scalar_as<R>(config.tol),
                                            options);
    output_sink sink(config.output, out);
    if (config.format == output_format::csv)
        write_sweep_csv(sink.stream(), sweep);
    else
        write_json(sink.stream(), sweep_to_json(sweep));
    return 0;
}

template <class R>
int run_typed(const run_config& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case command_kind::matrix: return cmd_matrix<R>(config, out, err);
        case command_kind::iterate: return cmd_iterate<R>(config, out, err);
        case command_kind::norms: return cmd_norms<R>(config, out, err);
        case command_kind::verify: return cmd_verify(config, out, err);
        case command_kind::spectrum: return cmd_spectrum<R>(config, out, err);
        case command_kind::sweep: return cmd_sweep<R>(config, out, err);
    }
    throw std::invalid_argument("unknown command");
}

} // namespace

std::string resolve_output_path(const std::string& output) {
    namespace fs = std::filesystem;
    const char* dir = std::getenv("PSM1D_OUTPUT_DIR");
    if (!dir || !*dir || fs::path(output).is_absolute()) return output;
    return (fs::path(dir) / output).string();
}

int run_command(const run_config& config, std::ostream& out, std::ostream& err) {
    if (config.backend == backend_kind::exact)
        return run_typed<rational>(config, out, err);
    return run_typed<double>(config, out, err);
}

} // namespace psm1d::cli
