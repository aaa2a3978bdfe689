#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "psm1d/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

using namespace psm1d;
using namespace psm1d::cli;

// Exit-code contract: 0 success, 2 invalid input, 3 verification failure,
// 4 not converged.
constexpr int exit_ok = 0;
constexpr int exit_invalid_input = 2;
constexpr int exit_not_converged = 4;

void emit_error(const std::string& type, const std::string& message,
                const nlohmann::ordered_json& extra = {}) {
    nlohmann::ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    for (auto it = extra.begin(); it != extra.end(); ++it) j["error"][it.key()] = it.value();
    std::cerr << j.dump() << '\n';
}

struct raw_options {
    std::string n = "2";
    std::string ell = "1";
    std::string delta = "1/4";
    std::string tol = "1e-6";
    std::string backend;  // empty: infer from input syntax
    std::string init = "ones";
    std::string init_file;
    std::string format;   // empty: per-command default
    std::string emit_config;
};

void add_common_options(CLI::App* cmd, raw_options& raw, run_config& config) {
    cmd->add_option("--n", raw.n, "Subdomain count: K, LO:HI, LO:HI:STEP or K1,K2,...");
    cmd->add_option("--ell", raw.ell, "Subdomain length (rational \"p/q\" or decimal)");
    cmd->add_option("--delta", raw.delta, "Overlap width (rational \"p/q\" or decimal)");
    cmd->add_option("--backend", raw.backend, "Scalar backend: exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--output,-o", config.output, "Output destination (\"-\": stdout)");
    cmd->add_option("--format", raw.format, "Output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--emit-config", raw.emit_config,
                    "Also write the canonical run configuration to this path");
}

/// Applies syntax-driven backend selection: rational text keeps the exact
/// backend, any decimal promotes the whole run to float (with a warning
/// unless that was requested explicitly).
void finalize_backend(const raw_options& raw, run_config& config, bool uses_tol) {
    config.ell = scalar_value::parse(raw.ell);
    config.delta = scalar_value::parse(raw.delta);
    config.tol = scalar_value::parse(raw.tol);
    const bool any_float = !config.ell.is_exact() || !config.delta.is_exact() ||
                           (uses_tol && !config.tol.is_exact());
    if (!raw.backend.empty()) {
        config.backend = backend_from_string(raw.backend);
        if (config.backend == backend_kind::exact && any_float)
            throw std::invalid_argument(
                "--backend exact requires rational inputs (\"p/q\" or integers); got a decimal");
        return;
    }
    config.backend = any_float ? backend_kind::floating : backend_kind::exact;
    if (any_float)
        std::cerr << "note: decimal input promotes the run to the float backend\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-level parallel Schwarz method for the 1D Laplace error equation:\n"
                 "iteration-matrix assembly, exact contraction verification, spectra and\n"
                 "scalability sweeps."};
    app.require_subcommand(1);

    run_config config;
    raw_options raw;

    CLI::App* matrix = app.add_subcommand("matrix", "Export the dense 2Nx2N iteration matrix");
    matrix->add_option("--size-cap", config.size_cap, "Refuse dense sizes 2N above this cap");

    CLI::App* iterate = app.add_subcommand("iterate", "Run the continuous Schwarz sweeps and export the trace");
    iterate->add_option("--n-max", config.n_max, "Number of sweeps");
    iterate->add_option("--init", raw.init, "Initialization: ones | zero | random | file")
        ->check(CLI::IsMember({"ones", "zero", "random", "file"}));
    iterate->add_option("--init-file", raw.init_file, "State file for --init file (j,left,right rows)");
    iterate->add_option("--seed", config.seed, "Seed for --init random");
    iterate->add_option("--samples", config.curve_samples, "Sampled-curve points per subdomain");
    iterate->add_option("--curve-output", config.curve_output, "Destination for sampled curves");
    iterate->add_flag("--fd-check", config.fd_check,
                      "Cross-check the affine solves against a finite-difference solve");

    CLI::App* norms = app.add_subcommand("norms", "Iterate the all-ones vector and export the norm sequence");
    norms->add_option("--n-max", config.n_max, "Last iteration index");

    CLI::App* verify = app.add_subcommand("verify", "Run the exact verification battery (JSON report)");
    verify->add_option("--n-max", config.n_max, "Last iteration index for the checks");
    verify->add_option("--seed", config.seed, "Seed for the block-relation samples");
    verify->add_option("--relation-samples", config.relation_samples, "Block-relation sample count");
    verify->add_option("--size-cap", config.size_cap, "Dense materialization cap on 2N");
    verify->add_flag("--inject-fault", config.inject_fault, "Self-test: tamper the dense route")
        ->group(""); // hidden

    CLI::App* spectrum = app.add_subcommand("spectrum", "Spectral radius and the closed-form estimate");
    spectrum->add_option("--eig-cap", config.eig_cap, "Dense eigensolve cap on 2N");

    CLI::App* sweep = app.add_subcommand("sweep", "Iterations-to-tolerance sweep over subdomain counts");
    sweep->add_option("--tol", raw.tol, "Convergence tolerance in (0,1)");
    sweep->add_option("--max-iterations", config.max_iterations, "Per-row iteration cap");
    sweep->add_option("--eig-cap", config.eig_cap, "Dense eigensolve cap on 2N");
    sweep->add_option("--jobs", config.jobs, "Concurrent rows (0: hardware threads)");

    for (CLI::App* cmd : {matrix, iterate, norms, verify, spectrum, sweep})
        add_common_options(cmd, raw, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid_input;
    }

    try {
        if (matrix->parsed()) config.command = command_kind::matrix;
        if (iterate->parsed()) config.command = command_kind::iterate;
        if (norms->parsed()) config.command = command_kind::norms;
        if (verify->parsed()) config.command = command_kind::verify;
        if (spectrum->parsed()) config.command = command_kind::spectrum;
        if (sweep->parsed()) config.command = command_kind::sweep;

        config.n_values = parse_n_values(raw.n);
        config.init = init_from_string(raw.init);
        config.init_file = raw.init_file;
        if (config.init == init_kind::file && config.init_file.empty())
            throw std::invalid_argument("--init file needs --init-file PATH");
        if (!raw.format.empty())
            config.format = format_from_string(raw.format);
        else
            config.format = config.command == command_kind::verify ? output_format::json
                                                                   : output_format::csv;
        if (config.command == command_kind::verify && config.format != output_format::json)
            throw std::invalid_argument("verify emits a JSON report; use --format json");

        finalize_backend(raw, config, config.command == command_kind::sweep);

        if (!raw.emit_config.empty()) {
            std::ofstream cfg(resolve_output_path(raw.emit_config),
                              std::ios::binary | std::ios::trunc);
            if (!cfg)
                throw std::invalid_argument("cannot open config output: " + raw.emit_config);
            cfg << canonical_text(config);
        }

        return run_command(config, std::cout, std::cerr);
    } catch (const invalid_geometry_error& e) {
        emit_error("invalid-geometry", e.what());
        return exit_invalid_input;
    } catch (const size_cap_error& e) {
        emit_error("size-cap", e.what());
        return exit_invalid_input;
    } catch (const backend_mismatch_error& e) {
        emit_error("backend-mismatch", e.what());
        return exit_invalid_input;
    } catch (const dimension_error& e) {
        emit_error("dimension-mismatch", e.what());
        return exit_invalid_input;
    } catch (const not_converged_error& e) {
        nlohmann::ordered_json extra;
        extra["last_norm"] = e.last_norm();
        extra["iterations"] = e.iterations();
        emit_error("not-converged", e.what(), extra);
        return exit_not_converged;
    } catch (const std::invalid_argument& e) {
        emit_error("invalid-input", e.what());
        return exit_invalid_input;
    } catch (const std::domain_error& e) {
        emit_error("invalid-input", e.what());
        return exit_invalid_input;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
    return exit_ok;
}
