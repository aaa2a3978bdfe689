#ifndef PSM1D_TOOLS_RUN_CONFIG_HPP
#define PSM1D_TOOLS_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psm1d/analysis.hpp"
#include "psm1d/iteration_matrix.hpp"
#include "psm1d/numerics.hpp"
#include "psm1d/spectrum.hpp"

namespace psm1d::cli {

enum class command_kind { matrix, iterate, norms, verify, spectrum, sweep };
enum class init_kind { ones, zero, random, file };
enum class output_format { csv, json };

const char* to_string(command_kind c);
const char* to_string(init_kind k);
const char* to_string(output_format f);
const char* to_string(backend_kind b);

command_kind command_from_string(const std::string& text);
init_kind init_from_string(const std::string& text);
output_format format_from_string(const std::string& text);
backend_kind backend_from_string(const std::string& text);

/// Expands "7", "2:13", "2:64:2" or "2,4,8" into an explicit list.
std::vector<int> parse_n_values(const std::string& text);

/// Everything a run needs, normalized. Re-serializing a parsed config gives
/// back the identical canonical document.
struct run_config {
    command_kind command = command_kind::norms;
    std::vector<int> n_values = {2};
    scalar_value ell = scalar_value::parse("1");
    scalar_value delta = scalar_value::parse("1/4");
    scalar_value tol = scalar_value::parse("1e-6");
    long n_max = 10;
    backend_kind backend = backend_kind::exact;
    init_kind init = init_kind::ones;
    std::uint64_t seed = 42;
    std::string init_file;
    std::string output = "-";  // "-" writes to stdout
    output_format format = output_format::csv;

    int curve_samples = 0;         // iterate: sampled-curve export (0 disables)
    std::string curve_output;      // iterate: destination of the sampled curves
    bool fd_check = false;         // iterate: discretized-solver cross-check
    int relation_samples = 1000;   // verify: seeded block-relation samples
    long max_iterations = default_iteration_cap;
    std::size_t size_cap = default_dense_cap;
    std::size_t eig_cap = default_eig_cap;
    unsigned jobs = 0;             // sweep fan-out (0: hardware concurrency)
    bool inject_fault = false;     // verify self-test hook

    friend bool operator==(const run_config&, const run_config&) = default;
};

nlohmann::ordered_json to_json(const run_config& config);
run_config config_from_json(const nlohmann::ordered_json& j);

/// Canonical single-line document with a trailing newline.
std::string canonical_text(const run_config& config);

} // namespace psm1d::cli

#endif
