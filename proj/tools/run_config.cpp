#include "run_config.hpp"

#include <stdexcept>

namespace psm1d::cli {

namespace {

template <class Enum>
[[noreturn]] void bad_enum(const char* what, const std::string& text) {
    throw std::invalid_argument(std::string("unknown ") + what + ": '" + text + "'");
}

} // namespace

const char* to_string(command_kind c) {
    switch (c) {
        case command_kind::matrix: return "matrix";
        case command_kind::iterate: return "iterate";
        case command_kind::norms: return "norms";
        case command_kind::verify: return "verify";
        case command_kind::spectrum: return "spectrum";
        case command_kind::sweep: return "sweep";
    }
    return "?";
}

const char* to_string(init_kind k) {
    switch (k) {
        case init_kind::ones: return "ones";
        case init_kind::zero: return "zero";
        case init_kind::random: return "random";
        case init_kind::file: return "file";
    }
    return "?";
}

const char* to_string(output_format f) {
    return f == output_format::csv ? "csv" : "json";
}

const char* to_string(backend_kind b) {
    return b == backend_kind::exact ? "exact" : "float";
}

command_kind command_from_string(const std::string& text) {
    if (text == "matrix") return command_kind::matrix;
    if (text == "iterate") return command_kind::iterate;
    if (text == "norms") return command_kind::norms;
    if (text == "verify") return command_kind::verify;
    if (text == "spectrum") return command_kind::spectrum;
    if (text == "sweep") return command_kind::sweep;
    bad_enum<command_kind>("command", text);
}

init_kind init_from_string(const std::string& text) {
    if (text == "ones") return init_kind::ones;
    if (text == "zero") return init_kind::zero;
    if (text == "random") return init_kind::random;
    if (text == "file") return init_kind::file;
    bad_enum<init_kind>("init", text);
}

output_format format_from_string(const std::string& text) {
    if (text == "csv") return output_format::csv;
    if (text == "json") return output_format::json;
    bad_enum<output_format>("format", text);
}

backend_kind backend_from_string(const std::string& text) {
    if (text == "exact") return backend_kind::exact;
    if (text == "float") return backend_kind::floating;
    bad_enum<backend_kind>("backend", text);
}

std::vector<int> parse_n_values(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty subdomain-count specification");
    auto parse_int = [](const std::string& s) {
        std::size_t used = 0;
        const int value = std::stoi(s, &used);
        if (used != s.size())
            throw std::invalid_argument("invalid integer in subdomain-count specification: '" + s + "'");
        return value;
    };

    std::vector<int> values;
    if (text.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = text.find(',', start);
            const std::string piece =
                text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            values.push_back(parse_int(piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return values;
    }

    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        values.push_back(parse_int(text));
        return values;
    }
    const std::size_t colon2 = text.find(':', colon + 1);
    const int lo = parse_int(text.substr(0, colon));
    const int hi = parse_int(text.substr(colon + 1, colon2 == std::string::npos
                                                        ? std::string::npos
                                                        : colon2 - colon - 1));
    const int step = colon2 == std::string::npos ? 1 : parse_int(text.substr(colon2 + 1));
    if (step <= 0)
        throw std::invalid_argument("range step must be positive");
    if (hi < lo)
        throw std::invalid_argument("empty range: " + text);
    for (int n = lo; n <= hi; n += step) values.push_back(n);
    return values;
}

nlohmann::ordered_json to_json(const run_config& config) {
    nlohmann::ordered_json j;
    j["command"] = to_string(config.command);
    j["N"] = config.n_values;
    j["ell"] = config.ell.to_string();
    j["delta"] = config.delta.to_string();
    j["tol"] = config.tol.to_string();
    j["n_max"] = config.n_max;
    j["backend"] = to_string(config.backend);
    j["init"] = {{"kind", to_string(config.init)},
                 {"seed", config.seed},
                 {"path", config.init_file}};
    j["output"] = config.output;
    j["format"] = to_string(config.format);
    j["curve_samples"] = config.curve_samples;
    j["curve_output"] = config.curve_output;
    j["fd_check"] = config.fd_check;
    j["relation_samples"] = config.relation_samples;
    j["max_iterations"] = config.max_iterations;
    j["size_cap"] = config.size_cap;
    j["eig_cap"] = config.eig_cap;
    j["jobs"] = config.jobs;
    j["inject_fault"] = config.inject_fault;
    return j;
}

run_config config_from_json(const nlohmann::ordered_json& j) {
    run_config config;
    config.command = command_from_string(j.at("command").get<std::string>());
    config.n_values = j.at("N").get<std::vector<int>>();
    config.ell = scalar_value::parse(j.at("ell").get<std::string>());
    config.delta = scalar_value::parse(j.at("delta").get<std::string>());
    config.tol = scalar_value::parse(j.at("tol").get<std::string>());
    config.n_max = j.at("n_max").get<long>();
    config.backend = backend_from_string(j.at("backend").get<std::string>());
    config.init = init_from_string(j.at("init").at("kind").get<std::string>());
    config.seed = j.at("init").at("seed").get<std::uint64_t>();
    config.init_file = j.at("init").at("path").get<std::string>();
    config.output = j.at("output").get<std::string>();
    config.format = format_from_string(j.at("format").get<std::string>());
    config.curve_samples = j.at("curve_samples").get<int>();
    config.curve_output = j.at("curve_output").get<std::string>();
    config.fd_check = j.at("fd_check").get<bool>();
    config.relation_samples = j.at("relation_samples").get<int>();
    config.max_iterations = j.at("max_iterations").get<long>();
    config.size_cap = j.at("size_cap").get<std::size_t>();
    config.eig_cap = j.at("eig_cap").get<std::size_t>();
    config.jobs = j.at("jobs").get<unsigned>();
    config.inject_fault = j.at("inject_fault").get<bool>();
    return config;
}

std::string canonical_text(const run_config& config) {
    return to_json(config).dump() + "\n";
}

} // namespace psm1d::cli
