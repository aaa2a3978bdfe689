#include "psm1d/numerics.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <stdexcept>

namespace psm1d {

namespace {

bool is_rational_text(std::string_view text) {
    // Integer or p/q text; anything with a radix point or exponent is float.
    if (text.find_first_of(".eE") != std::string_view::npos) return false;
    return !text.empty();
}

bigint parse_bigint(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty integer literal");
    std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (start == text.size())
        throw std::invalid_argument("sign without digits in integer literal");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("invalid digit in integer literal: '" + std::string(text) + "'");
    return bigint(std::string(text));
}

} // namespace

rational scalar_traits<rational>::from_string(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return rational(parse_bigint(text));
    }
    const bigint num = parse_bigint(text.substr(0, slash));
    const bigint den = parse_bigint(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("rational literal with zero denominator: '" + std::string(text) + "'");
    return rational(num, den);
}

double scalar_traits<double>::from_string(std::string_view text) {
    const std::string owned(text);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size() || owned.empty() || errno == ERANGE)
        throw std::invalid_argument("invalid numeric literal: '" + owned + "'");
    return value;
}

scalar_value scalar_value::parse(std::string_view text) {
    if (is_rational_text(text))
        return scalar_value(scalar_traits<rational>::from_string(text));
    return scalar_value(scalar_traits<double>::from_string(text));
}

ordering compare(const scalar_value& x, const scalar_value& y, double tol) {
    if (x.backend() != y.backend())
        throw backend_mismatch_error("compare: operands carry different scalar backends");
    if (x.backend() == backend_kind::exact) {
        if (tol != 0.0)
            throw std::invalid_argument("compare: exact backend requires tol == 0");
        return compare(x.as_rational(), y.as_rational());
    }
    return compare(x.as_double(), y.as_double(), tol);
}

} // namespace psm1d
