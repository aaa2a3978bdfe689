#ifndef PSM1D_NUMERICS_HPP
#define PSM1D_NUMERICS_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "psm1d/errors.hpp"

namespace psm1d {

/// Arbitrary-precision rational, the scalar of the exact backend. All
/// iteration-matrix entries are rational whenever the overlap ratio is, so
/// every strict inequality the analysis layer checks can be decided with no
/// tolerance at all.
using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

enum class backend_kind { exact, floating };

enum class ordering { less, equal, greater };

/// Absolute tolerance used by floating-backend comparisons of interface
/// values, which are all in [0,1] for the initializations we iterate.
inline constexpr double default_float_tolerance = 1e-12;

template <class R>
struct scalar_traits;

template <>
struct scalar_traits<rational> {
    static constexpr backend_kind backend = backend_kind::exact;
    static constexpr const char* name = "exact";

    static double to_double(const rational& x) { return x.template convert_to<double>(); }

    /// Canonical form: lowest terms, positive denominator, "p" when the
    /// denominator is one and "p/q" otherwise.
    static std::string to_string(const rational& x) {
        const bigint num = boost::multiprecision::numerator(x);
        const bigint den = boost::multiprecision::denominator(x);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }

    static rational from_string(std::string_view text);
};

template <>
struct scalar_traits<double> {
    static constexpr backend_kind backend = backend_kind::floating;
    static constexpr const char* name = "float";

    static double to_double(double x) { return x; }

    /// 17 significant digits round-trip binary64 exactly.
    static std::string to_string(double x) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }

    static double from_string(std::string_view text);
};

/// Three-way comparison. The exact backend is tolerance-free and requires
/// tol == 0; the floating backend treats |x - y| <= tol as equal.
inline ordering compare(const rational& x, const rational& y, const rational& tol = rational(0)) {
    if (tol != 0)
        throw std::invalid_argument("compare: exact backend requires tol == 0");
    if (x < y) return ordering::less;
    if (x > y) return ordering::greater;
    return ordering::equal;
}

inline ordering compare(double x, double y, double tol = 0.0) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("compare: tolerance must be nonnegative");
    if (std::abs(x - y) <= tol) return ordering::equal;
    return x < y ? ordering::less : ordering::greater;
}

template <class R>
bool approx_equal(const R& x, const R& y, const R& tol) {
    return compare(x, y, tol) == ordering::equal;
}

/// Type-erased scalar used at the CLI/config boundary, where the backend is
/// decided by input syntax: "p/q" or integer text stays exact, decimal or
/// exponent text becomes a binary64 value.
class scalar_value {
public:
    scalar_value() : value_(rational(0)) {}
    explicit scalar_value(rational r) : value_(std::move(r)) {}
    explicit scalar_value(double d) : value_(d) {}

    /// Throws std::invalid_argument on malformed text.
    static scalar_value parse(std::string_view text);

    backend_kind backend() const {
        return std::holds_alternative<rational>(value_) ? backend_kind::exact
                                                        : backend_kind::floating;
    }

    bool is_exact() const { return backend() == backend_kind::exact; }

    const rational& as_rational() const {
        if (const auto* r = std::get_if<rational>(&value_)) return *r;
        throw backend_mismatch_error("scalar_value: float value used where an exact rational is required");
    }

    double as_double() const {
        if (const auto* r = std::get_if<rational>(&value_))
            return scalar_traits<rational>::to_double(*r);
        return std::get<double>(value_);
    }

    std::string to_string() const {
        if (const auto* r = std::get_if<rational>(&value_))
            return scalar_traits<rational>::to_string(*r);
        return scalar_traits<double>::to_string(std::get<double>(value_));
    }

    friend bool operator==(const scalar_value&, const scalar_value&) = default;

private:
    std::variant<rational, double> value_;
};

/// Comparison across scalar_values; both must carry the same backend.
ordering compare(const scalar_value& x, const scalar_value& y, double tol = 0.0);

} // namespace psm1d

#endif
