#ifndef PSM1D_ERRORS_HPP
#define PSM1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psm1d {

/// Decomposition parameters violate a geometric constraint; the message
/// names the constraint that failed.
class invalid_geometry_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation mixed values from the exact and the floating-point backend.
class backend_mismatch_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector/operator size disagreement.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A dense materialization or eigenvalue computation would exceed its
/// configured size cap.
class size_cap_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An iteration hit its step cap before reaching the requested tolerance.
/// Carries the norm reached at the cap.
class not_converged_error : public std::runtime_error {
public:
    not_converged_error(const std::string& message, double last_norm, long long iterations)
        : std::runtime_error(message), last_norm_(last_norm), iterations_(iterations) {}

    double last_norm() const noexcept { return last_norm_; }
    long long iterations() const noexcept { return iterations_; }

private:
    double last_norm_;
    long long iterations_;
};

} // namespace psm1d

#endif
