#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace albaxter {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Precondition or domain violation (bad index, singular parameter, degenerate state).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A logarithm or complex power would cross its principal branch cut.
class BranchError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Periodic site index in [0, n).
inline std::size_t wrap(long k, std::size_t n) {
    const long m = static_cast<long>(n);
    long r = k % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

} // namespace albaxter
