#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace compact3d {

using Complex = std::complex<double>;

/// Thrown when a scheme is asked to run on a grid it cannot handle
/// (the sixth-order stencil on an anisotropic grid).
class UnsupportedScheme : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A spectral tridiagonal system hit a pivot below the singularity threshold.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(int n, int m, const std::string& what)
        : std::runtime_error(what), n_(n), m_(m) {}

    /// 1-based sine-mode indices of the offending system.
    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }

private:
    int n_;
    int m_;
};

/// Failure while moving blocks between parts.
class ExchangeError : public std::runtime_error {
public:
    ExchangeError(int from, int to, const std::string& what)
        : std::runtime_error(what), from_(from), to_(to) {}

    int from() const noexcept { return from_; }
    int to() const noexcept { return to_; }

private:
    int from_;
    int to_;
};

}  // namespace compact3d
