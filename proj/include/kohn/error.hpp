#pragma once

#include <stdexcept>
#include <string>

namespace kohn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// rho(phi) <= 0 somewhere, or a curvature sample is not positive.
class NonPositiveCurvature : public Error {
public:
    using Error::Error;
};

/// The first harmonic of a radius-of-curvature profile does not vanish.
class ClosureViolated : public Error {
public:
    using Error::Error;
};

/// Total turning differs from 2*pi, or the integrated position does not return to its start.
class NotClosed : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The discrete zero mode drifted away from 0, so the grid cannot resolve the operator.
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

/// A computed eigenvalue fell inside a region the sector certificate excludes.
class CertificateFailed : public Error {
public:
    CertificateFailed(double a, double re, double im, const std::string& what)
        : Error(what), a_(a), re_(re), im_(im) {}

    double a() const noexcept { return a_; }
    double eigenvalue_real() const noexcept { return re_; }
    double eigenvalue_imag() const noexcept { return im_; }

private:
    double a_;
    double re_;
    double im_;
};

/// Malformed curve files or command-line input.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace kohn
