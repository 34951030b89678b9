#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sequiv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions before reaching the target.
/// Carries the best value and error estimate seen so the caller can report them.
class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, std::complex<double> value, double achieved)
        : Error(what), value_(value), achieved_(achieved) {}
    std::complex<double> value() const { return value_; }
    double achieved() const { return achieved_; }

private:
    std::complex<double> value_;
    double achieved_;
};

class NonFiniteSample : public Error {
public:
    NonFiniteSample(const std::string& what, double abscissa) : Error(what), abscissa_(abscissa) {}
    double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

class StepFailure : public Error {
public:
    StepFailure(const std::string& what, double t) : Error(what), t_(t) {}
    /// Last time reached before the step controller gave up.
    double time() const { return t_; }

private:
    double t_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NonRealInput : public Error {
public:
    using Error::Error;
};

class DivisionNearZero : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    GridTooCoarse(const std::string& what, double estimate) : Error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

}  // namespace sequiv
