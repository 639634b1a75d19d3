// errors.hpp — Exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinent {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs: out-of-range physical parameters, bad subsystem indices, mismatched dimensions.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Problem too large for the dense representation.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Broken numerical preconditions (non-Hermitian input, unphysical state, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

class StiffnessError : public NumericalError {
public:
    StiffnessError(const std::string& what, double time)
        : NumericalError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Liouvillian null space is not one-dimensional.
class MultiplicityError : public NumericalError {
public:
    MultiplicityError(const std::string& what, double gap)
        : NumericalError(what), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

// Root/threshold bracket does not straddle a crossing.
class BracketError : public Error {
public:
    using Error::Error;
};

// Coarse scan found more than one local maximum.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what, std::vector<double> maxima)
        : Error(what), maxima_(std::move(maxima)) {}
    const std::vector<double>& maxima() const noexcept { return maxima_; }

private:
    std::vector<double> maxima_;
};

} // namespace spinent
