#pragma once

#include <stdexcept>
#include <string>

namespace ifccr {

// Invalid numeric input: negative power, |beta|^2 > 1, cap(x < 0), ...
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad labels, malformed files, inconsistent options.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A query that has no finite answer for the given covariance
// (e.g. a target that is a deterministic function of the conditioners).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition of a bound does not hold (e.g. the weak-interference bound on a
// channel that is not degraded).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ifccr
