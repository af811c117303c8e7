#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated mathematical precondition (zero divisor, wrong rank, non-integral input, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Not enough θ- or t-precision to answer.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A series evaluation failed its convergence certificate.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Reduction at a prime does not preserve the rank (bad prime).
class ReductionFailure : public Error {
public:
    using Error::Error;
};

// Two computed quantities that must agree do not. Never corrected silently.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace drinfeld
