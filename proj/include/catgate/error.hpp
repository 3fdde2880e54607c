#pragma once

#include <stdexcept>
#include <string>

namespace catgate {

// Caller broke a precondition (length mismatch, incompatible grids, ...).
class contract_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A coordinate grid does not cover the support a state needs.
class coverage_error : public contract_error {
public:
    using contract_error::contract_error;
};

// Base of every failure that comes out of the numbers rather than the inputs.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class zero_probability_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class singular_shear_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class zero_state_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

} // namespace catgate
