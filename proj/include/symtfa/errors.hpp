#pragma once

#include <stdexcept>
#include <string>

namespace symtfa {

// Base for every library error. Subclasses map onto CLI exit codes:
// PreconditionError -> 2, NumericalDomainError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ParameterError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NotSymplecticError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NotShiftInvertibleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class GridMismatchError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnsupportedError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NumericalDomainError : public Error {
public:
    using Error::Error;
};

}  // namespace symtfa
