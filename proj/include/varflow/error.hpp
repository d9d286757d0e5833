#pragma once

#include <stdexcept>
#include <string>

namespace varflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input too short, constant, or otherwise unable to support the requested statistic.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Series with no common month range.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Regressor matrix without full column rank.
class SingularDesignError : public Error {
public:
    using Error::Error;
};

/// Series still carries a unit root after the maximum number of differences.
class NonStationarityError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent run configuration, lexicon, or interruption spec.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Messages carry the file, row and column where known.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Monthly input with a missing month.
class GapError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Value outside the mathematical domain of an operation (e.g. a non-positive rate).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model parameters (non-PD covariance, mismatched dimensions).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Cholesky factorization of a residual covariance failed.
class CholeskyError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Unknown series, equation, or table name.
class LookupError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace varflow
