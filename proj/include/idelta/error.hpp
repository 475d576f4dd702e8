#pragma once

#include <stdexcept>
#include <string>

namespace idelta {

/// Bad caller input: violated preconditions, out-of-domain arguments,
/// malformed configuration. The CLI maps these to exit code 2.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class OutOfRegime : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class UnknownPreset : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// A numerical guard tripped while computing. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularStep : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidProblem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateFit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GridTooCoarse : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NormalizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientPoints : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoVanishing : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BoundaryLeakage : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonphysicalNegativity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepResolution : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace idelta
