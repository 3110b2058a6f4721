#pragma once

#include <stdexcept>
#include <string>

namespace sympl {

// Contract violations: bad inputs, dimension mismatches, endpoint mismatches.
// CLI maps these to exit code 2.
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter outside the documented range of an operation.
class ParameterError : public ContractError {
public:
    explicit ParameterError(const std::string& what) : ContractError(what) {}
};

// Numerical consistency failures: imaginary residues above tolerance,
// unstable epsilon refinement, classification failures. Exit code 1.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A crossing could not be resolved after the full perturbation schedule.
// Carries the offending parameter interval in the message.
class DegeneracyError : public NumericalError {
public:
    explicit DegeneracyError(const std::string& what) : NumericalError(what) {}
};

// Two independent computation routes disagreed (e.g. Bott sum vs direct count).
class EngineInconsistencyError : public NumericalError {
public:
    explicit EngineInconsistencyError(const std::string& what) : NumericalError(what) {}
};

// Input matrix lies outside the supported normal-form patterns.
class DecompositionError : public NumericalError {
public:
    explicit DecompositionError(const std::string& what) : NumericalError(what) {}
};

// A bounded search ran out of budget; message carries search statistics.
class ExhaustionError : public NumericalError {
public:
    explicit ExhaustionError(const std::string& what) : NumericalError(what) {}
};

} // namespace sympl
