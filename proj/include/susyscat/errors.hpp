#pragma once

#include <stdexcept>
#include <string>

namespace susyscat {

/// Coarse failure categories; the CLI maps each one to an exit code.
enum class ErrorCategory {
    parameter,  ///< invalid model parameters, grids or call arguments
    numerical,  ///< integration, matching or grid-resolution failures
    io,         ///< file input/output
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

/// Argument outside the domain of a formula (x <= 0, k <= 0, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

/// ModelParams / grid / config validation failure.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

/// Input object does not satisfy an operation's precondition.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

/// Quantity requested at d = 0, where the Hermitian counterpart does not exist.
class SingularLimitError : public Error {
public:
    explicit SingularLimitError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

class IntegrationError : public Error {
public:
    explicit IntegrationError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

/// Two asymptotic extractions disagree: the tail is not free yet.
class MatchingWindowError : public Error {
public:
    explicit MatchingWindowError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class GridTooCoarseError : public Error {
public:
    explicit GridTooCoarseError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class NoInteriorPeakError : public Error {
public:
    explicit NoInteriorPeakError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

/// Half maximum not bracketed, or too few samples inside the half-maximum window.
class WindowError : public Error {
public:
    explicit WindowError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

/// Two routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace susyscat
