#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace snic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class CycleError : public Error {
public:
    CycleError() : Error("graph contains a cycle") {}
};

class ArityError : public Error {
public:
    using Error::Error;
};

class SymbolRangeError : public Error {
public:
    using Error::Error;
};

/// A code's functions disagree with the slot layout the instance prescribes.
class CodeMismatchError : public Error {
public:
    using Error::Error;
};

/// The enumeration would exceed the configured number of joint tuples.
class SizeBudgetError : public Error {
public:
    using Error::Error;
};

class UnknownVariableError : public Error {
public:
    explicit UnknownVariableError(const std::string& name)
        : Error("unknown variable " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A translation precondition does not hold. `subject()` names the offending
/// entity (source, node, receiver) when there is one.
class PreconditionError : public Error {
public:
    PreconditionError(std::string what, std::string subject = {})
        : Error(subject.empty() ? what : what + ": " + subject), subject_(std::move(subject)) {}
    const std::string& subject() const noexcept { return subject_; }

private:
    std::string subject_;
};

class DecodabilityPreconditionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

/// Malformed document (bad JSON, wrong kind, missing field).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace snic
