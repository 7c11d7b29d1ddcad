#pragma once

#include <stdexcept>
#include <string>

namespace hodgeforge {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A flats list that is not the lattice of flats of a loopless matroid.
/// Carries the name of the violated axiom plus a witness description.
class AxiomViolation : public Error {
public:
    AxiomViolation(std::string axiom_name, const std::string& witness)
        : Error("axiom violation [" + axiom_name + "]: " + witness),
          axiom(std::move(axiom_name)) {}

    std::string axiom;
};

/// A deletion tower was requested for a coloop element.
class ColoopInput : public Error {
public:
    explicit ColoopInput(const std::string& what) : Error("coloop input: " + what) {}
};

/// Malformed documents, out-of-range arguments, unparsable rationals.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

/// A caller broke a documented precondition of an operation.
class PreconditionFailure : public Error {
public:
    explicit PreconditionFailure(const std::string& what)
        : Error("precondition failure: " + what) {}
};

/// An exact check of a property that should hold by theorem came out false.
class VerificationFailure : public Error {
public:
    explicit VerificationFailure(const std::string& what)
        : Error("verification failure: " + what) {}
};

/// Two redundant computations of the same object disagree. Always a bug.
class InternalMismatch : public Error {
public:
    explicit InternalMismatch(const std::string& what)
        : Error("internal mismatch: " + what) {}
};

} // namespace hodgeforge
