#pragma once

#include <stdexcept>
#include <string>

namespace qproc {

enum class ErrorKind {
    InvalidRegister,
    InvalidArity,
    InvalidPermutation,
    InvalidOutcome,
    InvalidState,
    UnknownQubit,
    ZeroBranch,
    ShapeMismatch,
    Syntax,
    UnknownGate,
    // Type errors of the source calculus.
    SharedQubit,
    UnknownName,
    ArityMismatch,
    DuplicateQubitArg,
    UnknownQubitName,
    TypeMismatch,
    // Target calculus well-formedness.
    NoCloningViolation,
    UnboundQubit,
    UnresolvedName,
    UnguardedRecursion,
};

const char *error_kind_name(ErrorKind kind);

/// Line and column are 1-based; line 0 means "no source position".
struct SourceLoc {
    int line = 0;
    int column = 0;

    bool known() const {
        return line > 0;
    }
    std::string str() const;
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message, SourceLoc loc = {});

    ErrorKind kind() const {
        return kind_;
    }
    const SourceLoc &loc() const {
        return loc_;
    }
    /// Message without the location prefix.
    const std::string &detail() const {
        return detail_;
    }

    bool is_type_error() const;

   private:
    ErrorKind kind_;
    SourceLoc loc_;
    std::string detail_;
};

}  // namespace qproc
