#include "qproc/error.h"

namespace qproc {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidRegister:
            return "InvalidRegister";
        case ErrorKind::InvalidArity:
            return "InvalidArity";
        case ErrorKind::InvalidPermutation:
            return "InvalidPermutation";
        case ErrorKind::InvalidOutcome:
            return "InvalidOutcome";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::UnknownQubit:
            return "UnknownQubit";
        case ErrorKind::ZeroBranch:
            return "ZeroBranch";
        case ErrorKind::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorKind::Syntax:
            return "SyntaxError";
        case ErrorKind::UnknownGate:
            return "UnknownGate";
        case ErrorKind::SharedQubit:
            return "SharedQubit";
        case ErrorKind::UnknownName:
            return "UnknownName";
        case ErrorKind::ArityMismatch:
            return "ArityMismatch";
        case ErrorKind::DuplicateQubitArg:
            return "DuplicateQubitArg";
        case ErrorKind::UnknownQubitName:
            return "UnknownQubitName";
        case ErrorKind::TypeMismatch:
            return "TypeMismatch";
        case ErrorKind::NoCloningViolation:
            return "NoCloningViolation";
        case ErrorKind::UnboundQubit:
            return "UnboundQubit";
        case ErrorKind::UnresolvedName:
            return "UnresolvedName";
        case ErrorKind::UnguardedRecursion:
            return "UnguardedRecursion";
    }
    return "Error";
}

std::string SourceLoc::str() const {
    return std::to_string(line) + ":" + std::to_string(column);
}

static std::string format_message(ErrorKind kind, const std::string &message, const SourceLoc &loc) {
    std::string out;
    if (loc.known()) {
        out += loc.str() + ": ";
    }
    out += error_kind_name(kind);
    out += ": ";
    out += message;
    return out;
}

Error::Error(ErrorKind kind, const std::string &message, SourceLoc loc)
    : std::runtime_error(format_message(kind, message, loc)), kind_(kind), loc_(loc), detail_(message) {
}

bool Error::is_type_error() const {
    switch (kind_) {
        case ErrorKind::SharedQubit:
        case ErrorKind::UnknownName:
        case ErrorKind::ArityMismatch:
        case ErrorKind::DuplicateQubitArg:
        case ErrorKind::UnknownQubitName:
        case ErrorKind::TypeMismatch:
        case ErrorKind::UnknownGate:
            return true;
        default:
            return false;
    }
}

}  // namespace qproc
