#pragma once

#include <map>
#include <set>
#include <string>

#include "qproc/cqp/config.h"

namespace qproc::cqp {

enum class TypeKind { Int, Qbit, Chan, Op };

struct Type {
    TypeKind kind;
    size_t arity = 0;  // Op only

    static Type integer() {
        return {TypeKind::Int};
    }
    static Type qbit() {
        return {TypeKind::Qbit};
    }
    static Type chan() {
        return {TypeKind::Chan};
    }
    static Type op(size_t n) {
        return {TypeKind::Op, n};
    }
};

std::string type_name(const Type &t);

using TypeEnv = std::map<std::string, Type>;

/// Gamma types variables, Sigma lists qubit names of the register, Phi types channel names.
struct InternalEnv {
    TypeEnv gamma;
    std::set<std::string> sigma;
    std::map<std::string, Type> phi;
};

/// Surface judgement. Parallel components must use disjoint qubits, except that a qubit may be
/// mentioned by several components when at most one of them can touch it without first receiving
/// (alternative listeners, as in the teleportation receiver). A sent qubit is gone from the
/// continuation, gate and measurement operands are distinct qubits of matching arity.
/// Integer literals and Int variables are accepted in channel position.
void typecheck_surface(const TypeEnv &env, const TermPtr &p);
/// Runtime judgement: qubit references may be register names listed in Sigma.
void typecheck_internal(const InternalEnv &env, const TermPtr &p);

/// Declared qubits as Qbit and declared channels as channels.
TypeEnv surface_env(const Config &c);
/// Sigma from the register, Phi from the channel list; a distribution types its measured
/// variable as Int and requires every case to share the register layout.
void typecheck_config(const Config &c);

}  // namespace qproc::cqp
