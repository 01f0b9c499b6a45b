#include "qproc/cqp/typecheck.h"

#include <optional>

#include "qproc/quantum/unitary.h"
#include "qproc/text/lexer.h"

namespace qproc::cqp {

std::string type_name(const Type &t) {
    switch (t.kind) {
        case TypeKind::Int:
            return "Int";
        case TypeKind::Qbit:
            return "Qbit";
        case TypeKind::Chan:
            return "^[Qbit]";
        case TypeKind::Op:
            return "Op(" + std::to_string(t.arity) + ")";
    }
    return "?";
}

namespace {

struct Use {
    SourceLoc loc;
    bool guarded = false;  // every use sits below an input prefix
};

using Uses = std::map<std::string, Use>;

void add_use(Uses &uses, const std::string &q, const SourceLoc &loc) {
    auto &u = uses[q];
    u.loc = loc;
    u.guarded = false;
}

class Checker {
   public:
    Checker(bool internal, const InternalEnv &env) : internal_(internal), env_(env) {}

    Uses check(const TermPtr &p, TypeEnv &gamma) {
        switch (p->kind) {
            case TermKind::Nil:
            case TermKind::Success:
                return {};
            case TermKind::Par: {
                auto left = check(p->body, gamma);
                auto right = check(p->right, gamma);
                for (const auto &[q, use] : right) {
                    auto it = left.find(q);
                    if (it == left.end()) {
                        left.emplace(q, use);
                    } else if (!it->second.guarded && !use.guarded) {
                        throw Error(ErrorKind::SharedQubit, "qubit " + q + " is used by both parallel components",
                                    use.loc);
                    } else if (!use.guarded) {
                        it->second = use;
                    }
                }
                return left;
            }
            case TermKind::In: {
                channel(p->chan, gamma, p->loc);
                auto used = check_scoped(p->body, gamma, p->var, Type::qbit(), true);
                for (auto &[q, use] : used) {
                    use.guarded = true;
                }
                return used;
            }
            case TermKind::Out: {
                channel(p->chan, gamma, p->loc);
                qubit(p->qubit, gamma, p->loc);
                auto used = check(p->body, gamma);
                if (used.count(p->qubit)) {
                    throw Error(internal_ && !gamma.count(p->qubit) ? ErrorKind::UnknownQubitName : ErrorKind::UnknownName,
                                "qubit " + p->qubit + " is used after being sent", p->loc);
                }
                add_use(used, p->qubit, p->loc);
                return used;
            }
            case TermKind::Trans: {
                auto gate = quantum::builtin_gate(p->gate);
                if (!gate) {
                    throw Error(ErrorKind::UnknownGate, "unknown gate '" + p->gate + "'", p->loc);
                }
                if (gate->arity() != p->qubits.size()) {
                    throw Error(ErrorKind::ArityMismatch,
                                p->gate + " has type " + type_name(Type::op(gate->arity())) + " but is applied to " +
                                    std::to_string(p->qubits.size()) + " qubits",
                                p->loc);
                }
                operands(p->qubits, gamma, p->loc);
                auto used = check(p->body, gamma);
                for (const auto &q : p->qubits) {
                    add_use(used, q, p->loc);
                }
                return used;
            }
            case TermKind::Measure: {
                if (p->qubits.empty()) {
                    throw Error(ErrorKind::ArityMismatch, "measurement needs at least one qubit", p->loc);
                }
                operands(p->qubits, gamma, p->loc);
                auto used = check_scoped(p->body, gamma, p->var, Type::integer(), false);
                for (const auto &q : p->qubits) {
                    add_use(used, q, p->loc);
                }
                return used;
            }
            case TermKind::NewChan:
                return check_scoped(p->body, gamma, p->var, Type::chan(), false);
            case TermKind::NewQbit:
                return check_scoped(p->body, gamma, p->var, Type::qbit(), true);
        }
        return {};
    }

   private:
    Uses check_scoped(const TermPtr &body, TypeEnv &gamma, const std::string &var, Type t,
                                       bool binds_qubit) {
        auto saved = gamma.find(var);
        std::optional<Type> previous;
        if (saved != gamma.end()) {
            previous = saved->second;
        }
        gamma[var] = t;
        auto used = check(body, gamma);
        if (previous) {
            gamma[var] = *previous;
        } else {
            gamma.erase(var);
        }
        if (binds_qubit) {
            used.erase(var);
        }
        return used;
    }

    void channel(const std::string &c, const TypeEnv &gamma, const SourceLoc &loc) {
        auto it = gamma.find(c);
        if (it != gamma.end()) {
            if (it->second.kind == TypeKind::Chan || it->second.kind == TypeKind::Int) {
                return;
            }
            throw Error(ErrorKind::TypeMismatch, c + " has type " + type_name(it->second) + ", expected a channel", loc);
        }
        if (text::is_integer_literal(c)) {
            return;
        }
        if (internal_) {
            if (env_.phi.count(c)) {
                return;
            }
            if (env_.sigma.count(c)) {
                throw Error(ErrorKind::TypeMismatch, c + " is a qubit, expected a channel", loc);
            }
        }
        throw Error(ErrorKind::UnknownName, "unknown channel " + c, loc);
    }

    void qubit(const std::string &q, const TypeEnv &gamma, const SourceLoc &loc) {
        auto it = gamma.find(q);
        if (it != gamma.end()) {
            if (it->second.kind == TypeKind::Qbit) {
                return;
            }
            throw Error(ErrorKind::TypeMismatch, q + " has type " + type_name(it->second) + ", expected Qbit", loc);
        }
        if (internal_) {
            if (env_.sigma.count(q)) {
                return;
            }
            if (env_.phi.count(q)) {
                throw Error(ErrorKind::TypeMismatch, q + " is a channel, expected Qbit", loc);
            }
            throw Error(ErrorKind::UnknownQubitName, "qubit " + q + " is not in the register", loc);
        }
        throw Error(ErrorKind::UnknownName, "unknown qubit " + q, loc);
    }

    void operands(const std::vector<std::string> &qs, const TypeEnv &gamma, const SourceLoc &loc) {
        std::set<std::string> seen;
        for (const auto &q : qs) {
            qubit(q, gamma, loc);
            if (!seen.insert(q).second) {
                throw Error(ErrorKind::DuplicateQubitArg, "qubit " + q + " appears twice among the operands", loc);
            }
        }
    }

    bool internal_;
    const InternalEnv &env_;
};

}  // namespace

void typecheck_surface(const TypeEnv &env, const TermPtr &p) {
    InternalEnv unused;
    TypeEnv gamma = env;
    Checker(false, unused).check(p, gamma);
}

void typecheck_internal(const InternalEnv &env, const TermPtr &p) {
    TypeEnv gamma = env.gamma;
    Checker(true, env).check(p, gamma);
}

TypeEnv surface_env(const Config &c) {
    TypeEnv env;
    for (const auto &q : c.state().names()) {
        env[q] = Type::qbit();
    }
    for (const auto &ch : c.channels()) {
        env[ch] = Type::chan();
    }
    return env;
}

void typecheck_config(const Config &c) {
    InternalEnv env;
    env.sigma.insert(c.state().names().begin(), c.state().names().end());
    for (const auto &ch : c.channels()) {
        env.phi[ch] = Type::chan();
    }
    if (c.is_dist()) {
        for (const auto &k : c.cases()) {
            if (k.state.names() != c.state().names()) {
                throw Error(ErrorKind::InvalidState, "distribution cases disagree on the register layout");
            }
        }
        env.gamma[c.measured_var()] = Type::integer();
    }
    typecheck_internal(env, c.term());
}

}  // namespace qproc::cqp
