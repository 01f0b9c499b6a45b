#include "qproc/qccs/wellformed.h"

namespace qproc::qccs {

namespace {

std::string join(const std::set<std::string> &names) {
    std::string out;
    for (const auto &n : names) {
        out += (out.empty() ? "" : ", ") + n;
    }
    return out;
}

void check_distinct(const std::vector<std::string> &qubits, ErrorKind kind, const std::string &what,
                    const SourceLoc &loc) {
    std::set<std::string> seen;
    for (const auto &q : qubits) {
        if (!seen.insert(q).second) {
            throw Error(kind, "qubit " + q + " appears twice in " + what, loc);
        }
    }
}

void check_bool(const Definitions &defs, const BoolPtr &b, const SourceLoc &loc) {
    if (!b) {
        return;
    }
    if (b->kind == BoolKind::TraceNonzero) {
        check_distinct(b->qubits, ErrorKind::InvalidArity, "a guard", loc);
        resolve_op(defs, b->op, b->qubits.size(), loc);
    }
    check_bool(defs, b->left, loc);
    check_bool(defs, b->right, loc);
}

// Free qubits used without first receiving on a channel; uses under an input prefix are guarded.
std::set<std::string> unguarded_qubits(const TermPtr &p) {
    std::set<std::string> out;
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
        case Kind::In:
            return out;
        case Kind::Call:
            return {p->qubits.begin(), p->qubits.end()};
        case Kind::Out:
            out.insert(p->qubit);
            break;
        case Kind::Oper:
            if (p->op == kNewQubitOp) {
                out = unguarded_qubits(p->body);
                out.erase(p->qubits.front());
                return out;
            }
            out.insert(p->qubits.begin(), p->qubits.end());
            break;
        case Kind::IfThen:
            out = free_qubits(p->cond);
            break;
        default:
            break;
    }
    for (const auto &child : {p->body, p->right}) {
        if (child) {
            auto more = unguarded_qubits(child);
            out.insert(more.begin(), more.end());
        }
    }
    return out;
}

void check(const Definitions &defs, const TermPtr &p) {
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
            return;
        case Kind::Call: {
            auto it = defs.consts.find(p->op);
            if (it == defs.consts.end()) {
                throw Error(ErrorKind::UnresolvedName, "unknown process constant " + p->op, p->loc);
            }
            if (it->second.params.size() != p->qubits.size()) {
                throw Error(ErrorKind::ArityMismatch,
                            p->op + " takes " + std::to_string(it->second.params.size()) + " qubits", p->loc);
            }
            check_distinct(p->qubits, ErrorKind::NoCloningViolation, "the arguments of " + p->op, p->loc);
            return;
        }
        case Kind::Oper:
            if (p->op != kNewQubitOp) {
                check_distinct(p->qubits, ErrorKind::InvalidArity, "the targets of " + p->op, p->loc);
            }
            resolve_op(defs, p->op, p->qubits.size(), p->loc);
            break;
        case Kind::Out:
            if (free_qubits(p->body).count(p->qubit)) {
                throw Error(ErrorKind::NoCloningViolation,
                            "Cond1: qubit " + p->qubit + " is still used after being sent on " + p->chan, p->loc);
            }
            break;
        case Kind::Par: {
            auto left = unguarded_qubits(p->body);
            std::set<std::string> shared;
            for (const auto &q : unguarded_qubits(p->right)) {
                if (left.count(q)) {
                    shared.insert(q);
                }
            }
            if (!shared.empty()) {
                throw Error(ErrorKind::NoCloningViolation,
                            "Cond2: parallel components share qubit(s) " + join(shared), p->loc);
            }
            break;
        }
        case Kind::IfThen:
            check_bool(defs, p->cond, p->loc);
            break;
        default:
            break;
    }
    if (p->body) {
        check(defs, p->body);
    }
    if (p->right) {
        check(defs, p->right);
    }
}

}  // namespace

void check_wellformed_term(const Definitions &defs, const TermPtr &p) {
    check(defs, p);
}

void check_wellformed(const Definitions &defs, const Config &config) {
    for (const auto &[name, def] : defs.consts) {
        check_distinct(def.params, ErrorKind::NoCloningViolation, "the parameters of " + name, def.loc);
        check(defs, def.body);
        std::set<std::string> params(def.params.begin(), def.params.end());
        for (const auto &q : free_qubits(def.body)) {
            if (!params.count(q)) {
                throw Error(ErrorKind::UnboundQubit, "the body of " + name + " uses qubit " + q +
                                                         " which is not a parameter", def.loc);
            }
        }
    }
    check(defs, config.term);
    const auto &names = config.rho.names();
    std::set<std::string> known(names.begin(), names.end());
    for (const auto &q : free_qubits(config.term)) {
        if (!known.count(q)) {
            throw Error(ErrorKind::UnboundQubit, "qubit " + q + " is not part of the state", config.term->loc);
        }
    }
}

}  // namespace qproc::qccs
