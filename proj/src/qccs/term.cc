#include "qproc/qccs/term.h"

#include <algorithm>

#include "qproc/quantum/unitary.h"
#include "qproc/text/lexer.h"

namespace qproc::qccs {

namespace {

TermPtr make(Term t) {
    return std::make_shared<const Term>(std::move(t));
}

BoolPtr make_bool(BoolExpr b) {
    return std::make_shared<const BoolExpr>(std::move(b));
}

bool binds_qubit(const Term &t) {
    return t.kind == Kind::In || (t.kind == Kind::Oper && t.op == kNewQubitOp);
}

const std::string &qubit_binder(const Term &t) {
    return t.kind == Kind::In ? t.var : t.qubits.front();
}

void collect_names(const BoolPtr &b, std::set<std::string> &out) {
    if (!b) {
        return;
    }
    out.insert(b->qubits.begin(), b->qubits.end());
    collect_names(b->left, out);
    collect_names(b->right, out);
}

void collect_names(const TermPtr &p, std::set<std::string> &out) {
    if (!p) {
        return;
    }
    for (const auto *s : {&p->chan, &p->var, &p->qubit}) {
        if (!s->empty()) {
            out.insert(*s);
        }
    }
    out.insert(p->qubits.begin(), p->qubits.end());
    out.insert(p->restricted.begin(), p->restricted.end());
    collect_names(p->cond, out);
    collect_names(p->body, out);
    collect_names(p->right, out);
}

std::string map_name(const std::map<std::string, std::string> &gamma, const std::string &name) {
    auto it = gamma.find(name);
    return it == gamma.end() ? name : it->second;
}

BoolPtr rename_bool(const BoolPtr &b, const std::map<std::string, std::string> &gamma) {
    if (!b || gamma.empty()) {
        return b;
    }
    BoolExpr out = *b;
    for (auto &q : out.qubits) {
        q = map_name(gamma, q);
    }
    out.left = rename_bool(b->left, gamma);
    out.right = rename_bool(b->right, gamma);
    return make_bool(std::move(out));
}

// Drops entries that the binder shadows or that do not touch free names of `body`.
std::map<std::string, std::string> relevant(const std::map<std::string, std::string> &gamma,
                                            const std::set<std::string> &free, const std::set<std::string> &bound) {
    std::map<std::string, std::string> out;
    for (const auto &[from, to] : gamma) {
        if (!bound.count(from) && free.count(from)) {
            out.emplace(from, to);
        }
    }
    return out;
}

TermPtr rename_channels_rec(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    if (gamma.empty()) {
        return p;
    }
    Term t = *p;
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
        case Kind::Call:
            return p;
        case Kind::In:
        case Kind::Out:
            t.chan = map_name(gamma, p->chan);
            t.body = rename_channels_rec(p->body, gamma);
            return make(std::move(t));
        case Kind::Choice:
        case Kind::Par:
            t.body = rename_channels_rec(p->body, gamma);
            t.right = rename_channels_rec(p->right, gamma);
            return make(std::move(t));
        case Kind::Restrict: {
            auto inner = relevant(gamma, free_channels(p->body), p->restricted);
            if (inner.empty()) {
                return p;
            }
            std::set<std::string> targets;
            for (const auto &[from, to] : inner) {
                targets.insert(to);
            }
            TermPtr body = p->body;
            std::set<std::string> renamed;
            std::set<std::string> taken = all_names(body);
            for (const auto &[from, to] : inner) {
                taken.insert(from);
                taken.insert(to);
            }
            taken.insert(p->restricted.begin(), p->restricted.end());
            for (const auto &name : p->restricted) {
                if (targets.count(name)) {
                    std::string fresh = text::fresh_variant(name, taken);
                    taken.insert(fresh);
                    body = rename_channels_rec(body, {{name, fresh}});
                    renamed.insert(fresh);
                } else {
                    renamed.insert(name);
                }
            }
            t.restricted = std::move(renamed);
            t.body = rename_channels_rec(body, inner);
            return make(std::move(t));
        }
        default:
            if (p->body) {
                t.body = rename_channels_rec(p->body, gamma);
            }
            return make(std::move(t));
    }
}

TermPtr rename_qubits_rec(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    if (gamma.empty()) {
        return p;
    }
    Term t = *p;
    if (binds_qubit(*p)) {
        const std::string &binder = qubit_binder(*p);
        auto inner = relevant(gamma, free_qubits(p->body), {binder});
        if (inner.empty()) {
            return p;
        }
        TermPtr body = p->body;
        bool captured = std::any_of(inner.begin(), inner.end(), [&](const auto &e) { return e.second == binder; });
        std::string name = binder;
        if (captured) {
            std::set<std::string> taken = all_names(body);
            for (const auto &[from, to] : inner) {
                taken.insert(from);
                taken.insert(to);
            }
            taken.insert(binder);
            name = text::fresh_variant(binder, taken);
            body = rename_qubits_rec(body, {{binder, name}});
        }
        if (p->kind == Kind::In) {
            t.var = name;
        } else {
            t.qubits = {name};
        }
        t.body = rename_qubits_rec(body, inner);
        return make(std::move(t));
    }
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
            return p;
        case Kind::Call:
            for (auto &q : t.qubits) {
                q = map_name(gamma, q);
            }
            return make(std::move(t));
        case Kind::Out:
            t.qubit = map_name(gamma, p->qubit);
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
        case Kind::Oper:
            for (auto &q : t.qubits) {
                q = map_name(gamma, q);
            }
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
        case Kind::IfThen:
            t.cond = rename_bool(p->cond, gamma);
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
        case Kind::Choice:
        case Kind::Par:
            t.body = rename_qubits_rec(p->body, gamma);
            t.right = rename_qubits_rec(p->right, gamma);
            return make(std::move(t));
        default:
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
    }
}

}  // namespace

BoolPtr bool_true() {
    static const BoolPtr kTrue = make_bool(BoolExpr{});
    return kTrue;
}

BoolPtr bool_false() {
    BoolExpr b;
    b.kind = BoolKind::False;
    static const BoolPtr kFalse = make_bool(b);
    return kFalse;
}

BoolPtr trace_nonzero(std::string op, std::vector<std::string> qubits) {
    BoolExpr b;
    b.kind = BoolKind::TraceNonzero;
    b.op = std::move(op);
    b.qubits = std::move(qubits);
    return make_bool(std::move(b));
}

BoolPtr bool_not(BoolPtr inner) {
    BoolExpr b;
    b.kind = BoolKind::Not;
    b.left = std::move(inner);
    return make_bool(std::move(b));
}

BoolPtr bool_and(BoolPtr left, BoolPtr right) {
    BoolExpr b;
    b.kind = BoolKind::And;
    b.left = std::move(left);
    b.right = std::move(right);
    return make_bool(std::move(b));
}

TermPtr nil() {
    static const TermPtr kNil = make(Term{});
    return kNil;
}

TermPtr success() {
    Term t;
    t.kind = Kind::Success;
    static const TermPtr kSuccess = make(t);
    return kSuccess;
}

TermPtr tau(TermPtr body) {
    Term t;
    t.kind = Kind::Tau;
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr oper(std::string op, std::vector<std::string> qubits, TermPtr body) {
    Term t;
    t.kind = Kind::Oper;
    t.op = std::move(op);
    t.qubits = std::move(qubits);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr new_qubit(std::string var, TermPtr body) {
    return oper(kNewQubitOp, {std::move(var)}, std::move(body));
}

TermPtr input(std::string chan, std::string var, TermPtr body) {
    Term t;
    t.kind = Kind::In;
    t.chan = std::move(chan);
    t.var = std::move(var);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr output(std::string chan, std::string qubit, TermPtr body) {
    Term t;
    t.kind = Kind::Out;
    t.chan = std::move(chan);
    t.qubit = std::move(qubit);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr choice(TermPtr left, TermPtr right) {
    Term t;
    t.kind = Kind::Choice;
    t.body = std::move(left);
    t.right = std::move(right);
    return make(std::move(t));
}

TermPtr par(TermPtr left, TermPtr right) {
    Term t;
    t.kind = Kind::Par;
    t.body = std::move(left);
    t.right = std::move(right);
    return make(std::move(t));
}

TermPtr restrict(TermPtr body, std::set<std::string> names) {
    Term t;
    t.kind = Kind::Restrict;
    t.body = std::move(body);
    t.restricted = std::move(names);
    return make(std::move(t));
}

TermPtr if_then(BoolPtr cond, TermPtr body) {
    Term t;
    t.kind = Kind::IfThen;
    t.cond = std::move(cond);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr call(std::string name, std::vector<std::string> args) {
    Term t;
    t.kind = Kind::Call;
    t.op = std::move(name);
    t.qubits = std::move(args);
    return make(std::move(t));
}

TermPtr par_all(const std::vector<TermPtr> &components) {
    if (components.empty()) {
        return nil();
    }
    TermPtr out = components.back();
    for (size_t k = components.size() - 1; k-- > 0;) {
        out = par(components[k], out);
    }
    return out;
}

TermPtr choice_all(const std::vector<TermPtr> &branches) {
    if (branches.empty()) {
        throw Error(ErrorKind::InvalidArity, "a choice needs at least one branch");
    }
    TermPtr out = branches.back();
    for (size_t k = branches.size() - 1; k-- > 0;) {
        out = choice(branches[k], out);
    }
    return out;
}

std::string expected_outcome_op(uint64_t i) {
    return "E" + std::to_string(i);
}

std::optional<uint64_t> parse_expected_outcome_op(const std::string &name) {
    if (name.size() < 2 || name[0] != 'E' || !text::is_integer_literal(std::string_view(name).substr(1))) {
        return std::nullopt;
    }
    return std::stoull(name.substr(1));
}

bool is_builtin_op(const std::string &name) {
    return name == kNewQubitOp || name == kMeasureOp || parse_expected_outcome_op(name) ||
           quantum::builtin_gate(name).has_value();
}

quantum::SuperOperator resolve_op(const Definitions &defs, const std::string &name, size_t arity,
                                  const SourceLoc &loc) {
    auto arity_error = [&](size_t expected) {
        return Error(ErrorKind::ArityMismatch,
                     name + " acts on " + std::to_string(expected) + " qubits but is applied to " + std::to_string(arity),
                     loc);
    };
    if (name == kNewQubitOp) {
        if (arity != 1) {
            throw arity_error(1);
        }
        return quantum::SuperOperator::new_qubit();
    }
    if (name == kMeasureOp) {
        return quantum::SuperOperator::meas_unknown(arity);
    }
    if (auto i = parse_expected_outcome_op(name)) {
        if (arity < 64 && *i >= (uint64_t{1} << arity)) {
            throw Error(ErrorKind::ArityMismatch,
                        "outcome " + std::to_string(*i) + " does not exist for " + std::to_string(arity) + " qubits", loc);
        }
        return quantum::SuperOperator::meas_expected(*i, arity);
    }
    if (auto gate = quantum::builtin_gate(name)) {
        if (gate->arity() != arity) {
            throw arity_error(gate->arity());
        }
        return quantum::SuperOperator::from_unitary(*gate);
    }
    auto it = defs.ops.find(name);
    if (it == defs.ops.end()) {
        throw Error(ErrorKind::UnresolvedName, "unknown operator " + name, loc);
    }
    if (it->second.arity() != arity) {
        throw arity_error(it->second.arity());
    }
    return it->second;
}

std::set<std::string> free_qubits(const BoolPtr &b) {
    std::set<std::string> out;
    collect_names(b, out);
    return out;
}

std::set<std::string> free_qubits(const TermPtr &p) {
    std::set<std::string> out;
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
            break;
        case Kind::Call:
            out.insert(p->qubits.begin(), p->qubits.end());
            break;
        case Kind::Tau:
        case Kind::Restrict:
            out = free_qubits(p->body);
            break;
        case Kind::Oper:
            out = free_qubits(p->body);
            if (p->op == kNewQubitOp) {
                out.erase(p->qubits.front());
            } else {
                out.insert(p->qubits.begin(), p->qubits.end());
            }
            break;
        case Kind::In:
            out = free_qubits(p->body);
            out.erase(p->var);
            break;
        case Kind::Out:
            out = free_qubits(p->body);
            out.insert(p->qubit);
            break;
        case Kind::Choice:
        case Kind::Par: {
            out = free_qubits(p->body);
            auto right = free_qubits(p->right);
            out.insert(right.begin(), right.end());
            break;
        }
        case Kind::IfThen:
            out = free_qubits(p->body);
            collect_names(p->cond, out);
            break;
    }
    return out;
}

std::set<std::string> free_channels(const TermPtr &p) {
    std::set<std::string> out;
    switch (p->kind) {
        case Kind::Nil:
        case Kind::Success:
        case Kind::Call:
            break;
        case Kind::In:
        case Kind::Out:
            out = free_channels(p->body);
            out.insert(p->chan);
            break;
        case Kind::Choice:
        case Kind::Par: {
            out = free_channels(p->body);
            auto right = free_channels(p->right);
            out.insert(right.begin(), right.end());
            break;
        }
        case Kind::Restrict:
            out = free_channels(p->body);
            for (const auto &n : p->restricted) {
                out.erase(n);
            }
            break;
        default:
            out = free_channels(p->body);
            break;
    }
    return out;
}

std::set<std::string> all_names(const TermPtr &p) {
    std::set<std::string> out;
    collect_names(p, out);
    return out;
}

TermPtr subst_channels(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    std::map<std::string, std::string> effective;
    for (const auto &[from, to] : gamma) {
        if (from != to) {
            effective.emplace(from, to);
        }
    }
    return rename_channels_rec(p, effective);
}

TermPtr subst_channel(const TermPtr &p, const std::string &from, const std::string &to) {
    return subst_channels(p, {{from, to}});
}

TermPtr subst_qubits(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    std::map<std::string, std::string> effective;
    for (const auto &[from, to] : gamma) {
        if (from != to) {
            effective.emplace(from, to);
        }
    }
    if (effective.empty()) {
        return p;
    }
    std::map<std::string, std::string> image_of;
    for (const auto &q : free_qubits(p)) {
        std::string image = map_name(effective, q);
        auto [it, inserted] = image_of.emplace(image, q);
        if (!inserted) {
            throw Error(ErrorKind::NoCloningViolation,
                        "renaming identifies qubits " + it->second + " and " + q + " as " + image);
        }
    }
    return rename_qubits_rec(p, effective);
}

TermPtr subst_qubit(const TermPtr &p, const std::string &from, const std::string &to) {
    return subst_qubits(p, {{from, to}});
}

bool same_bool(const BoolPtr &a, const BoolPtr &b) {
    if (!a || !b) {
        return !a && !b;
    }
    return a->kind == b->kind && a->op == b->op && a->qubits == b->qubits && same_bool(a->left, b->left) &&
           same_bool(a->right, b->right);
}

bool same_term(const TermPtr &a, const TermPtr &b) {
    if (!a || !b) {
        return !a && !b;
    }
    if (a == b) {
        return true;
    }
    return a->kind == b->kind && a->chan == b->chan && a->var == b->var && a->qubit == b->qubit && a->op == b->op &&
           a->qubits == b->qubits && a->restricted == b->restricted && same_bool(a->cond, b->cond) &&
           same_term(a->body, b->body) && same_term(a->right, b->right);
}

size_t term_size(const TermPtr &p) {
    if (!p) {
        return 0;
    }
    return 1 + term_size(p->body) + term_size(p->right);
}

quantum::DensityMatrix mixture_matrix(const std::vector<std::string> &names, const std::vector<MixtureTerm> &mixture) {
    auto dim = static_cast<Eigen::Index>(uint64_t{1} << names.size());
    quantum::Matrix m = quantum::Matrix::Zero(dim, dim);
    for (const auto &term : mixture) {
        if (term.ket.size() != dim) {
            throw Error(ErrorKind::InvalidState, "ket length does not match the " + std::to_string(names.size()) +
                                                     "-qubit register");
        }
        m += term.weight * term.ket * term.ket.adjoint();
    }
    return quantum::DensityMatrix(names, m);
}

}  // namespace qproc::qccs
