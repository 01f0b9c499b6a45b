#include "qproc/encode/encode.h"

#include <set>

#include "qproc/cqp/typecheck.h"

namespace qproc::encode {

qccs::TermPtr encode_term(const cqp::TermPtr &p) {
    using cqp::TermKind;
    switch (p->kind) {
        case TermKind::Nil:
            return qccs::nil();
        case TermKind::Success:
            return qccs::success();
        case TermKind::Par:
            return qccs::par(encode_term(p->body), encode_term(p->right));
        case TermKind::In:
            return qccs::input(p->chan, p->var, encode_term(p->body));
        case TermKind::Out:
            return qccs::output(p->chan, p->qubit, encode_term(p->body));
        case TermKind::Trans:
            return qccs::oper(p->gate, p->qubits, encode_term(p->body));
        case TermKind::Measure:
            return qccs::oper(qccs::kMeasureOp, p->qubits, enc_dist(p->qubits, p->var, encode_term(p->body)));
        case TermKind::NewChan:
            return qccs::tau(qccs::restrict(encode_term(p->body), {p->var}));
        case TermKind::NewQbit:
            return qccs::new_qubit(p->var, encode_term(p->body));
    }
    throw Error(ErrorKind::Syntax, "unknown term form", p->loc);
}

qccs::TermPtr enc_dist(const std::vector<std::string> &qubits, const std::string &var, const qccs::TermPtr &body) {
    if (std::set<std::string>(qubits.begin(), qubits.end()).size() != qubits.size()) {
        throw Error(ErrorKind::InvalidArity, "measured qubits must be distinct");
    }
    std::vector<qccs::TermPtr> branches;
    for (uint64_t i = 0; i < (uint64_t{1} << qubits.size()); ++i) {
        std::string op = qccs::expected_outcome_op(i);
        branches.push_back(qccs::if_then(qccs::trace_nonzero(op, qubits),
                                         qccs::oper(op, qubits, qccs::subst_channel(body, var, std::to_string(i)))));
    }
    return qccs::choice_all(branches);
}

EncodingOutput encode_config(const cqp::Config &c) {
    cqp::typecheck_config(c);
    EncodingOutput out;
    std::set<std::string> phi(c.channels().begin(), c.channels().end());
    auto wrap = [&](qccs::TermPtr t) { return phi.empty() ? t : qccs::restrict(std::move(t), phi); };
    const auto &names = c.state().names();
    std::vector<qccs::MixtureTerm> mixture;
    if (!c.is_dist()) {
        out.config.term = wrap(encode_term(c.term()));
        mixture.push_back({1.0, c.state().amplitudes()});
    } else {
        std::vector<std::string> measured(names.begin(), names.begin() + c.measured_count());
        out.config.term = wrap(enc_dist(measured, c.measured_var(), encode_term(c.term())));
        for (const auto &k : c.cases()) {
            if (k.probability > 0) {
                mixture.push_back({k.probability, k.state.reordered(names).amplitudes()});
            }
        }
    }
    out.config.rho = qccs::mixture_matrix(names, mixture);
    out.config.mixture = std::move(mixture);
    out.op_table = collect_ops(out.config.term);
    return out;
}

namespace {

void add_op(std::vector<OpUse> &table, const qccs::Definitions &defs, const std::string &name, size_t arity) {
    for (const auto &u : table) {
        if (u.name == name && u.arity == arity) {
            return;
        }
    }
    table.push_back({name, arity, qccs::resolve_op(defs, name, arity)});
}

void collect_bool(const qccs::BoolPtr &b, const qccs::Definitions &defs, std::vector<OpUse> &table) {
    if (!b) {
        return;
    }
    if (b->kind == qccs::BoolKind::TraceNonzero) {
        add_op(table, defs, b->op, b->qubits.size());
    }
    collect_bool(b->left, defs, table);
    collect_bool(b->right, defs, table);
}

void collect(const qccs::TermPtr &p, const qccs::Definitions &defs, std::vector<OpUse> &table) {
    if (!p) {
        return;
    }
    if (p->kind == qccs::Kind::Oper) {
        add_op(table, defs, p->op, p->qubits.size());
    }
    collect_bool(p->cond, defs, table);
    collect(p->body, defs, table);
    collect(p->right, defs, table);
}

}  // namespace

std::vector<OpUse> collect_ops(const qccs::TermPtr &p, const qccs::Definitions &defs) {
    std::vector<OpUse> table;
    collect(p, defs, table);
    return table;
}

}  // namespace qproc::encode
