#include "qproc/qccs/semantics.h"

#include <cmath>

namespace qproc::qccs {

std::string label_text(const Label &label) {
    switch (label.kind) {
        case LabelKind::Tau:
            return "tau";
        case LabelKind::Input:
            return label.chan + "?" + label.qubit;
        case LabelKind::Output:
            return label.chan + "!" + label.qubit;
    }
    return "?";
}

namespace {

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (size_t k = 0; k < items.size(); ++k) {
        out += (k ? "," : "") + items[k];
    }
    return out;
}

// A transition of a subterm; the state is shared unless an operator fired.
struct Derivation {
    Label label;
    TermPtr next;
    std::optional<quantum::DensityMatrix> rho;
    std::string rule;
};

TermPtr unfold(const Definitions &defs, const TermPtr &p) {
    const ConstDef &def = defs.consts.at(p->op);
    std::map<std::string, std::string> gamma;
    for (size_t k = 0; k < def.params.size(); ++k) {
        gamma[def.params[k]] = p->qubits[k];
    }
    return subst_qubits(def.body, gamma);
}

class Deriver {
   public:
    Deriver(const quantum::DensityMatrix &rho, const Definitions &defs, const StepOptions &options)
        : rho_(rho), defs_(defs), options_(options) {}

    std::vector<Derivation> derive(const TermPtr &p, size_t unfoldings = 0) {
        std::vector<Derivation> out;
        switch (p->kind) {
            case Kind::Nil:
            case Kind::Success:
                break;
            case Kind::Tau:
                out.push_back({{}, p->body, std::nullopt, "Tau"});
                break;
            case Kind::Oper:
                out.push_back(operate(p));
                break;
            case Kind::In: {
                auto busy = free_qubits(p);
                for (const auto &q : rho_.names()) {
                    if (!busy.count(q)) {
                        out.push_back({{LabelKind::Input, p->chan, q}, subst_qubit(p->body, p->var, q), std::nullopt,
                                       "Input"});
                    }
                }
                break;
            }
            case Kind::Out:
                out.push_back({{LabelKind::Output, p->chan, p->qubit}, p->body, std::nullopt, "Output"});
                break;
            case Kind::Choice:
                out = derive(p->body, unfoldings);
                for (auto &d : derive(p->right, unfoldings)) {
                    out.push_back(std::move(d));
                }
                break;
            case Kind::Par:
                compose(p, unfoldings, out);
                break;
            case Kind::Restrict:
                for (auto &d : derive(p->body, unfoldings)) {
                    if (d.label.kind == LabelKind::Tau || !p->restricted.count(d.label.chan)) {
                        d.next = restrict(d.next, p->restricted);
                        out.push_back(std::move(d));
                    }
                }
                break;
            case Kind::IfThen:
                if (eval_bool(p->cond, rho_, defs_, options_.tolerance)) {
                    out = derive(p->body, unfoldings);
                }
                break;
            case Kind::Call:
                if (unfoldings >= options_.max_unfold) {
                    throw Error(ErrorKind::UnguardedRecursion,
                                "constant " + p->op + " unfolds more than " + std::to_string(options_.max_unfold) +
                                    " times without an action",
                                p->loc);
                }
                out = derive(unfold(defs_, p), unfoldings + 1);
                break;
        }
        return out;
    }

   private:
    Derivation operate(const TermPtr &p) {
        if (p->op == kNewQubitOp) {
            std::string fresh = quantum::fresh_qubit_name(rho_.names());
            auto next = quantum::superop_apply(quantum::SuperOperator::new_qubit(), {fresh}, rho_, options_.tolerance);
            return {{}, subst_qubit(p->body, p->qubits.front(), fresh), std::move(next), "Oper new[" + fresh + "]"};
        }
        auto e = resolve_op(defs_, p->op, p->qubits.size(), p->loc);
        auto next = quantum::superop_apply(e, p->qubits, rho_, options_.tolerance);
        return {{}, p->body, std::move(next), "Oper " + p->op + "[" + join(p->qubits) + "]"};
    }

    void compose(const TermPtr &p, size_t unfoldings, std::vector<Derivation> &out) {
        auto left = derive(p->body, unfoldings);
        auto right = derive(p->right, unfoldings);
        auto left_fq = free_qubits(p->body);
        auto right_fq = free_qubits(p->right);
        for (const auto &d : left) {
            if (d.label.kind == LabelKind::Input && right_fq.count(d.label.qubit)) {
                continue;
            }
            out.push_back({d.label, par(d.next, p->right), d.rho, d.rule});
        }
        for (const auto &d : right) {
            if (d.label.kind == LabelKind::Input && left_fq.count(d.label.qubit)) {
                continue;
            }
            out.push_back({d.label, par(p->body, d.next), d.rho, d.rule});
        }
        for (const auto &l : left) {
            for (const auto &r : right) {
                bool l_sends = l.label.kind == LabelKind::Output && r.label.kind == LabelKind::Input;
                bool r_sends = l.label.kind == LabelKind::Input && r.label.kind == LabelKind::Output;
                if ((l_sends || r_sends) && l.label.chan == r.label.chan && l.label.qubit == r.label.qubit) {
                    out.push_back({{}, par(l.next, r.next), std::nullopt, "Comm " + l.label.chan + " " + l.label.qubit});
                }
            }
        }
    }

    const quantum::DensityMatrix &rho_;
    const Definitions &defs_;
    const StepOptions &options_;
};

bool barb(const TermPtr &p, const Definitions &defs, size_t unfoldings) {
    switch (p->kind) {
        case Kind::Success:
            return true;
        case Kind::Par:
        case Kind::Choice:
            return barb(p->body, defs, unfoldings) || barb(p->right, defs, unfoldings);
        case Kind::Restrict:
            return barb(p->body, defs, unfoldings);
        case Kind::Call: {
            auto it = defs.consts.find(p->op);
            return it != defs.consts.end() && unfoldings < 64 && barb(unfold(defs, p), defs, unfoldings + 1);
        }
        default:
            return false;
    }
}

}  // namespace

std::vector<Transition> lts_steps(const Config &c, const Definitions &defs, const StepOptions &options) {
    std::vector<Transition> out;
    for (auto &d : Deriver(c.rho, defs, options).derive(c.term)) {
        out.push_back({d.label, Config{d.next, d.rho ? std::move(*d.rho) : c.rho, std::nullopt}, std::move(d.rule)});
    }
    return out;
}

std::vector<Transition> reduce_steps(const Config &c, const Definitions &defs, const StepOptions &options) {
    auto all = lts_steps(c, defs, options);
    std::vector<Transition> out;
    for (auto &t : all) {
        if (t.label.kind == LabelKind::Tau) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

bool eval_bool(const BoolPtr &b, const quantum::DensityMatrix &rho, const Definitions &defs, double tol) {
    switch (b->kind) {
        case BoolKind::True:
            return true;
        case BoolKind::False:
            return false;
        case BoolKind::Not:
            return !eval_bool(b->left, rho, defs, tol);
        case BoolKind::And:
            return eval_bool(b->left, rho, defs, tol) && eval_bool(b->right, rho, defs, tol);
        case BoolKind::TraceNonzero: {
            auto e = resolve_op(defs, b->op, b->qubits.size());
            return std::abs(quantum::superop_apply_raw(e, b->qubits, rho).trace()) > tol;
        }
    }
    return false;
}

bool has_success_barb(const TermPtr &p, const Definitions &defs) {
    return barb(p, defs, 0);
}

bool has_success_barb(const Config &c, const Definitions &defs) {
    return barb(c.term, defs, 0);
}

}  // namespace qproc::qccs
