#include "qproc/qccs/printer.h"

#include "qproc/text/numeric.h"

namespace qproc::qccs {

namespace {

// Binding strength: a context asking for level L parenthesizes anything weaker.
enum Level { kPar = 0, kChoice = 1, kRestrict = 2, kUnary = 3 };

Level level_of(const TermPtr &p) {
    switch (p->kind) {
        case Kind::Par:
            return kPar;
        case Kind::Choice:
            return kChoice;
        case Kind::Restrict:
            return kRestrict;
        default:
            return kUnary;
    }
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (size_t k = 0; k < items.size(); ++k) {
        out += (k ? "," : "") + items[k];
    }
    return out;
}

void print(const TermPtr &p, Level context, std::string &out);

void print_continuation(const TermPtr &p, std::string &out) {
    print(p, kUnary, out);
}

void print_bool_at(const BoolPtr &b, bool atom, std::string &out) {
    switch (b->kind) {
        case BoolKind::True:
            out += "true";
            return;
        case BoolKind::False:
            out += "false";
            return;
        case BoolKind::TraceNonzero:
            out += "tr(" + b->op + "[" + join(b->qubits) + "]) != 0";
            return;
        case BoolKind::Not:
            out += "not ";
            print_bool_at(b->left, true, out);
            return;
        case BoolKind::And:
            if (atom) {
                out += "(";
            }
            print_bool_at(b->left, true, out);
            out += " and ";
            print_bool_at(b->right, false, out);
            if (atom) {
                out += ")";
            }
            return;
    }
}

void print(const TermPtr &p, Level context, std::string &out) {
    if (level_of(p) < context) {
        out += "(";
        print(p, kPar, out);
        out += ")";
        return;
    }
    switch (p->kind) {
        case Kind::Nil:
            out += "nil";
            return;
        case Kind::Success:
            out += "ok";
            return;
        case Kind::Tau:
            out += "tau.";
            print_continuation(p->body, out);
            return;
        case Kind::Oper:
            out += p->op + "[" + join(p->qubits) + "].";
            print_continuation(p->body, out);
            return;
        case Kind::In:
            out += p->chan + "?" + p->var + ".";
            print_continuation(p->body, out);
            return;
        case Kind::Out:
            out += p->chan + "!" + p->qubit + ".";
            print_continuation(p->body, out);
            return;
        case Kind::Choice:
            print(p->body, kRestrict, out);
            out += " + ";
            print(p->right, kChoice, out);
            return;
        case Kind::Par:
            print(p->body, kChoice, out);
            out += " | ";
            print(p->right, kPar, out);
            return;
        case Kind::Restrict:
            print(p->body, kRestrict, out);
            out += " \\ {" + join({p->restricted.begin(), p->restricted.end()}) + "}";
            return;
        case Kind::IfThen:
            out += "if ";
            print_bool_at(p->cond, false, out);
            out += " then ";
            print_continuation(p->body, out);
            return;
        case Kind::Call:
            out += p->op + "(" + join(p->qubits) + ")";
            return;
    }
}

std::string print_superop(const std::string &name, const quantum::SuperOperator &e) {
    std::string out = "superop " + name + "(" + std::to_string(e.arity()) + ") {\n";
    for (const auto &k : e.terms()) {
        out += std::string("  ") + (k.sign < 0 ? "-" : "+") + text::format_matrix(k.matrix) + ";\n";
    }
    return out + "}\n";
}

}  // namespace

std::string print_bool(const BoolPtr &b) {
    std::string out;
    print_bool_at(b, false, out);
    return out;
}

std::string print_term(const TermPtr &p) {
    std::string out;
    print(p, kPar, out);
    return out;
}

std::string print_rho(const Config &c) {
    size_t n = c.rho.num_qubits();
    if (!c.mixture || c.mixture->empty()) {
        return "matrix " + text::format_matrix(c.rho.entries());
    }
    std::string out;
    for (size_t k = 0; k < c.mixture->size(); ++k) {
        const auto &term = (*c.mixture)[k];
        if (k) {
            out += " + ";
        }
        if (term.weight != quantum::Complex(1, 0)) {
            out += text::format_complex(term.weight) + " * ";
        }
        out += "outer(" + text::format_ket_sum(term.ket, n) + ")";
    }
    return out;
}

std::string print_file(const Definitions &defs, const Config &c) {
    std::string out;
    for (const auto &[name, e] : defs.ops) {
        out += print_superop(name, e);
    }
    for (const auto &[name, def] : defs.consts) {
        out += "def " + name + "(" + join(def.params) + ") = " + print_term(def.body) + ";\n";
    }
    out += "qubits " + join(c.rho.names()) + ";\n";
    out += "rho = " + print_rho(c) + ";\n";
    out += "process " + print_term(c.term) + "\n";
    return out;
}

}  // namespace qproc::qccs
