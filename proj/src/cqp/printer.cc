#include "qproc/cqp/printer.h"

#include "qproc/text/numeric.h"

namespace qproc::cqp {

namespace {

std::string join(const std::vector<std::string> &items, const char *sep) {
    std::string out;
    for (size_t k = 0; k < items.size(); ++k) {
        out += (k ? sep : "") + items[k];
    }
    return out;
}

void print_rec(const TermPtr &p, std::string &out);

// Continuations of prefixes and binders: a parallel composition needs parentheses.
void print_unary(const TermPtr &p, std::string &out) {
    if (p->kind == TermKind::Par) {
        out += "(";
        print_rec(p, out);
        out += ")";
    } else {
        print_rec(p, out);
    }
}

void print_rec(const TermPtr &p, std::string &out) {
    switch (p->kind) {
        case TermKind::Nil:
            out += "0";
            return;
        case TermKind::Success:
            out += "ok";
            return;
        case TermKind::Par:
            print_unary(p->body, out);
            out += " | ";
            print_rec(p->right, out);
            return;
        case TermKind::In:
            out += p->chan + "?[" + p->var + "].";
            break;
        case TermKind::Out:
            out += p->chan + "![" + p->qubit + "].";
            break;
        case TermKind::Trans:
            out += "{" + join(p->qubits, ",") + " *= " + p->gate + "}.";
            break;
        case TermKind::Measure:
            out += "(" + p->var + " := measure " + join(p->qubits, ",") + ").";
            break;
        case TermKind::NewChan:
            out += "(new " + p->var + ")";
            break;
        case TermKind::NewQbit:
            out += "(qbit " + p->var + ")";
            break;
    }
    print_unary(p->body, out);
}

}  // namespace

std::string print_term(const TermPtr &p) {
    std::string out;
    print_rec(p, out);
    return out;
}

std::string print_state(const quantum::StateVector &state) {
    std::string names = join(state.names(), ", ");
    return (names.empty() ? "" : names + " ") + "= " + text::format_ket_sum(state.amplitudes(), state.num_qubits());
}

std::string print_config(const Config &c) {
    if (!c.is_dist()) {
        std::string out = "qubits " + join(c.state().names(), ", ") + ";\n";
        out += "state " + text::format_ket_sum(c.state().amplitudes(), c.state().num_qubits()) + ";\n";
        if (!c.channels().empty()) {
            out += "channels " + join(c.channels(), ", ") + ";\n";
        }
        return out + "process " + print_term(c.term()) + "\n";
    }
    std::string out = "distribution over " + c.measured_var() + " (" + std::to_string(c.measured_count()) +
                      " measured)";
    if (!c.channels().empty()) {
        out += "; channels " + join(c.channels(), ", ");
    }
    out += "\n";
    for (size_t i = 0; i < c.cases().size(); ++i) {
        const auto &k = c.cases()[i];
        out += "  case " + std::to_string(i) + " p=" + text::format_real(k.probability) + ": ";
        out += k.state.is_zero_branch() ? "(zero branch)" : print_state(k.state);
        out += "; " + print_term(c.case_term(i)) + "\n";
    }
    return out;
}

}  // namespace qproc::cqp
