#pragma once

#include <string>
#include <vector>

#include "qproc/qccs/term.h"

namespace qproc::qccs {

enum class LabelKind { Tau, Input, Output };

struct Label {
    LabelKind kind = LabelKind::Tau;
    std::string chan;
    std::string qubit;

    bool operator==(const Label &other) const = default;
};

/// "tau", "c?q" or "c!q".
std::string label_text(const Label &label);

struct StepOptions {
    double tolerance = quantum::kDefaultTolerance;
    /// Nested unfoldings of process constants allowed while deriving one step.
    size_t max_unfold = 64;
};

struct Transition {
    Label label;
    Config next;
    /// The axiom that fired, e.g. "Oper CNOT[q0,q1]", "Comm 0 q0", "Tau".
    std::string rule;
};

/// All labelled transitions. Input labels range over the qubits of the state that are not
/// free in the receiving context.
std::vector<Transition> lts_steps(const Config &c, const Definitions &defs, const StepOptions &options = {});
/// The tau-labelled transitions.
std::vector<Transition> reduce_steps(const Config &c, const Definitions &defs, const StepOptions &options = {});

bool eval_bool(const BoolPtr &b, const quantum::DensityMatrix &rho, const Definitions &defs,
               double tol = quantum::kDefaultTolerance);

/// Success not below a prefix or an unresolved conditional; bare choice branches count.
bool has_success_barb(const TermPtr &p, const Definitions &defs);
bool has_success_barb(const Config &c, const Definitions &defs);

}  // namespace qproc::qccs
