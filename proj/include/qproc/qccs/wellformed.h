#pragma once

#include "qproc/qccs/term.h"

namespace qproc::qccs {

/// No-cloning conditions: an output's continuation no longer mentions the sent qubit (Cond1)
/// and parallel components do not both use a qubit outside an input prefix (Cond2); alternative
/// listeners may each mention the qubit they act on once a message arrives. Also resolves operators and
/// constants with their arities, requires constant bodies to use only their parameters and
/// the process to use only qubits of the state. Throws the first violation with its location.
void check_wellformed(const Definitions &defs, const Config &config);
void check_wellformed_term(const Definitions &defs, const TermPtr &p);

}  // namespace qproc::qccs
