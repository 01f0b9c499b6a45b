#pragma once

#include <string>
#include <vector>

#include "qproc/cqp/config.h"
#include "qproc/qccs/term.h"

namespace qproc::encode {

/// An operator occurring in a translation, with the number of qubits it acts on.
struct OpUse {
    std::string name;
    size_t arity = 0;
    quantum::SuperOperator op;
};

struct EncodingOutput {
    /// Always empty: the translation needs no process constants.
    qccs::Definitions defs;
    qccs::Config config;
    /// Every operator the term applies or tests, in first-occurrence order.
    std::vector<OpUse> op_table;
};

/// Clause by clause: channel actions and composition carry over, a gate becomes the operator
/// of the same name, `(new x)P` becomes `tau.([[P]] \ {x})`, `(qbit x)P` becomes `new[x].[[P]]`,
/// and a measurement becomes `M[qs]` followed by enc_dist. Qubit and channel names are kept.
qccs::TermPtr encode_term(const cqp::TermPtr &p);

/// The choice over outcomes i of `if tr(Ei[qs]) != 0 then Ei[qs].body{i/x}`. With no qubits the
/// single branch tests and applies E0 on the empty list, which is the identity.
/// Throws InvalidArity for repeated qubits.
qccs::TermPtr enc_dist(const std::vector<std::string> &qubits, const std::string &var, const qccs::TermPtr &body);

/// A pure configuration becomes `[[P]] \ phi` over the projector of its register; a distribution
/// becomes `enc_dist(measured qubits; x; [[P]]) \ phi` over the weighted sum of its cases. The
/// restriction is left out when phi is empty. Throws the source's type errors.
EncodingOutput encode_config(const cqp::Config &c);

std::vector<OpUse> collect_ops(const qccs::TermPtr &p, const qccs::Definitions &defs = {});

}  // namespace qproc::encode
