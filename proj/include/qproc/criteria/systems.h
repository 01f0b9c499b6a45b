#pragma once

#include "qproc/cqp/config.h"
#include "qproc/qccs/term.h"

namespace qproc::criteria {

/// Definitions holding the signed operator Q of the impossibility argument.
qccs::Definitions counterexample_defs();
/// `Q[q].(if tr(E0[q]) != 0 then tau.ok + if tr(E1[q]) != 0 then tau.nil)` over a one-qubit state.
qccs::Config counterexample_system(const quantum::DensityMatrix &rho);

/// Measurement under parallel composition: a qubit in |+> measured by one component while a
/// second component waits on channel 0 behind a restriction.
struct SeparationExample {
    cqp::Config source;
    /// The source after its measurement step.
    cqp::Config measured;
    /// Translation of `measured`: the outcome choice encloses both components.
    qccs::Config encoded_measured;
    /// The translation of `source` after its measurement step: the choice stays with the
    /// measuring component.
    qccs::Config target_measured;
};

SeparationExample separation_example();

}  // namespace qproc::criteria
