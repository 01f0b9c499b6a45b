#include "qproc/criteria/systems.h"

#include "qproc/cqp/parser.h"
#include "qproc/cqp/semantics.h"
#include "qproc/encode/encode.h"
#include "qproc/qccs/parser.h"
#include "qproc/qccs/semantics.h"

namespace qproc::criteria {

qccs::Definitions counterexample_defs() {
    qccs::Definitions defs;
    defs.ops.emplace("Q", quantum::SuperOperator::damping_counterexample(1.0));
    return defs;
}

qccs::Config counterexample_system(const quantum::DensityMatrix &rho) {
    auto term = qccs::parse_term("Q[q].(if tr(E0[q]) != 0 then tau.ok + if tr(E1[q]) != 0 then tau.nil)");
    return {term, rho.renamed({{rho.names().front(), "q"}}), std::nullopt};
}

SeparationExample separation_example() {
    SeparationExample ex;
    ex.source = cqp::parse_cqp(
        "qubits q;\n"
        "state 1/sqrt(2)|0> + 1/sqrt(2)|1>;\n"
        "process (x := measure q).x![q].0 | (new y)0?[z].ok\n");
    for (auto &step : cqp::enumerate_steps(ex.source)) {
        if (step.rule == cqp::Rule::Measure) {
            ex.measured = step.next;
        }
    }
    ex.encoded_measured = encode::encode_config(ex.measured).config;
    auto start = encode::encode_config(ex.source).config;
    for (auto &t : qccs::reduce_steps(start, {})) {
        if (t.rule.rfind("Oper M[", 0) == 0) {
            ex.target_measured = t.next;
        }
    }
    return ex;
}

}  // namespace qproc::criteria
