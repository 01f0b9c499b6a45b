#pragma once

#include <cstdint>

#include "qproc/cqp/config.h"

namespace qproc::criteria {

/// Random well-typed pure configuration with at most `max_qubits` qubits, counting those the
/// term allocates, and term depth at most `max_depth`. Parallel components split the qubits
/// they own; a sent qubit is dropped from the sender's continuation. Deterministic per seed;
/// a smaller `max_depth` shrinks the term.
cqp::Config gen_config(uint64_t seed, size_t max_qubits = 4, size_t max_depth = 6);

}  // namespace qproc::criteria
