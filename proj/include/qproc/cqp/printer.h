#pragma once

#include <string>

#include "qproc/cqp/config.h"

namespace qproc::cqp {

/// Concrete syntax accepted by parse_term; right-nested Par prints without parentheses.
std::string print_term(const TermPtr &p);
/// "q0, q1 = 0.5|00> + ..." in the register's current order.
std::string print_state(const quantum::StateVector &state);
/// A pure configuration prints as a complete `.cqp` file; a distribution prints one line per case.
std::string print_config(const Config &c);

}  // namespace qproc::cqp
