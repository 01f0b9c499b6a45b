#pragma once

#include <string>

#include "qproc/cqp/config.h"

namespace qproc::cqp {

/// Representative of the congruence class: nested Par flattened, nil components dropped,
/// components sorted, bound names replaced by `%0, %1, ...` in traversal order. Channel binders
/// that are integer literals stay as written, since measurement outcomes refer to them.
TermPtr normal_form(const TermPtr &p);

/// Hash key of a configuration: register order and rounded amplitudes, the channel set and the
/// normal form of the term. Qubit names are kept as they are.
std::string config_key(const Config &c);

bool congruent_terms(const TermPtr &a, const TermPtr &b);
/// Congruence of configurations, including renaming register qubits position by position.
bool congruent(const Config &a, const Config &b, double tol = quantum::kDefaultTolerance);

}  // namespace qproc::cqp
