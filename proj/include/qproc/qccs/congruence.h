#pragma once

#include <string>

#include "qproc/qccs/term.h"

namespace qproc::qccs {

/// Representative of the congruence class: parallel components flattened, nil dropped and
/// sorted; restrictions directly inside a composition extruded and merged (restricted names are
/// renamed apart first, so extrusion never captures); empty restrictions dropped; qubit binders
/// and restricted names renamed to %0, %1, ... top-down. Restricted names of a group are
/// interchangeable, and the least arrangement is chosen (above five names, the order of first
/// occurrence).
TermPtr normal_form(const TermPtr &p);

bool congruent_terms(const TermPtr &a, const TermPtr &b);

/// Hashable key: the normal form and the state with qubits in name order, rounded.
std::string config_key(const Config &c);

/// Same normal form and states equal within `tol`. When the registers use different names,
/// b's qubits are renamed positionally onto a's first.
bool congruent(const Config &a, const Config &b, double tol = quantum::kDefaultTolerance);

}  // namespace qproc::qccs
