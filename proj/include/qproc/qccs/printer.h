#pragma once

#include <string>

#include "qproc/qccs/term.h"

namespace qproc::qccs {

std::string print_bool(const BoolPtr &b);
/// Parallel composition nests to the right without parentheses; choice likewise. Prefix
/// continuations that are sums, compositions or restrictions are parenthesized.
std::string print_term(const TermPtr &p);
std::string print_rho(const Config &c);
/// The file form read by parse_qccs. Only user-defined operators and constants are listed.
std::string print_file(const Definitions &defs, const Config &c);

}  // namespace qproc::qccs
