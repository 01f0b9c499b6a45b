#pragma once

#include <string_view>

#include "qproc/qccs/term.h"
#include "qproc/text/lexer.h"

namespace qproc::qccs {

struct File {
    Definitions defs;
    Config config;
};

/// `.qccs` file:
///   superop Q(1) { +[[1, 0], [0, sqrt(2)]]; -[[0, 1], [0, 0]]; }     // any number
///   def A(x) = tau.A(x);                                              // any number
///   qubits q0, q1;
///   rho = outer(1/sqrt(2)|00> + 1/sqrt(2)|11>);   // or a weighted sum of outer(...), or matrix [[...]]
///   process <term>
/// The result has passed check_wellformed.
File parse_qccs(std::string_view source);

/// Term grammar, loosest first: `P | Q`, `P + Q` (both right-nested), postfix `P \ {c, d}`,
/// then `nil`, `ok`, `tau.P`, `OP[q, ...].P`, `new[x].P`, `c?x.P`, `c!q.P`, `if B then P`,
/// `A(q, ...)` and parentheses. B is `true`, `false`, `tr(OP[q, ...]) != 0`, `not B`, `B and B`.
TermPtr parse_term(std::string_view source);
TermPtr parse_term(text::TokenStream &ts);
BoolPtr parse_bool(text::TokenStream &ts);

}  // namespace qproc::qccs
