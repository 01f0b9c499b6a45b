#pragma once

#include <string_view>

#include "qproc/cqp/config.h"
#include "qproc/text/lexer.h"

namespace qproc::cqp {

/// `.cqp` file:
///   qubits q0, q1, q2;
///   state 1/sqrt(2)|100> + 1/sqrt(2)|111>;
///   channels c, d;          // optional
///   process <term>
Config parse_cqp(std::string_view source);

/// Term grammar, loosest first: `P | Q` (right-nested), then prefixes and binders:
/// `c?[x].P`, `c![q].P`, `{q1,q2 *= G}.P`, `(x := measure q1,q2).P`, `(new x)P`, `(qbit x)P`,
/// then `0`, `ok` and parentheses. Channels may be integer literals.
TermPtr parse_term(std::string_view source);
TermPtr parse_term(text::TokenStream &ts);

}  // namespace qproc::cqp
