#pragma once

#include <string>

#include "qproc/quantum/state.h"
#include "qproc/text/lexer.h"

namespace qproc::text {

/// Complex expression: sums, products and quotients of numbers, `i`, `sqrt(...)`,
/// parentheses and unary minus. A number directly followed by `i` is imaginary.
quantum::Complex parse_complex_expr(TokenStream &ts);

/// Stops before a `*` that introduces a ket or a named operand, so `1/2 * |01>` leaves
/// `* |01>` unread.
quantum::Complex parse_complex_term(TokenStream &ts);

/// Sum of `[coef][*] |bits>` terms over `qubits` qubits. Repeated kets accumulate.
quantum::Vector parse_ket_sum(TokenStream &ts, size_t qubits);

/// `[[a, b], [c, d]]`; rows must be equally long.
quantum::Matrix parse_matrix_literal(TokenStream &ts);

/// Shortest text that reads back to the same double; negative zero prints as 0.
std::string format_real(double value);
/// "a", "bi" or "(a+bi)".
std::string format_complex(quantum::Complex value);
/// Inverse of parse_ket_sum; zero amplitudes are omitted.
std::string format_ket_sum(const quantum::Vector &amplitudes, size_t qubits);
std::string format_matrix(const quantum::Matrix &m);

std::string basis_label(uint64_t index, size_t qubits);

}  // namespace qproc::text
