#include "qproc/text/numeric.h"

#include <charconv>
#include <cmath>

namespace qproc::text {

using quantum::Complex;
using quantum::Matrix;
using quantum::Vector;

namespace {

Complex parse_factor(TokenStream &ts);

Complex parse_primary(TokenStream &ts) {
    const Token &t = ts.peek();
    Complex value;
    if (t.kind == TokenKind::Number) {
        Token num = ts.next();
        double v = 0;
        auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), v);
        if (ec != std::errc() || ptr != num.text.data() + num.text.size()) {
            ts.fail_at(num, "malformed number");
        }
        value = Complex(v, 0);
        if (ts.peek().kind == TokenKind::Ident && ts.peek().text == "i") {
            ts.next();
            value = Complex(0, v);
        }
        return value;
    }
    if (t.kind == TokenKind::Ident && t.text == "i") {
        ts.next();
        return Complex(0, 1);
    }
    if (t.kind == TokenKind::Ident && t.text == "sqrt") {
        ts.next();
        ts.expect("(");
        Complex arg = parse_complex_expr(ts);
        ts.expect(")");
        return std::sqrt(arg);
    }
    if (ts.accept("(")) {
        value = parse_complex_expr(ts);
        ts.expect(")");
        return value;
    }
    ts.fail("expected a number");
}

Complex parse_factor(TokenStream &ts) {
    if (ts.accept("-")) {
        return -parse_factor(ts);
    }
    if (ts.accept("+")) {
        return parse_factor(ts);
    }
    return parse_primary(ts);
}

uint64_t parse_ket(TokenStream &ts, size_t qubits) {
    Token bar = ts.expect("|");
    std::string bits;
    if (ts.peek().kind == TokenKind::Number) {
        bits = ts.next().text;
    }
    ts.expect(">");
    if (bits.size() != qubits) {
        ts.fail_at(bar, "ket |" + bits + "> does not have " + std::to_string(qubits) + " bits");
    }
    uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            ts.fail_at(bar, "ket labels use only 0 and 1");
        }
        index = (index << 1) | static_cast<uint64_t>(c - '0');
    }
    return index;
}

// A ket or a named operand such as outer(...) after `*` ends the coefficient.
bool starts_operand(const TokenStream &ts, size_t ahead) {
    const Token &t = ts.peek(ahead);
    return ts.is("|", ahead) || (t.kind == TokenKind::Ident && t.text != "i" && t.text != "sqrt");
}

Complex clean_zero(Complex c) {
    return Complex(c.real() == 0 ? 0.0 : c.real(), c.imag() == 0 ? 0.0 : c.imag());
}

}  // namespace

Complex parse_complex_term(TokenStream &ts) {
    Complex value = parse_factor(ts);
    while (true) {
        if (ts.is("*") && !starts_operand(ts, 1)) {
            ts.next();
            value *= parse_factor(ts);
        } else if (ts.accept("/")) {
            value /= parse_factor(ts);
        } else {
            return value;
        }
    }
}

Complex parse_complex_expr(TokenStream &ts) {
    Complex value = parse_complex_term(ts);
    while (true) {
        if (ts.accept("+")) {
            value += parse_complex_term(ts);
        } else if (ts.accept("-")) {
            value -= parse_complex_term(ts);
        } else {
            return value;
        }
    }
}

Vector parse_ket_sum(TokenStream &ts, size_t qubits) {
    Vector amps = Vector::Zero(Eigen::Index{1} << qubits);
    bool first = true;
    while (true) {
        double sign = 1;
        if (ts.accept("-")) {
            sign = -1;
        } else if (!ts.accept("+") && !first) {
            break;
        }
        Complex coef(1, 0);
        if (!ts.is("|")) {
            coef = parse_complex_term(ts);
            ts.accept("*");
        }
        uint64_t index = parse_ket(ts, qubits);
        amps[static_cast<Eigen::Index>(index)] += sign * coef;
        first = false;
    }
    return amps;
}

Matrix parse_matrix_literal(TokenStream &ts) {
    std::vector<std::vector<Complex>> rows;
    ts.expect("[");
    do {
        ts.expect("[");
        std::vector<Complex> row;
        do {
            row.push_back(parse_complex_expr(ts));
        } while (ts.accept(","));
        ts.expect("]");
        if (!rows.empty() && row.size() != rows.front().size()) {
            ts.fail("matrix rows differ in length");
        }
        rows.push_back(std::move(row));
    } while (ts.accept(","));
    ts.expect("]");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

std::string format_real(double value) {
    if (value == 0) {
        return "0";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex(Complex value) {
    value = clean_zero(value);
    if (value.imag() == 0) {
        return format_real(value.real());
    }
    if (value.real() == 0) {
        return format_real(value.imag()) + "i";
    }
    std::string im = format_real(std::abs(value.imag()));
    return "(" + format_real(value.real()) + (value.imag() < 0 ? "-" : "+") + im + "i)";
}

std::string basis_label(uint64_t index, size_t qubits) {
    std::string bits(qubits, '0');
    for (size_t k = 0; k < qubits; ++k) {
        if (index & quantum::position_bit(qubits, k)) {
            bits[k] = '1';
        }
    }
    return bits;
}

std::string format_ket_sum(const Vector &amplitudes, size_t qubits) {
    std::string out;
    for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
        Complex c = clean_zero(amplitudes[k]);
        if (c == Complex(0, 0)) {
            continue;
        }
        bool negative_real = (c.imag() == 0 && c.real() < 0) || (c.real() == 0 && c.imag() < 0);
        if (!out.empty()) {
            out += negative_real ? " - " : " + ";
            if (negative_real) {
                c = -c;
            }
        } else if (negative_real) {
            out += "-";
            c = -c;
        }
        if (c != Complex(1, 0)) {
            out += format_complex(c);
        }
        out += "|" + basis_label(static_cast<uint64_t>(k), qubits) + ">";
    }
    return out.empty() ? "0|" + basis_label(0, qubits) + ">" : out;
}

std::string format_matrix(const Matrix &m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out += (j ? ", " : "") + format_complex(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace qproc::text
