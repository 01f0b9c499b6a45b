#include "qproc/qccs/parser.h"

#include <cmath>

#include "qproc/qccs/wellformed.h"
#include "qproc/text/numeric.h"

namespace qproc::qccs {

using text::Token;
using text::TokenKind;
using text::TokenStream;

namespace {

const std::set<std::string> kKeywords = {"nil", "ok",      "tau",    "if",      "then",  "true",  "false",
                                         "not", "and",     "tr",     "def",     "superop", "qubits", "rho",
                                         "process", "outer", "matrix", "state"};

TermPtr located(TermPtr p, const SourceLoc &loc) {
    Term t = *p;
    t.loc = loc;
    return std::make_shared<const Term>(std::move(t));
}

std::string plain_name(TokenStream &ts, const char *what) {
    Token t = ts.expect_ident(what);
    if (kKeywords.count(t.text)) {
        ts.fail_at(t, std::string("keyword used as ") + what);
    }
    return t.text;
}

std::string channel_name(TokenStream &ts) {
    Token t = ts.expect_name("a channel name");
    if (t.kind == TokenKind::Ident && kKeywords.count(t.text)) {
        ts.fail_at(t, "keyword used as a channel name");
    }
    return t.text;
}

// Possibly empty list up to (not including) `close`.
std::vector<std::string> name_list(TokenStream &ts, std::string_view close, const char *what) {
    std::vector<std::string> names;
    if (ts.is(close)) {
        return names;
    }
    do {
        names.push_back(plain_name(ts, what));
    } while (ts.accept(","));
    return names;
}

bool is_channel_token(const Token &t) {
    return t.kind == TokenKind::Ident || (t.kind == TokenKind::Number && text::is_integer_literal(t.text));
}

TermPtr parse_unary(TokenStream &ts);

TermPtr parse_continuation(TokenStream &ts) {
    ts.expect(".");
    return parse_unary(ts);
}

BoolPtr parse_bool_atom(TokenStream &ts) {
    if (ts.accept("true")) {
        return bool_true();
    }
    if (ts.accept("false")) {
        return bool_false();
    }
    if (ts.accept("not")) {
        return bool_not(parse_bool_atom(ts));
    }
    if (ts.accept("(")) {
        BoolPtr b = parse_bool(ts);
        ts.expect(")");
        return b;
    }
    if (ts.accept("tr")) {
        ts.expect("(");
        std::string op = plain_name(ts, "an operator name");
        ts.expect("[");
        auto qubits = name_list(ts, "]", "a qubit name");
        ts.expect("]");
        ts.expect(")");
        ts.expect("!=");
        Token zero = ts.next();
        if (zero.kind != TokenKind::Number || std::stod(zero.text) != 0) {
            ts.fail_at(zero, "trace guards compare with 0");
        }
        return trace_nonzero(op, qubits);
    }
    ts.fail("expected a condition");
}

TermPtr parse_unary(TokenStream &ts) {
    const Token start = ts.peek();
    if (ts.accept("nil")) {
        return located(nil(), start.loc);
    }
    if (ts.accept("ok")) {
        return located(success(), start.loc);
    }
    if (ts.accept("tau")) {
        return located(tau(parse_continuation(ts)), start.loc);
    }
    if (ts.accept("if")) {
        BoolPtr cond = parse_bool(ts);
        ts.expect("then");
        return located(if_then(cond, parse_unary(ts)), start.loc);
    }
    if (ts.accept("(")) {
        TermPtr inner = parse_term(ts);
        ts.expect(")");
        return inner;
    }
    if (!is_channel_token(start)) {
        ts.fail("expected a process");
    }
    if (start.kind == TokenKind::Ident && kKeywords.count(start.text)) {
        ts.fail("unexpected keyword");
    }
    if (start.kind == TokenKind::Ident && ts.is("(", 1)) {
        ts.next();
        ts.next();
        auto args = name_list(ts, ")", "a qubit name");
        ts.expect(")");
        return located(call(start.text, args), start.loc);
    }
    if (start.kind == TokenKind::Ident && ts.is("[", 1)) {
        ts.next();
        ts.next();
        auto qubits = name_list(ts, "]", "a qubit name");
        ts.expect("]");
        if (start.text == kNewQubitOp && qubits.size() != 1) {
            ts.fail_at(start, "new binds exactly one qubit");
        }
        return located(oper(start.text, qubits, parse_continuation(ts)), start.loc);
    }
    std::string chan = channel_name(ts);
    if (ts.accept("?")) {
        std::string var = plain_name(ts, "a qubit binder");
        return located(input(chan, var, parse_continuation(ts)), start.loc);
    }
    if (ts.accept("!")) {
        std::string q = plain_name(ts, "a qubit name");
        return located(output(chan, q, parse_continuation(ts)), start.loc);
    }
    ts.fail("expected '?', '!', '[' or '(' after a name");
}

TermPtr parse_postfix(TokenStream &ts) {
    TermPtr p = parse_unary(ts);
    while (ts.is("\\")) {
        Token slash = ts.next();
        std::set<std::string> names;
        if (ts.accept("{")) {
            if (!ts.is("}")) {
                do {
                    names.insert(channel_name(ts));
                } while (ts.accept(","));
            }
            ts.expect("}");
        } else {
            names.insert(channel_name(ts));
        }
        p = located(restrict(p, std::move(names)), slash.loc);
    }
    return p;
}

TermPtr parse_choice(TokenStream &ts) {
    TermPtr left = parse_postfix(ts);
    if (ts.is("+")) {
        Token plus = ts.next();
        return located(choice(left, parse_choice(ts)), plus.loc);
    }
    return left;
}

quantum::SuperOperator parse_superop(TokenStream &ts, const std::string &name) {
    ts.expect("(");
    Token arity_token = ts.next();
    if (arity_token.kind != TokenKind::Number || !text::is_integer_literal(arity_token.text)) {
        ts.fail_at(arity_token, "expected the operator arity");
    }
    size_t arity = std::stoul(arity_token.text);
    ts.expect(")");
    ts.expect("{");
    std::vector<quantum::KrausTerm> terms;
    while (!ts.accept("}")) {
        int sign = 1;
        if (ts.accept("-")) {
            sign = -1;
        } else {
            ts.expect("+");
        }
        Token at = ts.peek();
        quantum::Matrix m = text::parse_matrix_literal(ts);
        auto dim = static_cast<Eigen::Index>(uint64_t{1} << arity);
        if (m.rows() != dim || m.cols() != dim) {
            ts.fail_at(at, "matrix of " + name + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        terms.push_back({sign, std::move(m)});
        ts.expect(";");
    }
    try {
        return quantum::SuperOperator::signed_kraus(name, arity, std::move(terms));
    } catch (const Error &e) {
        throw Error(e.kind(), e.detail(), arity_token.loc);
    }
}

std::vector<MixtureTerm> parse_mixture(TokenStream &ts, size_t qubits) {
    std::vector<MixtureTerm> out;
    bool first = true;
    while (true) {
        double sign = 1;
        if (ts.accept("-")) {
            sign = -1;
        } else if (!first && !ts.accept("+")) {
            break;
        } else if (first) {
            ts.accept("+");
        }
        quantum::Complex weight(1, 0);
        if (!ts.is("outer")) {
            weight = text::parse_complex_term(ts);
            ts.accept("*");
        }
        Token kw = ts.expect_ident("'outer'");
        if (kw.text != "outer") {
            ts.fail_at(kw, "expected 'outer'");
        }
        ts.expect("(");
        quantum::Vector ket = text::parse_ket_sum(ts, qubits);
        ts.expect(")");
        out.push_back({sign * weight, std::move(ket)});
        first = false;
    }
    return out;
}

void check_density(const quantum::DensityMatrix &rho, const SourceLoc &loc) {
    const auto &m = rho.entries();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian", loc);
    }
    if (rho.trace().real() > 1 + 1e-9) {
        throw Error(ErrorKind::InvalidState, "density matrix has trace above 1", loc);
    }
}

}  // namespace

BoolPtr parse_bool(TokenStream &ts) {
    BoolPtr left = parse_bool_atom(ts);
    if (ts.accept("and")) {
        return bool_and(left, parse_bool(ts));
    }
    return left;
}

TermPtr parse_term(TokenStream &ts) {
    TermPtr left = parse_choice(ts);
    if (ts.is("|")) {
        Token bar = ts.next();
        return located(par(left, parse_term(ts)), bar.loc);
    }
    return left;
}

TermPtr parse_term(std::string_view source) {
    TokenStream ts(text::tokenize(source));
    TermPtr p = parse_term(ts);
    if (!ts.at_end()) {
        ts.fail("unexpected input after the process");
    }
    return p;
}

File parse_qccs(std::string_view source) {
    TokenStream ts(text::tokenize(source));
    File file;
    while (true) {
        if (ts.accept("superop")) {
            Token name = ts.peek();
            std::string op = plain_name(ts, "an operator name");
            if (is_builtin_op(op) || file.defs.ops.count(op)) {
                ts.fail_at(name, "operator " + op + " is already defined");
            }
            file.defs.ops.emplace(op, parse_superop(ts, op));
        } else if (ts.accept("def")) {
            Token name = ts.peek();
            std::string constant = plain_name(ts, "a constant name");
            if (file.defs.consts.count(constant)) {
                ts.fail_at(name, "constant " + constant + " is already defined");
            }
            ts.expect("(");
            ConstDef def;
            def.params = name_list(ts, ")", "a parameter name");
            def.loc = name.loc;
            ts.expect(")");
            ts.expect("=");
            def.body = parse_term(ts);
            ts.expect(";");
            file.defs.consts.emplace(constant, std::move(def));
        } else {
            break;
        }
    }
    ts.accept("state");
    ts.expect("qubits");
    auto names = name_list(ts, ";", "a qubit name");
    ts.expect(";");
    Token rho_kw = ts.expect("rho");
    ts.expect("=");
    try {
        if (ts.accept("matrix")) {
            file.config.rho = quantum::DensityMatrix(names, text::parse_matrix_literal(ts));
        } else {
            auto mixture = parse_mixture(ts, names.size());
            file.config.rho = mixture_matrix(names, mixture);
            file.config.mixture = std::move(mixture);
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Syntax) {
            throw;
        }
        throw Error(e.kind(), e.detail(), rho_kw.loc);
    }
    check_density(file.config.rho, rho_kw.loc);
    ts.expect(";");
    ts.expect("process");
    file.config.term = parse_term(ts);
    if (!ts.at_end()) {
        ts.fail("unexpected input after the process");
    }
    check_wellformed(file.defs, file.config);
    return file;
}

}  // namespace qproc::qccs
