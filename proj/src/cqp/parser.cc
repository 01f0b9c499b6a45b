#include "qproc/cqp/parser.h"

#include <set>

#include "qproc/quantum/unitary.h"
#include "qproc/text/numeric.h"

namespace qproc::cqp {

using text::Token;
using text::TokenKind;
using text::TokenStream;

namespace {

const std::set<std::string> kKeywords = {"new", "qbit", "measure", "ok"};

TermPtr located(TermPtr p, const SourceLoc &loc) {
    Term t = *p;
    t.loc = loc;
    return std::make_shared<const Term>(std::move(t));
}

std::string binder_name(TokenStream &ts, const char *what) {
    Token t = ts.expect_name(what);
    if (t.kind == TokenKind::Ident && kKeywords.count(t.text)) {
        ts.fail_at(t, std::string("keyword used as ") + what);
    }
    return t.text;
}

std::string qubit_name(TokenStream &ts) {
    Token t = ts.expect_ident("a qubit name");
    if (kKeywords.count(t.text)) {
        ts.fail_at(t, "keyword used as a qubit name");
    }
    return t.text;
}

std::vector<std::string> qubit_list(TokenStream &ts) {
    std::vector<std::string> qs;
    do {
        qs.push_back(qubit_name(ts));
    } while (ts.accept(","));
    return qs;
}

TermPtr parse_unary(TokenStream &ts);

TermPtr parse_continuation(TokenStream &ts) {
    ts.expect(".");
    return parse_unary(ts);
}

TermPtr parse_unary(TokenStream &ts) {
    const Token start = ts.peek();
    if (ts.is("(")) {
        if (ts.peek(1).kind == TokenKind::Ident && (ts.peek(1).text == "new" || ts.peek(1).text == "qbit") &&
            ts.is(")", 3)) {
            ts.next();
            bool channel = ts.next().text == "new";
            std::string var = channel ? binder_name(ts, "a channel binder") : binder_name(ts, "a qubit binder");
            if (!channel && text::is_integer_literal(var)) {
                ts.fail_at(start, "qubit binders must be identifiers");
            }
            ts.expect(")");
            TermPtr body = parse_unary(ts);
            return located(channel ? new_chan(var, body) : new_qbit(var, body), start.loc);
        }
        if (ts.peek(1).kind == TokenKind::Ident && ts.is(":=", 2)) {
            ts.next();
            std::string var = binder_name(ts, "a measurement variable");
            ts.expect(":=");
            Token kw = ts.expect_ident("'measure'");
            if (kw.text != "measure") {
                ts.fail_at(kw, "expected 'measure'");
            }
            auto qs = qubit_list(ts);
            ts.expect(")");
            return located(measure(qs, var, parse_continuation(ts)), start.loc);
        }
        ts.next();
        TermPtr inner = parse_term(ts);
        ts.expect(")");
        return inner;
    }
    if (ts.accept("{")) {
        auto qs = qubit_list(ts);
        ts.expect("*=");
        Token gate = ts.expect_ident("a gate name");
        if (!quantum::builtin_gate(gate.text)) {
            throw Error(ErrorKind::UnknownGate, "unknown gate '" + gate.text + "'", gate.loc);
        }
        ts.expect("}");
        return located(trans(qs, gate.text, parse_continuation(ts)), start.loc);
    }
    if (start.kind == TokenKind::Ident && start.text == "ok") {
        ts.next();
        return located(success(), start.loc);
    }
    bool name_like = start.kind == TokenKind::Ident ||
                     (start.kind == TokenKind::Number && text::is_integer_literal(start.text));
    if (name_like && (ts.is("?", 1) || ts.is("!", 1))) {
        std::string chan = ts.next().text;
        if (kKeywords.count(chan)) {
            ts.fail_at(start, "keyword used as a channel name");
        }
        bool is_input = ts.next().text == "?";
        ts.expect("[");
        std::string arg = qubit_name(ts);
        ts.expect("]");
        TermPtr body = parse_continuation(ts);
        return located(is_input ? input(chan, arg, body) : output(chan, arg, body), start.loc);
    }
    if (start.kind == TokenKind::Number && start.text == "0") {
        ts.next();
        return located(nil(), start.loc);
    }
    ts.fail("expected a process");
}

std::vector<std::string> name_list(TokenStream &ts, bool allow_integers) {
    std::vector<std::string> names;
    if (ts.is(";")) {
        return names;
    }
    do {
        Token t = allow_integers ? ts.expect_name("a name") : ts.expect_ident("a name");
        names.push_back(t.text);
    } while (ts.accept(","));
    return names;
}

Token expect_keyword(TokenStream &ts, const char *kw) {
    if (ts.peek().kind != TokenKind::Ident || ts.peek().text != kw) {
        ts.fail(std::string("expected '") + kw + "'");
    }
    return ts.next();
}

}  // namespace

TermPtr parse_term(TokenStream &ts) {
    TermPtr left = parse_unary(ts);
    if (ts.accept("|")) {
        return par(left, parse_term(ts));
    }
    return left;
}

TermPtr parse_term(std::string_view source) {
    TokenStream ts(text::tokenize(source));
    TermPtr p = parse_term(ts);
    if (!ts.at_end()) {
        ts.fail("unexpected trailing input");
    }
    return p;
}

Config parse_cqp(std::string_view source) {
    TokenStream ts(text::tokenize(source));
    expect_keyword(ts, "qubits");
    auto qubits = name_list(ts, false);
    ts.expect(";");
    Token state_kw = expect_keyword(ts, "state");
    quantum::Vector amps = text::parse_ket_sum(ts, qubits.size());
    ts.expect(";");
    std::vector<std::string> channels;
    if (ts.peek().kind == TokenKind::Ident && ts.peek().text == "channels") {
        ts.next();
        channels = name_list(ts, true);
        ts.expect(";");
    }
    expect_keyword(ts, "process");
    TermPtr term = parse_term(ts);
    if (!ts.at_end()) {
        ts.fail("unexpected trailing input");
    }
    try {
        return Config::pure(quantum::StateVector(qubits, amps), channels, term);
    } catch (const Error &e) {
        throw Error(e.kind(), e.detail(), state_kw.loc);
    }
}

}  // namespace qproc::cqp
