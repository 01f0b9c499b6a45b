#include "qproc/text/lexer.h"

#include <cctype>

namespace qproc::text {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
}

bool digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    size_t k = 0;
    auto advance = [&](size_t count) {
        for (size_t j = 0; j < count; ++j) {
            if (src[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++k;
        }
    };
    while (k < src.size()) {
        char c = src[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && k + 1 < src.size() && src[k + 1] == '/') {
            while (k < src.size() && src[k] != '\n') {
                advance(1);
            }
            continue;
        }
        SourceLoc loc{line, col};
        if (ident_start(c)) {
            size_t len = 1;
            while (k + len < src.size() && ident_char(src[k + len])) {
                ++len;
            }
            out.push_back({TokenKind::Ident, std::string(src.substr(k, len)), loc});
            advance(len);
            continue;
        }
        if (digit(c)) {
            size_t len = 0;
            while (k + len < src.size() && digit(src[k + len])) {
                ++len;
            }
            if (k + len + 1 < src.size() && src[k + len] == '.' && digit(src[k + len + 1])) {
                ++len;
                while (k + len < src.size() && digit(src[k + len])) {
                    ++len;
                }
            }
            if (k + len < src.size() && (src[k + len] == 'e' || src[k + len] == 'E')) {
                size_t exp = len + 1;
                if (k + exp < src.size() && (src[k + exp] == '+' || src[k + exp] == '-')) {
                    ++exp;
                }
                if (k + exp < src.size() && digit(src[k + exp])) {
                    while (k + exp < src.size() && digit(src[k + exp])) {
                        ++exp;
                    }
                    len = exp;
                }
            }
            out.push_back({TokenKind::Number, std::string(src.substr(k, len)), loc});
            advance(len);
            continue;
        }
        static const char *kMulti[] = {":=", "*=", "!="};
        bool matched = false;
        for (const char *m : kMulti) {
            if (src.substr(k, 2) == m) {
                out.push_back({TokenKind::Punct, m, loc});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        static const std::string_view kSingle = "|?![]{}().,;*=+-/\\<>:";
        if (kSingle.find(c) != std::string_view::npos) {
            out.push_back({TokenKind::Punct, std::string(1, c), loc});
            advance(1);
            continue;
        }
        throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", loc);
    }
    out.push_back({TokenKind::End, "", SourceLoc{line, col}});
    return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
        tokens_.push_back({TokenKind::End, "", {}});
    }
}

const Token &TokenStream::peek(size_t ahead) const {
    size_t at = pos_ + ahead;
    return at < tokens_.size() ? tokens_[at] : tokens_.back();
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) {
        ++pos_;
    }
    return t;
}

bool TokenStream::is(std::string_view text, size_t ahead) const {
    const Token &t = peek(ahead);
    return t.kind != TokenKind::End && t.kind != TokenKind::Number && t.text == text;
}

bool TokenStream::accept(std::string_view text) {
    if (is(text)) {
        next();
        return true;
    }
    return false;
}

Token TokenStream::expect(std::string_view text) {
    if (!is(text)) {
        fail("expected '" + std::string(text) + "'");
    }
    return next();
}

Token TokenStream::expect_ident(std::string_view what) {
    if (peek().kind != TokenKind::Ident) {
        fail("expected " + std::string(what));
    }
    return next();
}

Token TokenStream::expect_name(std::string_view what) {
    const Token &t = peek();
    if (t.kind == TokenKind::Ident || (t.kind == TokenKind::Number && is_integer_literal(t.text))) {
        return next();
    }
    fail("expected " + std::string(what));
}

void TokenStream::fail(const std::string &message) const {
    fail_at(peek(), message);
}

void TokenStream::fail_at(const Token &token, const std::string &message) const {
    std::string found = token.kind == TokenKind::End ? "end of input" : "'" + token.text + "'";
    throw Error(ErrorKind::Syntax, message + ", found " + found, token.loc);
}

bool is_integer_literal(std::string_view name) {
    if (name.empty()) {
        return false;
    }
    for (char c : name) {
        if (!digit(c)) {
            return false;
        }
    }
    return true;
}

std::string fresh_variant(const std::string &base, const std::set<std::string> &taken) {
    std::string cand = base;
    if (!taken.count(cand)) {
        return cand;
    }
    if (is_integer_literal(cand)) {
        cand = "_" + cand;
    }
    while (taken.count(cand)) {
        cand += "'";
    }
    return cand;
}

}  // namespace qproc::text
