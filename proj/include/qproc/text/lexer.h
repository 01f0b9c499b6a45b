#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qproc/error.h"

namespace qproc::text {

enum class TokenKind { Ident, Number, Punct, End };

struct Token {
    TokenKind kind;
    std::string text;
    SourceLoc loc;
};

/// Identifiers: [A-Za-z_#][A-Za-z0-9_#']*. Numbers: digits with optional fraction and exponent.
/// Multi-character punctuation: ":=", "*=", "!=". Comments run from "//" to end of line.
std::vector<Token> tokenize(std::string_view source);

class TokenStream {
   public:
    explicit TokenStream(std::vector<Token> tokens);

    const Token &peek(size_t ahead = 0) const;
    Token next();
    bool at_end() const {
        return peek().kind == TokenKind::End;
    }
    /// True when the next token is the given punctuation or keyword.
    bool is(std::string_view text, size_t ahead = 0) const;
    bool accept(std::string_view text);
    Token expect(std::string_view text);
    Token expect_ident(std::string_view what);
    /// Identifier or integer literal.
    Token expect_name(std::string_view what);
    [[noreturn]] void fail(const std::string &message) const;
    [[noreturn]] void fail_at(const Token &token, const std::string &message) const;

   private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

bool is_integer_literal(std::string_view name);

/// Name derived from `base` that avoids `taken`: identifiers get primes appended, integer
/// literals become `_n` first.
std::string fresh_variant(const std::string &base, const std::set<std::string> &taken);

}  // namespace qproc::text
