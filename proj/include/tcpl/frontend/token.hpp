#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcpl/core/dataset.hpp"
#include "tcpl/core/errors.hpp"

namespace tcpl::frontend {

enum class TokenKind : std::uint8_t {
    Identifier,
    Keyword,
    Number,
    String,
    Operator,
    Newline,  // Python logical line end
    Indent,   // Python
    Dedent,   // Python
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t line = 0;
    /// Whitespace between the previous token and this one, comments elided.
    std::string leading;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_op(std::string_view t) const { return kind == TokenKind::Operator && text == t; }
    bool is_kw(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
    bool is_word() const { return kind == TokenKind::Identifier || kind == TokenKind::Keyword; }
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("ParseError at line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

/// Tokenizes source. Comments are dropped; string and character literals become
/// single String tokens. Python output carries Newline/Indent/Dedent tokens.
/// Throws ParseError on unterminated literals, unbalanced brackets, or bad indentation.
std::vector<Token> lex(const std::string& source, Language lang);

bool is_keyword(std::string_view word, Language lang);

}  // namespace tcpl::frontend
