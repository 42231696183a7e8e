#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "tcpl/frontend/token.hpp"

namespace tcpl::frontend {

namespace {

const std::unordered_set<std::string_view> kJavaKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",    "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",      "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",   "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",    "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",  "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",    "volatile",
    "while",    "true",       "false",     "null",
};

const std::unordered_set<std::string_view> kPythonKeywords = {
    "False", "None",   "True",    "and",      "as",   "assert", "async", "await",
    "break", "class",  "continue", "def",     "del",  "elif",   "else",  "except",
    "finally", "for",  "from",    "global",   "if",   "import", "in",    "is",
    "lambda", "nonlocal", "not",  "or",       "pass", "raise",  "return", "try",
    "while", "with",   "yield",
};

// Longest first within each table.
constexpr std::array<std::string_view, 38> kJavaOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "<<", ">>", "+",
    "-",    "*",   "/",   "%",   "=",   "<",  ">",  "!",  "~",  "?",  ":",  "&",
};

constexpr std::array<std::string_view, 29> kPythonOperators = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "==", "!=", "<=", ">=", "<<", ">>",
    "+=",  "-=",  "*=",  "/=",  "%=",  "&=", "|=", "^=", "@=", "<>", "+",  "-",  "*",  "/",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

bool is_python_string_prefix(std::string_view word) {
    if (word.size() > 2) return false;
    std::string lower;
    for (char c : word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return lower == "r" || lower == "b" || lower == "u" || lower == "f" || lower == "rb" ||
           lower == "br" || lower == "fr" || lower == "rf";
}

class Lexer {
public:
    Lexer(const std::string& src, Language lang) : src_(src), lang_(lang) {}

    std::vector<Token> run() {
        while (pos_ < src_.size()) {
            if (lang_ == Language::Python && line_start_ && brackets_.empty()) {
                if (!handle_indentation()) continue;
            }
            step();
        }
        finish();
        return std::move(out_);
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    bool starts_with(std::string_view s) const { return std::string_view(src_).substr(pos_).starts_with(s); }

    void emit(TokenKind kind, std::string text, std::size_t line) {
        Token t;
        t.kind = kind;
        t.line = line;
        t.leading = gap_.empty() && gap_had_comment_ ? " " : gap_;
        gap_.clear();
        gap_had_comment_ = false;
        if (kind == TokenKind::Operator && text.size() == 1) track_bracket(text[0], line);
        t.text = std::move(text);
        out_.push_back(std::move(t));
    }

    void track_bracket(char c, std::size_t line) {
        if (c == '(' || c == '[' || c == '{') {
            brackets_.emplace_back(c, line);
            return;
        }
        if (c != ')' && c != ']' && c != '}') return;
        const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
        if (brackets_.empty() || brackets_.back().first != open) {
            throw ParseError(line, std::string("unbalanced brackets: unexpected '") + c + "'");
        }
        brackets_.pop_back();
    }

    // Returns false when the line was blank and consumed.
    bool handle_indentation() {
        std::size_t width = 0;
        std::size_t p = pos_;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
            width = src_[p] == '\t' ? (width / 8 + 1) * 8 : width + (src_[p] == ' ' ? 1 : 0);
            ++p;
        }
        const char c = p < src_.size() ? src_[p] : '\n';
        if (c == '\n' || c == '#' || c == '\r') {
            // Blank or comment-only line; indentation is irrelevant.
            gap_.append(src_, pos_, p - pos_);
            pos_ = p;
            if (c == '#') skip_line_comment();
            if (pos_ < src_.size() && src_[pos_] == '\r') ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '\n') {
                gap_.push_back('\n');
                ++pos_;
                ++line_;
            }
            return false;
        }
        gap_.append(src_, pos_, p - pos_);
        pos_ = p;
        line_start_ = false;
        if (width > indents_.back()) {
            indents_.push_back(width);
            emit(TokenKind::Indent, "", line_);
        } else {
            while (width < indents_.back()) {
                indents_.pop_back();
                emit(TokenKind::Dedent, "", line_);
            }
            if (width != indents_.back()) {
                throw ParseError(line_, "unindent does not match any outer indentation level");
            }
        }
        return true;
    }

    void skip_line_comment() {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        gap_had_comment_ = true;
    }

    void step() {
        const char c = peek();
        if (c == '\n') {
            ++pos_;
            if (lang_ == Language::Python && brackets_.empty()) {
                if (!out_.empty() && out_.back().kind != TokenKind::Newline &&
                    out_.back().kind != TokenKind::Indent && out_.back().kind != TokenKind::Dedent) {
                    emit(TokenKind::Newline, "", line_);
                }
                line_start_ = true;
                gap_.clear();
            } else {
                gap_.push_back('\n');
            }
            ++line_;
            return;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (c != '\r') gap_.push_back(c);
            ++pos_;
            return;
        }
        if (lang_ == Language::Python) {
            if (c == '#') {
                skip_line_comment();
                return;
            }
            if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
                gap_ += "\\\n";
                pos_ += peek(1) == '\r' ? 3 : 2;
                ++line_;
                return;
            }
        } else {
            if (starts_with("//")) {
                skip_line_comment();
                return;
            }
            if (starts_with("/*")) {
                const auto end = src_.find("*/", pos_ + 2);
                if (end == std::string::npos) throw ParseError(line_, "unterminated block comment");
                const auto newlines = std::count(src_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                                 src_.begin() + static_cast<std::ptrdiff_t>(end), '\n');
                line_ += static_cast<std::size_t>(newlines);
                if (newlines > 0) gap_.push_back('\n');
                pos_ = end + 2;
                gap_had_comment_ = true;
                return;
            }
        }
        if (c == '"' || c == '\'') {
            lex_string(pos_);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            lex_number();
            return;
        }
        if (is_ident_start(c) || static_cast<unsigned char>(c) >= 0x80) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || static_cast<unsigned char>(src_[pos_]) >= 0x80)) {
                ++pos_;
            }
            std::string word = src_.substr(start, pos_ - start);
            if (lang_ == Language::Python && (peek() == '"' || peek() == '\'') && is_python_string_prefix(word)) {
                lex_string(start);
                return;
            }
            const auto kind = is_keyword(word, lang_) ? TokenKind::Keyword : TokenKind::Identifier;
            emit(kind, std::move(word), line_);
            return;
        }
        lex_operator();
    }

    void lex_string(std::size_t start) {
        const std::size_t line = line_;
        const char quote = peek();
        const bool triple = peek(1) == quote && peek(2) == quote;
        // Java: "" is an empty string, """ starts a text block.
        bool raw = false;
        if (lang_ == Language::Python) {
            for (std::size_t i = start; i < pos_; ++i) raw |= (src_[i] == 'r' || src_[i] == 'R');
        }
        pos_ += triple ? 3 : 1;
        while (true) {
            if (pos_ >= src_.size()) throw ParseError(line, "unterminated string literal");
            const char c = src_[pos_];
            if (c == '\\') {
                if (peek(1) == '\n') ++line_;
                pos_ += 2;
                continue;
            }
            if (c == '\n') {
                if (!triple) throw ParseError(line, "unterminated string literal");
                ++line_;
                ++pos_;
                continue;
            }
            if (c == quote) {
                if (!triple) {
                    ++pos_;
                    break;
                }
                if (peek(1) == quote && peek(2) == quote) {
                    pos_ += 3;
                    break;
                }
            }
            ++pos_;
        }
        (void)raw;
        emit(TokenKind::String, src_.substr(start, pos_ - start), line);
    }

    void lex_number() {
        const std::size_t start = pos_;
        const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                ++pos_;
                continue;
            }
            if (c == '.' && lang_ == Language::Java && !hex) {
                // 1. and 1.f are valid Java literals
                ++pos_;
                continue;
            }
            if ((c == '+' || c == '-') && !hex && pos_ > start &&
                (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E')) {
                ++pos_;
                continue;
            }
            break;
        }
        emit(TokenKind::Number, src_.substr(start, pos_ - start), line_);
    }

    void lex_operator() {
        auto try_table = [&](auto const& table) -> bool {
            for (std::string_view op : table) {
                if (starts_with(op)) {
                    pos_ += op.size();
                    emit(TokenKind::Operator, std::string(op), line_);
                    return true;
                }
            }
            return false;
        };
        if (lang_ == Language::Java ? try_table(kJavaOperators) : try_table(kPythonOperators)) return;
        emit(TokenKind::Operator, std::string(1, src_[pos_]), line_);
        ++pos_;
    }

    void finish() {
        if (!brackets_.empty()) {
            throw ParseError(brackets_.back().second,
                             std::string("unbalanced brackets: '") + brackets_.back().first + "' is never closed");
        }
        if (lang_ == Language::Python) {
            if (!out_.empty() && out_.back().kind != TokenKind::Newline && out_.back().kind != TokenKind::Dedent) {
                emit(TokenKind::Newline, "", line_);
            }
            while (indents_.size() > 1) {
                indents_.pop_back();
                emit(TokenKind::Dedent, "", line_);
            }
        }
        emit(TokenKind::End, "", line_);
    }

    const std::string& src_;
    Language lang_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::string gap_;
    bool gap_had_comment_ = false;
    std::vector<Token> out_;
    std::vector<std::pair<char, std::size_t>> brackets_;
    std::vector<std::size_t> indents_{0};
    bool line_start_ = true;
};

}  // namespace

bool is_keyword(std::string_view word, Language lang) {
    return lang == Language::Java ? kJavaKeywords.contains(word) : kPythonKeywords.contains(word);
}

std::vector<Token> lex(const std::string& source, Language lang) {
    return Lexer(source, lang).run();
}

}  // namespace tcpl::frontend
