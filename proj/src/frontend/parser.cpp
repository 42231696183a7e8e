#include <algorithm>
#include <cctype>
#include <string_view>
#include <unordered_set>

#include "tcpl/frontend/idioms.hpp"
#include "tcpl/frontend/ir.hpp"

namespace tcpl::frontend {

Fragment make_fragment(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    Fragment f;
    for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind == TokenKind::Newline || t.kind == TokenKind::Indent ||
            t.kind == TokenKind::Dedent || t.kind == TokenKind::End) {
            continue;
        }
        if (!f.tokens.empty()) f.text += t.leading;
        f.text += t.text;
        f.tokens.push_back(t);
    }
    return f;
}

Fragment fragment_from_text(const std::string& text, Language lang) {
    auto toks = lex(text, lang);
    return make_fragment(toks, 0, toks.size());
}

std::string_view to_string(StmtKind k) {
    switch (k) {
        case StmtKind::ForLoop: return "for";
        case StmtKind::WhileLoop: return "while";
        case StmtKind::Call: return "call";
        case StmtKind::Assign: return "assign";
        case StmtKind::Return: return "return";
        case StmtKind::SortCall: return "sort";
        case StmtKind::Other: return "other";
        case StmtKind::Compound: return "compound";
        case StmtKind::FunctionDef: return "def";
    }
    return "other";
}

namespace {

bool is_open(const Token& t) { return t.kind == TokenKind::Operator && (t.text == "(" || t.text == "[" || t.text == "{"); }
bool is_close(const Token& t) { return t.kind == TokenKind::Operator && (t.text == ")" || t.text == "]" || t.text == "}"); }

// Index of the bracket matching the opener at `open`.
std::size_t match_bracket(const std::vector<Token>& toks, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < toks.size(); ++i) {
        if (is_open(toks[i])) ++depth;
        else if (is_close(toks[i]) && --depth == 0) return i;
    }
    return toks.size();
}

// Splits [begin, end) at depth-0 commas.
std::vector<std::pair<std::size_t, std::size_t>> split_commas(const std::vector<Token>& toks, std::size_t begin,
                                                              std::size_t end, bool angle_brackets = false) {
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    int depth = 0;
    std::size_t start = begin;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& t = toks[i];
        if (is_open(t)) ++depth;
        else if (is_close(t)) --depth;
        else if (angle_brackets && t.kind == TokenKind::Operator) {
            if (t.text == "<") ++depth;
            else if (t.text == ">") --depth;
            else if (t.text == ">>") depth -= 2;
            else if (t.text == ">>>") depth -= 3;
        }
        if (depth == 0 && t.is_op(",")) {
            parts.emplace_back(start, i);
            start = i + 1;
        }
    }
    if (start < end) parts.emplace_back(start, end);
    return parts;
}

bool has_assignment_op(const Fragment& f) {
    static const std::unordered_set<std::string_view> ops = {
        "=", "+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "@=", ":=",
    };
    int depth = 0;
    for (const auto& t : f.tokens) {
        if (is_open(t)) ++depth;
        else if (is_close(t)) --depth;
        else if (t.kind == TokenKind::Operator) {
            if (t.text == "++" || t.text == "--") return true;
            if (depth == 0 && ops.contains(t.text)) return true;
            if (t.text == ":=") return true;
        }
    }
    return false;
}

StmtKind classify_leaf(const Fragment& f, Language lang) {
    if (f.tokens.empty()) return StmtKind::Other;
    if (f.tokens.front().is_kw("return")) return StmtKind::Return;
    const auto calls = find_calls(f);
    for (const auto& c : calls) {
        if (is_sort_call(c, lang)) return StmtKind::SortCall;
    }
    if (has_assignment_op(f)) return StmtKind::Assign;
    if (!calls.empty()) return StmtKind::Call;
    return StmtKind::Other;
}

void collect_calls(const StatementBlock& block, std::vector<CallSite>& out) {
    walk(block, [&](const Statement& s, std::size_t) {
        if (s.kind == StmtKind::FunctionDef) return;
        auto add = [&](const Fragment& f) {
            auto calls = find_calls(f);
            out.insert(out.end(), calls.begin(), calls.end());
        };
        if (s.loop) {
            add(s.loop->init);
            add(s.loop->condition);
            add(s.loop->update);
            add(s.loop->iterable);
        } else {
            add(s.text);
        }
    });
}

class Parser {
public:
    Parser(std::vector<Token> tokens, Language lang) : toks_(std::move(tokens)), lang_(lang) {
        ir_.language = lang;
    }

    StructuralIR run() {
        if (lang_ == Language::Python) {
            while (!at_end()) {
                if (cur().kind == TokenKind::Indent) throw ParseError(cur().line, "unexpected indent");
                if (cur().kind == TokenKind::Dedent || cur().kind == TokenKind::Newline) {
                    ++pos_;
                    continue;
                }
                parse_py_statement(ir_.top_level, std::nullopt);
            }
        } else {
            while (!at_end()) parse_java_member(ir_.top_level, false, std::nullopt);
        }
        return std::move(ir_);
    }

private:
    const Token& cur() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
    const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
    bool at_end() const { return cur().kind == TokenKind::End; }

    std::size_t prev_line() const { return pos_ == 0 ? cur().line : at(pos_ - 1).line; }

    void expect_op(std::string_view op) {
        if (!cur().is_op(op)) {
            throw ParseError(cur().line, "expected '" + std::string(op) + "' but found '" + cur().text + "'");
        }
        ++pos_;
    }

    std::size_t add_function(FunctionUnit fn) {
        ir_.functions.push_back(std::move(fn));
        return ir_.functions.size() - 1;
    }

    void finish_function(std::size_t idx, StatementBlock body, std::size_t line_end) {
        auto& fn = ir_.functions[idx];
        fn.body = std::move(body);
        fn.line_end = line_end;
        collect_calls(fn.body, fn.call_sites);
    }

    Statement function_placeholder(std::size_t idx) {
        Statement s;
        s.kind = StmtKind::FunctionDef;
        s.function_index = idx;
        s.line_begin = ir_.functions[idx].line_begin;
        s.line_end = ir_.functions[idx].line_end;
        s.text = ir_.functions[idx].header;
        return s;
    }

    // ---------------------------------------------------------------- Python

    std::size_t py_line_end(std::size_t from) const {
        std::size_t i = from;
        while (at(i).kind != TokenKind::Newline && at(i).kind != TokenKind::End) ++i;
        return i;
    }

    // Position of the header-terminating ':' on the logical line starting at `from`.
    std::size_t py_header_colon(std::size_t from) const {
        int depth = 0;
        int lambdas = 0;
        for (std::size_t i = from; i < toks_.size(); ++i) {
            const auto& t = toks_[i];
            if (t.kind == TokenKind::Newline || t.kind == TokenKind::End) break;
            if (is_open(t)) ++depth;
            else if (is_close(t)) --depth;
            else if (depth == 0 && t.is_kw("lambda")) ++lambdas;
            else if (depth == 0 && t.is_op(":")) {
                if (lambdas > 0) {
                    --lambdas;
                    continue;
                }
                return i;
            }
        }
        throw ParseError(at(from).line, "expected ':' after '" + at(from).text + "' header");
    }

    bool py_is_compound_start() const {
        const auto& t = cur();
        if (t.kind == TokenKind::Keyword) {
            static const std::unordered_set<std::string_view> kws = {
                "if", "elif", "else", "for", "while", "try", "except", "finally", "with", "def", "class",
            };
            return kws.contains(t.text);
        }
        // Soft keywords: `match x:` / `case y:` are compound only when the line ends with ':'.
        if (t.kind == TokenKind::Identifier && (t.text == "match" || t.text == "case") &&
            at(pos_ + 1).kind != TokenKind::Operator) {
            const auto end = py_line_end(pos_);
            return end > pos_ + 1 && at(end - 1).is_op(":");
        }
        return false;
    }

    StatementBlock parse_py_suite(std::optional<std::size_t> fn) {
        StatementBlock block;
        if (cur().kind == TokenKind::Newline) {
            ++pos_;
            if (cur().kind != TokenKind::Indent) throw ParseError(cur().line, "expected an indented block");
            ++pos_;
            while (cur().kind != TokenKind::Dedent && !at_end()) {
                if (cur().kind == TokenKind::Newline) {
                    ++pos_;
                    continue;
                }
                if (cur().kind == TokenKind::Indent) throw ParseError(cur().line, "unexpected indent");
                parse_py_statement(block, fn);
            }
            if (cur().kind == TokenKind::Dedent) ++pos_;
            return block;
        }
        parse_py_simple_line(block);
        return block;
    }

    void parse_py_simple_line(StatementBlock& block) {
        const std::size_t end = py_line_end(pos_);
        int depth = 0;
        std::size_t start = pos_;
        for (std::size_t i = pos_; i <= end; ++i) {
            const auto& t = at(i);
            if (is_open(t)) ++depth;
            else if (is_close(t)) --depth;
            if (i == end || (depth == 0 && t.is_op(";"))) {
                if (i > start) block.statements.push_back(py_leaf(start, i));
                start = i + 1;
            }
        }
        pos_ = end;
        if (cur().kind == TokenKind::Newline) ++pos_;
    }

    Statement py_leaf(std::size_t begin, std::size_t end) {
        Statement s;
        s.text = make_fragment(toks_, begin, end);
        s.kind = classify_leaf(s.text, lang_);
        s.line_begin = at(begin).line;
        s.line_end = at(end - 1).line;
        return s;
    }

    void parse_py_statement(StatementBlock& block, std::optional<std::size_t> fn) {
        if (cur().is_kw("async") && (at(pos_ + 1).is_kw("def") || at(pos_ + 1).is_kw("for") ||
                                     at(pos_ + 1).is_kw("with"))) {
            ++pos_;
        }
        if (cur().is_op("@")) {
            const auto end = py_line_end(pos_);
            block.statements.push_back(py_leaf(pos_, end));
            pos_ = end;
            if (cur().kind == TokenKind::Newline) ++pos_;
            return;
        }
        if (!py_is_compound_start()) {
            parse_py_simple_line(block);
            return;
        }
        const std::size_t start = pos_;
        const std::size_t line = cur().line;
        const std::size_t colon = py_header_colon(pos_);
        const Token head = cur();

        if (head.is_kw("def")) {
            FunctionUnit unit;
            if (at(start + 1).kind != TokenKind::Identifier) throw ParseError(line, "expected function name");
            unit.name = at(start + 1).text;
            unit.header = make_fragment(toks_, start, colon);
            unit.line_begin = line;
            unit.parent = fn;
            if (at(start + 2).is_op("(")) {
                const auto close = match_bracket(toks_, start + 2);
                for (auto [b, e] : split_commas(toks_, start + 3, close)) {
                    for (std::size_t i = b; i < e; ++i) {
                        if (toks_[i].kind == TokenKind::Identifier) {
                            unit.params.push_back(toks_[i].text);
                            break;
                        }
                    }
                }
            }
            const auto idx = add_function(std::move(unit));
            pos_ = colon + 1;
            auto body = parse_py_suite(idx);
            finish_function(idx, std::move(body), prev_line());
            block.statements.push_back(function_placeholder(idx));
            return;
        }

        Statement s;
        s.line_begin = line;
        if (head.is_kw("for")) {
            s.kind = StmtKind::ForLoop;
            LoopParts lp;
            lp.style = LoopStyle::PythonFor;
            int depth = 0;
            std::size_t in_pos = colon;
            for (std::size_t i = start + 1; i < colon; ++i) {
                if (is_open(toks_[i])) ++depth;
                else if (is_close(toks_[i])) --depth;
                else if (depth == 0 && toks_[i].is_kw("in")) {
                    in_pos = i;
                    break;
                }
            }
            if (in_pos == colon) throw ParseError(line, "for statement without 'in'");
            lp.target = make_fragment(toks_, start + 1, in_pos);
            lp.iterable = make_fragment(toks_, in_pos + 1, colon);
            s.loop = std::move(lp);
            s.text = make_fragment(toks_, start, colon);
        } else if (head.is_kw("while")) {
            s.kind = StmtKind::WhileLoop;
            LoopParts lp;
            lp.style = LoopStyle::PythonWhile;
            lp.condition = make_fragment(toks_, start + 1, colon);
            s.loop = std::move(lp);
            s.text = make_fragment(toks_, start, colon);
        } else {
            s.kind = StmtKind::Compound;
            s.text = make_fragment(toks_, start, colon);
            if (head.is_kw("else") && !block.statements.empty() && block.statements.back().is_loop() &&
                !block.statements.back().loop->has_else) {
                block.statements.back().loop->has_else = true;
            }
        }
        pos_ = colon + 1;
        s.body = parse_py_suite(fn);
        s.line_end = prev_line();
        block.statements.push_back(std::move(s));
    }

    // ------------------------------------------------------------------ Java

    struct DeclScan {
        std::size_t stop = 0;
        bool class_kw = false;
        bool assign = false;
        bool has_new = false;
        bool has_arrow = false;
        std::size_t last_paren = 0;  // last depth-0 '(' position, 0 when none
        bool throws = false;
    };

    DeclScan scan_decl(std::size_t from) const {
        DeclScan d;
        int depth = 0;
        std::size_t i = from;
        for (; i < toks_.size(); ++i) {
            const auto& t = toks_[i];
            if (t.kind == TokenKind::End) break;
            if (depth == 0) {
                if (t.is_op("{") || t.is_op(";")) break;
                if (is_close(t)) break;
                if (t.is_op("(")) {
                    if (!d.throws) d.last_paren = i;
                }
                if (t.is_op("=")) d.assign = true;
                if (t.is_op("->")) d.has_arrow = true;
                if (t.is_kw("new")) d.has_new = true;
                if (t.is_kw("throws")) d.throws = true;
                if ((t.is_kw("class") || t.is_kw("interface") || t.is_kw("enum")) &&
                    !(i > from && toks_[i - 1].is_op("."))) {
                    d.class_kw = true;
                }
            }
            if (is_open(t)) ++depth;
            else if (is_close(t)) --depth;
        }
        d.stop = i;
        return d;
    }

    static bool is_statement_keyword(const Token& t) {
        static const std::unordered_set<std::string_view> kws = {
            "if", "for", "while", "do", "switch", "try", "catch", "finally", "else", "return", "break",
            "continue", "throw", "case", "default", "synchronized", "assert", "new", "this", "super",
        };
        return t.kind == TokenKind::Keyword && kws.contains(t.text);
    }

    bool looks_like_method(std::size_t from, const DeclScan& d) const {
        if (!at(d.stop).is_op("{")) return false;
        if (d.class_kw || d.assign || d.has_new || d.has_arrow || d.last_paren == 0) return false;
        if (is_statement_keyword(at(from))) return false;
        if (at(d.last_paren - 1).kind != TokenKind::Identifier) return false;
        return at(d.stop - 1).is_op(")") || d.throws;
    }

    void parse_java_member(StatementBlock& block, bool class_body, std::optional<std::size_t> fn) {
        const auto& t = cur();
        if (t.is_op(";")) {
            ++pos_;
            return;
        }
        if (t.is_op("{")) {
            block.statements.push_back(java_compound(pos_, pos_, fn));
            return;
        }
        if (t.is_kw("static") && at(pos_ + 1).is_op("{")) {
            block.statements.push_back(java_compound(pos_, pos_ + 1, fn));
            return;
        }
        if (is_close(t)) throw ParseError(t.line, "unbalanced braces: unexpected '" + t.text + "'");
        const auto d = scan_decl(pos_);
        if (d.class_kw && at(d.stop).is_op("{") && !d.has_new && !d.assign) {
            Statement s = java_header(pos_, d.stop);
            pos_ = d.stop;
            s.body = parse_java_braced(fn, /*class_body=*/true);
            s.line_end = prev_line();
            block.statements.push_back(std::move(s));
            return;
        }
        if (looks_like_method(pos_, d)) {
            parse_java_method(block, d, fn);
            return;
        }
        if (class_body) {
            block.statements.push_back(java_leaf());
            return;
        }
        parse_java_statement(block, fn);
    }

    void parse_java_method(StatementBlock& block, const DeclScan& d, std::optional<std::size_t> fn) {
        FunctionUnit unit;
        unit.name = at(d.last_paren - 1).text;
        unit.header = make_fragment(toks_, pos_, d.stop);
        unit.line_begin = cur().line;
        unit.parent = fn;
        const auto close = match_bracket(toks_, d.last_paren);
        for (auto [b, e] : split_commas(toks_, d.last_paren + 1, close, /*angle_brackets=*/true)) {
            for (std::size_t i = e; i > b; --i) {
                if (toks_[i - 1].kind == TokenKind::Identifier) {
                    unit.params.push_back(toks_[i - 1].text);
                    break;
                }
            }
        }
        const auto idx = add_function(std::move(unit));
        pos_ = d.stop;
        auto body = parse_java_braced(idx, false);
        finish_function(idx, std::move(body), prev_line());
        block.statements.push_back(function_placeholder(idx));
    }

    // Parses '{' ... '}' starting at the current '{'.
    StatementBlock parse_java_braced(std::optional<std::size_t> fn, bool class_body) {
        const std::size_t open_line = cur().line;
        expect_op("{");
        StatementBlock block;
        while (!cur().is_op("}")) {
            if (at_end()) throw ParseError(open_line, "unbalanced braces: '{' is never closed");
            if (class_body) parse_java_member(block, true, fn);
            else parse_java_statement(block, fn);
        }
        ++pos_;
        return block;
    }

    Statement java_header(std::size_t begin, std::size_t end) {
        Statement s;
        s.kind = StmtKind::Compound;
        s.text = make_fragment(toks_, begin, end);
        s.line_begin = at(begin).line;
        return s;
    }

    // Compound whose header spans [begin, brace) and whose body starts at `brace`.
    Statement java_compound(std::size_t begin, std::size_t brace, std::optional<std::size_t> fn) {
        Statement s = java_header(begin, brace);
        pos_ = brace;
        s.body = parse_java_braced(fn, false);
        s.line_end = prev_line();
        return s;
    }

    std::size_t java_leaf_end(std::size_t from) const {
        int depth = 0;
        for (std::size_t i = from; i < toks_.size(); ++i) {
            const auto& t = toks_[i];
            if (t.kind == TokenKind::End) return i;
            if (is_open(t)) ++depth;
            else if (is_close(t)) {
                if (depth == 0) return i;
                --depth;
            } else if (depth == 0 && t.is_op(";")) {
                return i + 1;
            }
        }
        return toks_.size();
    }

    Statement java_leaf() {
        const auto end = java_leaf_end(pos_);
        Statement s;
        s.text = make_fragment(toks_, pos_, end);
        s.kind = classify_leaf(s.text, lang_);
        s.line_begin = cur().line;
        s.line_end = at(end - 1).line;
        pos_ = end;
        return s;
    }

    StatementBlock parse_java_body(std::optional<std::size_t> fn) {
        if (cur().is_op("{")) return parse_java_braced(fn, false);
        StatementBlock block;
        if (cur().is_op(";")) {
            ++pos_;
            return block;
        }
        parse_java_statement(block, fn);
        return block;
    }

    std::pair<std::size_t, std::size_t> paren_group() {
        if (!cur().is_op("(")) throw ParseError(cur().line, "expected '(' after '" + at(pos_ - 1).text + "'");
        const auto open = pos_;
        const auto close = match_bracket(toks_, open);
        pos_ = close + 1;
        return {open + 1, close};
    }

    void parse_java_statement(StatementBlock& block, std::optional<std::size_t> fn) {
        const Token t = cur();
        const std::size_t start = pos_;
        if (t.is_op(";")) {
            ++pos_;
            return;
        }
        if (t.is_op("{")) {
            block.statements.push_back(java_compound(pos_, pos_, fn));
            return;
        }
        if (is_close(t)) throw ParseError(t.line, "unbalanced braces: unexpected '" + t.text + "'");

        // label: statement
        if (t.kind == TokenKind::Identifier && at(pos_ + 1).is_op(":")) {
            pos_ += 2;
            StatementBlock tmp;
            parse_java_statement(tmp, fn);
            if (tmp.statements.size() == 1 && tmp.statements.front().is_loop()) {
                tmp.statements.front().loop->label = t.text;
                tmp.statements.front().line_begin = t.line;
            } else {
                Statement label;
                label.kind = StmtKind::Other;
                label.text = make_fragment(toks_, start, start + 2);
                label.line_begin = label.line_end = t.line;
                block.statements.push_back(std::move(label));
            }
            for (auto& s : tmp.statements) block.statements.push_back(std::move(s));
            return;
        }

        if (t.is_kw("for")) {
            ++pos_;
            auto [b, e] = paren_group();
            Statement s;
            s.kind = StmtKind::ForLoop;
            s.line_begin = t.line;
            LoopParts lp;
            std::vector<std::size_t> semis;
            std::size_t colon = 0;
            int depth = 0;
            for (std::size_t i = b; i < e; ++i) {
                if (is_open(toks_[i])) ++depth;
                else if (is_close(toks_[i])) --depth;
                else if (depth == 0 && toks_[i].is_op(";")) semis.push_back(i);
                else if (depth == 0 && toks_[i].is_op(":") && colon == 0) colon = i;
            }
            if (semis.size() == 2) {
                lp.style = LoopStyle::JavaFor;
                lp.init = make_fragment(toks_, b, semis[0]);
                lp.condition = make_fragment(toks_, semis[0] + 1, semis[1]);
                lp.update = make_fragment(toks_, semis[1] + 1, e);
            } else if (semis.empty() && colon != 0) {
                lp.style = LoopStyle::JavaForEach;
                lp.target = make_fragment(toks_, b, colon);
                lp.iterable = make_fragment(toks_, colon + 1, e);
            } else {
                throw ParseError(t.line, "malformed for header");
            }
            s.text = make_fragment(toks_, start, e + 1);
            s.loop = std::move(lp);
            s.body = parse_java_body(fn);
            s.line_end = prev_line();
            block.statements.push_back(std::move(s));
            return;
        }
        if (t.is_kw("while")) {
            ++pos_;
            auto [b, e] = paren_group();
            Statement s;
            s.kind = StmtKind::WhileLoop;
            s.line_begin = t.line;
            LoopParts lp;
            lp.style = LoopStyle::JavaWhile;
            lp.condition = make_fragment(toks_, b, e);
            s.text = make_fragment(toks_, start, e + 1);
            s.loop = std::move(lp);
            s.body = parse_java_body(fn);
            s.line_end = prev_line();
            block.statements.push_back(std::move(s));
            return;
        }
        if (t.is_kw("do")) {
            ++pos_;
            Statement s;
            s.kind = StmtKind::WhileLoop;
            s.line_begin = t.line;
            s.body = parse_java_body(fn);
            if (!cur().is_kw("while")) throw ParseError(cur().line, "expected 'while' after do-block");
            ++pos_;
            auto [b, e] = paren_group();
            LoopParts lp;
            lp.style = LoopStyle::JavaDoWhile;
            lp.condition = make_fragment(toks_, b, e);
            s.text = make_fragment(toks_, b - 1, e + 1);
            s.loop = std::move(lp);
            if (cur().is_op(";")) ++pos_;
            s.line_end = prev_line();
            block.statements.push_back(std::move(s));
            return;
        }
        if (t.is_kw("if")) {
            ++pos_;
            auto [b, e] = paren_group();
            Statement s;
            s.kind = StmtKind::Compound;
            s.line_begin = t.line;
            s.text = make_fragment(toks_, start, e + 1);
            s.body = parse_java_body(fn);
            s.line_end = prev_line();
            block.statements.push_back(std::move(s));
            while (cur().is_kw("else")) {
                const std::size_t else_pos = pos_;
                const std::size_t else_line = cur().line;
                ++pos_;
                Statement branch;
                branch.kind = StmtKind::Compound;
                branch.line_begin = else_line;
                if (cur().is_kw("if")) {
                    ++pos_;
                    auto [cb, ce] = paren_group();
                    branch.text = make_fragment(toks_, else_pos, ce + 1);
                    branch.body = parse_java_body(fn);
                    branch.line_end = prev_line();
                    block.statements.push_back(std::move(branch));
                    continue;
                }
                branch.text = make_fragment(toks_, else_pos, else_pos + 1);
                branch.body = parse_java_body(fn);
                branch.line_end = prev_line();
                block.statements.push_back(std::move(branch));
                break;
            }
            return;
        }
        if (t.is_kw("try")) {
            ++pos_;
            std::size_t header_end = pos_;
            if (cur().is_op("(")) {
                paren_group();
                header_end = pos_;
            }
            if (!cur().is_op("{")) throw ParseError(cur().line, "expected '{' after try");
            block.statements.push_back(java_compound(start, header_end, fn));
            while (cur().is_kw("catch") || cur().is_kw("finally")) {
                const std::size_t clause = pos_;
                ++pos_;
                if (cur().is_op("(")) paren_group();
                if (!cur().is_op("{")) throw ParseError(cur().line, "expected '{' in try clause");
                block.statements.push_back(java_compound(clause, pos_, fn));
            }
            return;
        }
        if (t.is_kw("switch") || t.is_kw("synchronized")) {
            const auto d = scan_decl(pos_);
            if (at(d.stop).is_op("{") && at(pos_ + 1).is_op("(") && match_bracket(toks_, pos_ + 1) + 1 == d.stop) {
                block.statements.push_back(java_compound(start, d.stop, fn));
                return;
            }
        }
        if (t.is_kw("case") || t.is_kw("default")) {
            int depth = 0;
            std::size_t i = pos_ + 1;
            for (; i < toks_.size(); ++i) {
                const auto& x = toks_[i];
                if (x.kind == TokenKind::End) break;
                if (is_open(x)) ++depth;
                else if (is_close(x)) --depth;
                else if (depth == 0 && (x.is_op(":") || x.is_op("->"))) break;
            }
            if (at(i).is_op(":")) {
                Statement s;
                s.kind = StmtKind::Other;
                s.text = make_fragment(toks_, start, i + 1);
                s.line_begin = t.line;
                s.line_end = at(i).line;
                pos_ = i + 1;
                block.statements.push_back(std::move(s));
                return;
            }
            if (at(i).is_op("->") && at(i + 1).is_op("{")) {
                block.statements.push_back(java_compound(start, i + 1, fn));
                return;
            }
            block.statements.push_back(java_leaf());
            return;
        }
        if (t.kind == TokenKind::Keyword || t.kind == TokenKind::Identifier || t.is_op("@")) {
            const auto d = scan_decl(pos_);
            if (d.class_kw && at(d.stop).is_op("{") && !d.has_new && !d.assign && !is_statement_keyword(t)) {
                parse_java_member(block, false, fn);
                return;
            }
        }
        block.statements.push_back(java_leaf());
    }

    std::vector<Token> toks_;
    Language lang_;
    std::size_t pos_ = 0;
    StructuralIR ir_;
};

}  // namespace

std::vector<CallSite> find_calls(const Fragment& f) {
    std::vector<CallSite> calls;
    const auto& toks = f.tokens;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Identifier || !toks[i + 1].is_op("(")) continue;
        CallSite c;
        c.callee = toks[i].text;
        c.line = toks[i].line;
        if (i >= 1 && toks[i - 1].is_op(".")) {
            c.member = true;
            if (i >= 2 && toks[i - 2].is_word()) c.receiver = toks[i - 2].text;
        }
        if (i >= 1 && toks[i - 1].is_kw("new")) c.constructor = true;
        const auto close = match_bracket(toks, i + 1);
        for (auto [b, e] : split_commas(toks, i + 2, std::min(close, toks.size()))) {
            Fragment arg;
            for (std::size_t j = b; j < e; ++j) {
                if (!arg.tokens.empty()) arg.text += toks[j].leading;
                arg.text += toks[j].text;
                arg.tokens.push_back(toks[j]);
            }
            c.args.push_back(std::move(arg));
        }
        calls.push_back(std::move(c));
    }
    return calls;
}

const FunctionUnit* StructuralIR::find_function(std::string_view name) const {
    for (const auto& f : functions) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

StructuralIR parse(const CodeSnippet& snippet) {
    const bool blank = std::all_of(snippet.source.begin(), snippet.source.end(),
                                   [](unsigned char c) { return std::isspace(c); });
    if (blank) throw ParseError(1, "empty source");
    auto tokens = lex(snippet.source, snippet.language);
    if (tokens.size() <= 1) throw ParseError(1, "source contains no code");
    return Parser(std::move(tokens), snippet.language).run();
}

const std::vector<FunctionUnit>& extract_functions(const StructuralIR& ir) { return ir.functions; }

std::size_t count_loops(const StructuralIR& ir) {
    std::size_t n = 0;
    auto count = [&](const Statement& s, std::size_t) { n += s.is_loop() ? 1 : 0; };
    walk(ir.top_level, count);
    for (const auto& f : ir.functions) walk(f.body, count);
    return n;
}

}  // namespace tcpl::frontend
