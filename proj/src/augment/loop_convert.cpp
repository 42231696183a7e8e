#include <set>
#include <unordered_set>

#include "tcpl/augment/augment.hpp"
#include "tcpl/frontend/idioms.hpp"

namespace tcpl::augment {

using frontend::Fragment;
using frontend::LoopStyle;
using frontend::Statement;
using frontend::StatementBlock;
using frontend::StmtKind;
using frontend::StructuralIR;
using frontend::Token;
using frontend::TokenKind;

namespace {

bool is_open(const Token& t) { return t.is_op("(") || t.is_op("[") || t.is_op("{"); }
bool is_close(const Token& t) { return t.is_op(")") || t.is_op("]") || t.is_op("}"); }

bool is_assign_op(const Token& t) {
    static const std::unordered_set<std::string_view> ops = {
        "=", "+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "@=", ":=",
    };
    return t.kind == TokenKind::Operator && ops.contains(t.text);
}

Statement leaf(const std::string& text, Language lang) {
    auto ir = frontend::parse(CodeSnippet{"leaf", text, lang});
    if (ir.top_level.statements.size() != 1) throw UnsupportedLoopForm("cannot build statement `" + text + "`");
    return std::move(ir.top_level.statements.front());
}

// Splits at depth-0 commas; each piece's text.
std::vector<std::string> comma_pieces(const Fragment& f) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    bool first = true;
    for (const auto& t : f.tokens) {
        if (is_open(t)) ++depth;
        else if (is_close(t)) --depth;
        if (depth == 0 && t.is_op(",")) {
            out.push_back(cur);
            cur.clear();
            first = true;
            continue;
        }
        if (!first) cur += t.leading;
        cur += t.text;
        first = false;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

/// `int i = 0, j = 1` (one declaration) vs `i = 0, j = 1` (expression list).
bool is_declaration(const Fragment& f) {
    for (std::size_t i = 0; i < f.tokens.size(); ++i) {
        if (is_assign_op(f.tokens[i]) || f.tokens[i].is_op(",")) return i >= 2;
    }
    return f.tokens.size() >= 2;
}

/// Names written anywhere in the block: assignment targets, ++/--, loop targets,
/// and receivers of mutating method calls.
std::set<std::string> written_names(const StatementBlock& block) {
    static const std::unordered_set<std::string_view> mutators = {
        "append", "add", "extend", "push", "pop", "remove", "insert", "clear", "offer", "poll", "put",
        "addAll", "removeAll", "appendleft", "popleft", "discard", "update", "sort", "reverse", "set",
    };
    std::set<std::string> out;
    auto scan = [&](const Fragment& f) {
        const auto& t = f.tokens;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (is_open(t[i])) ++depth;
            else if (is_close(t[i])) --depth;
            if ((t[i].is_op("++") || t[i].is_op("--"))) {
                if (i > 0 && t[i - 1].kind == TokenKind::Identifier) out.insert(t[i - 1].text);
                if (i + 1 < t.size() && t[i + 1].kind == TokenKind::Identifier) out.insert(t[i + 1].text);
            }
            if (t[i].is_op(";") || t[i].is_op(",")) start = i + 1;
            if (is_assign_op(t[i])) {
                for (std::size_t j = start; j < i; ++j) {
                    if (t[j].kind == TokenKind::Identifier) out.insert(t[j].text);
                }
                start = i + 1;
            }
            if (t[i].is_kw("del") && i + 1 < t.size() && t[i + 1].kind == TokenKind::Identifier) out.insert(t[i + 1].text);
        }
        for (const auto& c : frontend::find_calls(f)) {
            if (c.member && !c.receiver.empty() && mutators.contains(c.callee)) out.insert(c.receiver);
        }
    };
    frontend::walk(block, [&](const Statement& s, std::size_t) {
        if (s.loop) {
            for (const auto* f : {&s.loop->init, &s.loop->condition, &s.loop->update, &s.loop->target}) scan(*f);
            for (const auto& t : s.loop->target.tokens) {
                if (t.kind == TokenKind::Identifier) out.insert(t.text);
            }
        } else {
            scan(s.text);
        }
    });
    return out;
}

/// Does a `continue` in this body go to the loop labelled `label` (or to the
/// innermost loop, when unlabelled and not nested)?
bool continue_reaches(const StatementBlock& body, const std::string& label, bool nested) {
    for (const auto& s : body.statements) {
        if (s.kind == StmtKind::FunctionDef) continue;
        if (!s.loop && !s.text.empty() && s.text.tokens.front().is_kw("continue")) {
            const auto& t = s.text.tokens;
            const bool labelled = t.size() >= 2 && t[1].kind == TokenKind::Identifier;
            if (labelled && t[1].text == label) return true;
            if (!labelled && !nested) return true;
        }
        if (continue_reaches(s.body, label, nested || s.is_loop())) return true;
    }
    return false;
}

std::vector<std::string> identifiers(const Fragment& f) {
    std::vector<std::string> out;
    for (const auto& t : f.tokens) {
        if (t.kind == TokenKind::Identifier) out.push_back(t.text);
    }
    return out;
}

/// Enclosing (block, index) positions, outermost first, up to the function or program root.
using Trail = std::vector<std::pair<const StatementBlock*, std::size_t>>;

bool mentions(const Fragment& f, const std::string& name) {
    for (const auto& t : f.tokens) {
        if (t.kind == TokenKind::Identifier && t.text == name) return true;
    }
    return false;
}

bool mentions(const Statement& s, const std::string& name) {
    if (mentions(s.text, name)) return true;
    if (s.loop) {
        for (const auto* f : {&s.loop->init, &s.loop->condition, &s.loop->update, &s.loop->target, &s.loop->iterable}) {
            if (mentions(*f, name)) return true;
        }
    }
    for (const auto& c : s.body.statements) {
        if (mentions(c, name)) return true;
    }
    return false;
}

enum class Use { None, Read, Rebind };

Use first_use(const Statement& s, const std::string& name) {
    const auto& t = s.text.tokens;
    if (!s.loop && t.size() >= 3 && t[0].text == name && t[1].is_op("=")) {
        Fragment rhs;
        rhs.tokens.assign(t.begin() + 2, t.end());
        return mentions(rhs, name) ? Use::Read : Use::Rebind;
    }
    if (s.loop && s.loop->style == LoopStyle::PythonFor && s.loop->target.tokens.size() == 1 &&
        s.loop->target.tokens[0].text == name) {
        return mentions(s.loop->iterable, name) ? Use::Read : Use::Rebind;
    }
    return mentions(s, name) ? Use::Read : Use::None;
}

/// Could the value `name` holds when the loop at parent[idx] ends be observed later?
/// Conservative: any mention that is not a plain rebinding counts.
bool read_after(const Trail& outer, const StatementBlock& parent, std::size_t idx, const std::string& name) {
    auto scan = [&](const StatementBlock& block, std::size_t from) -> std::optional<bool> {
        for (std::size_t k = from; k < block.statements.size(); ++k) {
            const auto use = first_use(block.statements[k], name);
            if (use == Use::Read) return true;
            if (use == Use::Rebind) return false;
        }
        return std::nullopt;
    };
    if (auto r = scan(parent, idx + 1)) return *r;
    const StatementBlock* inner = &parent;
    std::size_t pos = idx;
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) {
        const auto& enclosing = it->first->statements[it->second];
        if (enclosing.is_loop()) {
            // The next iteration runs the statements before ours again.
            Statement header = enclosing;
            header.body.statements.clear();
            if (mentions(header, name)) return true;
            for (std::size_t k = 0; k < pos; ++k) {
                if (first_use(inner->statements[k], name) == Use::Read) return true;
            }
        }
        if (auto r = scan(*it->first, it->second + 1)) return *r;
        inner = it->first;
        pos = it->second;
    }
    return false;
}

// ------------------------------------------------------------------- for -> while

void java_for_to_while(StatementBlock& parent, std::size_t idx) {
    Statement loop = parent.statements[idx];
    const auto lp = *loop.loop;
    if (lp.style == LoopStyle::JavaForEach) throw UnsupportedLoopForm("enhanced for has no explicit counter");
    if (continue_reaches(loop.body, lp.label, false)) {
        throw UnsupportedLoopForm("continue would skip the relocated update");
    }
    Statement w;
    w.kind = StmtKind::WhileLoop;
    w.line_begin = loop.line_begin;
    w.line_end = loop.line_end;
    frontend::LoopParts wp;
    wp.style = LoopStyle::JavaWhile;
    wp.label = lp.label;
    wp.condition = lp.condition.empty() ? frontend::fragment_from_text("true", Language::Java) : lp.condition;
    w.loop = wp;
    w.text = frontend::fragment_from_text("while (" + wp.condition.text + ")", Language::Java);
    w.body = loop.body;
    for (const auto& u : comma_pieces(lp.update)) w.body.statements.push_back(leaf(u + ";", Language::Java));

    std::vector<Statement> replacement;
    if (lp.init.empty()) {
        replacement.push_back(std::move(w));
    } else if (is_declaration(lp.init)) {
        // Keep the declaration scoped to the loop, as it was in the for header.
        Statement scope;
        scope.kind = StmtKind::Compound;
        scope.line_begin = loop.line_begin;
        scope.line_end = loop.line_end;
        scope.body.statements.push_back(leaf(lp.init.text + ";", Language::Java));
        scope.body.statements.push_back(std::move(w));
        replacement.push_back(std::move(scope));
    } else {
        for (const auto& i : comma_pieces(lp.init)) replacement.push_back(leaf(i + ";", Language::Java));
        replacement.push_back(std::move(w));
    }
    parent.statements.erase(parent.statements.begin() + static_cast<std::ptrdiff_t>(idx));
    parent.statements.insert(parent.statements.begin() + static_cast<std::ptrdiff_t>(idx), replacement.begin(),
                             replacement.end());
}

struct RangeArgs {
    std::string start = "0";
    std::string stop;
    std::string step = "1";
    bool descending = false;
    Fragment bound;  // all argument tokens, for mutation checks
};

std::optional<long long> literal_int(const std::string& text) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used, 10);
        if (used == text.size()) return v;
    } catch (...) {
    }
    return std::nullopt;
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != ' ') out += c;
    }
    return out;
}

RangeArgs range_args(const Fragment& iterable) {
    const auto& t = iterable.tokens;
    if (t.size() < 3 || t[0].text != "range" || !t[1].is_op("(") || !t.back().is_op(")")) {
        throw UnsupportedLoopForm("only range(...) iteration converts to a counter loop");
    }
    int depth = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (is_open(t[i])) ++depth;
        else if (is_close(t[i]) && --depth == 0 && i + 1 != t.size()) {
            throw UnsupportedLoopForm("range(...) must be the whole iterable");
        }
    }
    const auto calls = frontend::find_calls(iterable);
    static const std::unordered_set<std::string_view> pure = {"range", "len", "min", "max", "abs", "int"};
    for (const auto& c : calls) {
        if (!pure.contains(c.callee)) throw UnsupportedLoopForm("range bound calls `" + c.callee + "`");
    }
    const auto& args = calls.front().args;
    RangeArgs r;
    for (const auto& a : args) r.bound.tokens.insert(r.bound.tokens.end(), a.tokens.begin(), a.tokens.end());
    if (args.size() == 1) {
        r.stop = args[0].text;
    } else if (args.size() == 2 || args.size() == 3) {
        r.start = args[0].text;
        r.stop = args[1].text;
        if (args.size() == 3) {
            r.step = args[2].text;
            auto v = literal_int(strip_spaces(r.step));
            if (!v || *v == 0) throw UnsupportedLoopForm("range step must be a non-zero literal");
            r.descending = *v < 0;
            r.step = std::to_string(*v < 0 ? -*v : *v);
        }
    } else {
        throw UnsupportedLoopForm("range takes one to three arguments");
    }
    return r;
}

void python_for_to_while(StatementBlock& parent, std::size_t idx, const Trail& outer) {
    Statement loop = parent.statements[idx];
    const auto lp = *loop.loop;
    if (lp.has_else) throw UnsupportedLoopForm("for-else has no direct while form here");
    if (lp.target.tokens.size() != 1 || lp.target.tokens[0].kind != TokenKind::Identifier) {
        throw UnsupportedLoopForm("loop target must be a single name");
    }
    const std::string var = lp.target.text;
    const auto r = range_args(lp.iterable);
    const auto written = written_names(loop.body);
    if (written.contains(var)) throw UnsupportedLoopForm("body assigns the loop variable");
    for (const auto& name : identifiers(r.bound)) {
        if (written.contains(name)) throw UnsupportedLoopForm("body changes the range bound `" + name + "`");
    }
    if (continue_reaches(loop.body, "", false)) throw UnsupportedLoopForm("continue would skip the increment");
    if (read_after(outer, parent, idx, var)) throw UnsupportedLoopForm("loop variable is read after the loop");

    Statement w;
    w.kind = StmtKind::WhileLoop;
    w.line_begin = loop.line_begin;
    w.line_end = loop.line_end;
    frontend::LoopParts wp;
    wp.style = LoopStyle::PythonWhile;
    const std::string cond = var + (r.descending ? " > " : " < ") + r.stop;
    wp.condition = frontend::fragment_from_text(cond, Language::Python);
    w.loop = wp;
    w.text = frontend::fragment_from_text("while " + cond, Language::Python);
    w.body = loop.body;
    w.body.statements.push_back(leaf(var + (r.descending ? " -= " : " += ") + r.step, Language::Python));

    parent.statements[idx] = std::move(w);
    parent.statements.insert(parent.statements.begin() + static_cast<std::ptrdiff_t>(idx),
                             leaf(var + " = " + r.start, Language::Python));
}

// ------------------------------------------------------------------- while -> for

/// Token index of the first depth-0 assignment operator, or npos.
std::size_t assign_pos(const Fragment& f) {
    int depth = 0;
    for (std::size_t i = 0; i < f.tokens.size(); ++i) {
        if (is_open(f.tokens[i])) ++depth;
        else if (is_close(f.tokens[i])) --depth;
        else if (depth == 0 && is_assign_op(f.tokens[i])) return i;
    }
    return std::string::npos;
}

void java_while_to_for(StatementBlock& parent, std::size_t idx) {
    Statement loop = parent.statements[idx];
    const auto lp = *loop.loop;
    if (lp.style == LoopStyle::JavaDoWhile) throw UnsupportedLoopForm("do-while runs its body before the test");

    std::set<std::string> cond_vars;
    for (const auto& name : identifiers(lp.condition)) cond_vars.insert(name);

    Fragment update;
    StatementBlock body = loop.body;
    if (!body.statements.empty()) {
        const auto& last = body.statements.back();
        if (last.kind == StmtKind::Assign && !last.loop) {
            Fragment f = last.text;
            if (!f.tokens.empty() && f.tokens.back().is_op(";")) f.tokens.pop_back();
            const auto pos = assign_pos(f);
            const bool declaration = pos != std::string::npos && pos >= 2 &&
                                     f.tokens[pos - 1].kind == TokenKind::Identifier &&
                                     (f.tokens[pos - 2].is_word() || f.tokens[pos - 2].is_op("]") || f.tokens[pos - 2].is_op(">"));
            bool touches = false;
            const std::size_t lhs_end = pos == std::string::npos ? f.tokens.size() : pos;
            for (std::size_t i = 0; i < lhs_end; ++i) {
                if (f.tokens[i].kind == TokenKind::Identifier && cond_vars.contains(f.tokens[i].text)) touches = true;
            }
            if (!declaration && touches) {
                std::string text;
                for (std::size_t i = 0; i < f.tokens.size(); ++i) {
                    if (i) text += f.tokens[i].leading;
                    text += f.tokens[i].text;
                }
                update = frontend::fragment_from_text(text, Language::Java);
                body.statements.pop_back();
            }
        }
    }
    if (!update.empty() && continue_reaches(body, lp.label, false)) {
        throw UnsupportedLoopForm("continue would start running the moved update");
    }

    Statement f;
    f.kind = StmtKind::ForLoop;
    f.line_begin = loop.line_begin;
    f.line_end = loop.line_end;
    frontend::LoopParts fp;
    fp.style = LoopStyle::JavaFor;
    fp.label = lp.label;
    fp.condition = lp.condition;
    fp.update = update;
    f.loop = fp;
    f.text = frontend::fragment_from_text("for (; " + lp.condition.text + "; " + update.text + ")", Language::Java);
    f.body = std::move(body);
    parent.statements[idx] = std::move(f);
}

// i < B / i <= B / i > B / i >= B with `i += c` (or -=) as the last body statement and
// `i = start` just before the loop.
void python_while_to_for(StatementBlock& parent, std::size_t idx, const Trail& outer) {
    Statement loop = parent.statements[idx];
    const auto lp = *loop.loop;
    const auto& c = lp.condition.tokens;
    if (c.size() == 1 && c[0].is_kw("True")) throw UnsupportedLoopForm("while True has no finite for form");
    if (lp.has_else) throw UnsupportedLoopForm("while-else has no direct for form here");
    if (c.size() < 3 || c[0].kind != TokenKind::Identifier ||
        !(c[1].is_op("<") || c[1].is_op("<=") || c[1].is_op(">") || c[1].is_op(">="))) {
        throw UnsupportedLoopForm("condition is not a counter comparison");
    }
    const std::string var = c[0].text;
    const std::string op = c[1].text;
    Fragment bound;
    bound.tokens.assign(c.begin() + 2, c.end());
    std::string bound_text;
    for (std::size_t i = 2; i < c.size(); ++i) {
        if (i > 2) bound_text += c[i].leading;
        bound_text += c[i].text;
    }
    for (const auto& call : frontend::find_calls(bound)) {
        if (call.callee != "len" && call.callee != "min" && call.callee != "max" && call.callee != "abs") {
            throw UnsupportedLoopForm("bound calls `" + call.callee + "`");
        }
    }

    if (loop.body.statements.empty()) throw UnsupportedLoopForm("empty body");
    const auto& last = loop.body.statements.back().text.tokens;
    const bool up = op == "<" || op == "<=";
    if (last.size() != 3 || last[0].text != var || !(last[1].is_op(up ? "+=" : "-=")) ||
        last[2].kind != TokenKind::Number || !literal_int(last[2].text) || *literal_int(last[2].text) <= 0) {
        throw UnsupportedLoopForm("body does not end with a constant counter step");
    }
    const std::string step = last[2].text;

    if (idx == 0) throw UnsupportedLoopForm("counter is not initialised right before the loop");
    const auto& init = parent.statements[idx - 1].text.tokens;
    if (parent.statements[idx - 1].loop || init.size() < 3 || init[0].text != var || !init[1].is_op("=")) {
        throw UnsupportedLoopForm("counter is not initialised right before the loop");
    }
    std::string start;
    for (std::size_t i = 2; i < init.size(); ++i) {
        if (i > 2) start += init[i].leading;
        start += init[i].text;
    }

    StatementBlock body = loop.body;
    body.statements.pop_back();
    const auto written = written_names(body);
    if (written.contains(var)) throw UnsupportedLoopForm("body assigns the counter elsewhere");
    for (const auto& name : identifiers(bound)) {
        if (written.contains(name)) throw UnsupportedLoopForm("body changes the bound `" + name + "`");
    }
    if (continue_reaches(body, "", false)) throw UnsupportedLoopForm("continue would skip the step");
    if (read_after(outer, parent, idx, var)) throw UnsupportedLoopForm("counter is read after the loop");

    std::string stop = bound_text;
    if (op == "<=") stop = "(" + bound_text + ") + 1";
    if (op == ">=") stop = "(" + bound_text + ") - 1";
    std::string iterable = "range(" + start + ", " + stop;
    if (up && step != "1") iterable += ", " + step;
    if (!up) iterable += ", -" + step;
    iterable += ")";

    Statement f;
    f.kind = StmtKind::ForLoop;
    f.line_begin = loop.line_begin;
    f.line_end = loop.line_end;
    frontend::LoopParts fp;
    fp.style = LoopStyle::PythonFor;
    fp.target = frontend::fragment_from_text(var, Language::Python);
    fp.iterable = frontend::fragment_from_text(iterable, Language::Python);
    f.loop = fp;
    f.text = frontend::fragment_from_text("for " + var + " in " + iterable, Language::Python);
    f.body = std::move(body);
    parent.statements[idx] = std::move(f);
    parent.statements.erase(parent.statements.begin() + static_cast<std::ptrdiff_t>(idx - 1));
}

enum class Direction { ToWhile, ToFor };

/// Converts parent[idx]; returns the index of the converted loop afterwards.
std::size_t convert(StatementBlock& parent, std::size_t idx, const Trail& outer, Language lang, Direction dir) {
    const auto& s = parent.statements[idx];
    if (dir == Direction::ToWhile) {
        if (s.kind != StmtKind::ForLoop) throw UnsupportedLoopForm("not a for loop");
        const auto before = parent.statements.size();
        if (lang == Language::Java) java_for_to_while(parent, idx);
        else python_for_to_while(parent, idx, outer);
        return idx + (parent.statements.size() - before);
    }
    if (s.kind != StmtKind::WhileLoop) throw UnsupportedLoopForm("not a while loop");
    if (lang == Language::Java) {
        java_while_to_for(parent, idx);
        return idx;
    }
    python_while_to_for(parent, idx, outer);
    return idx - 1;
}

struct Found {
    StatementBlock* block = nullptr;
    std::size_t index = 0;
    Trail outer;
};

bool find_loop(StatementBlock& block, std::size_t line, Found& found) {
    for (std::size_t i = 0; i < block.statements.size(); ++i) {
        auto& s = block.statements[i];
        if (s.is_loop() && s.line_begin == line) {
            found.block = &block;
            found.index = i;
            return true;
        }
        found.outer.emplace_back(&block, i);
        if (find_loop(s.body, line, found)) return true;
        found.outer.pop_back();
    }
    return false;
}

std::string convert_one(const StructuralIR& ir, std::size_t line, Direction dir) {
    StructuralIR copy = ir;
    Found found;
    bool ok = find_loop(copy.top_level, line, found);
    for (auto& fn : copy.functions) {
        if (ok) break;
        ok = find_loop(fn.body, line, found);
    }
    if (!ok) throw UnsupportedLoopForm("no loop starts at line " + std::to_string(line));
    convert(*found.block, found.index, found.outer, copy.language, dir);
    return frontend::print(copy);
}

/// Converts every loop in the block bottom-up. Returns how many were converted.
std::size_t convert_all(StatementBlock& block, Language lang, Trail& outer) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < block.statements.size(); ++i) {
        outer.emplace_back(&block, i);
        n += convert_all(block.statements[i].body, lang, outer);
        outer.pop_back();
        if (!block.statements[i].is_loop()) continue;
        const auto dir = block.statements[i].kind == StmtKind::ForLoop ? Direction::ToWhile : Direction::ToFor;
        try {
            i = convert(block, i, outer, lang, dir);
            ++n;
        } catch (const UnsupportedLoopForm&) {
        }
    }
    return n;
}

}  // namespace

std::string for_to_while(const StructuralIR& ir, std::size_t line) { return convert_one(ir, line, Direction::ToWhile); }

std::string while_to_for(const StructuralIR& ir, std::size_t line) { return convert_one(ir, line, Direction::ToFor); }

bool contains_loop(const CodeSnippet& snippet) {
    try {
        return frontend::count_loops(frontend::parse(snippet)) > 0;
    } catch (const frontend::ParseError&) {
        return false;
    }
}

std::optional<AugmentedExample> loop_convert(const LabeledExample& example) {
    StructuralIR ir;
    try {
        ir = frontend::parse(example.snippet);
    } catch (const frontend::ParseError&) {
        return std::nullopt;
    }
    if (frontend::count_loops(ir) == 0) return std::nullopt;
    const auto original_sig = frontend::structural_signature(ir);

    Trail trail;
    std::size_t converted = convert_all(ir.top_level, ir.language, trail);
    for (auto& fn : ir.functions) converted += convert_all(fn.body, ir.language, trail);
    if (converted == 0) return std::nullopt;

    AugmentedExample out;
    out.original = example.snippet.id;
    out.snippet = {example.snippet.id + "#lc", frontend::print(ir), example.snippet.language};
    out.label = example.label;
    out.method = AugMethod::LC;
    try {
        const auto reparsed = frontend::parse(out.snippet);
        if (frontend::structural_signature(reparsed) == original_sig) return std::nullopt;
    } catch (const frontend::ParseError&) {
        return std::nullopt;
    }
    return out;
}

}  // namespace tcpl::augment
