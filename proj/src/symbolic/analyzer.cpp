#include "tcpl/symbolic/analyzer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

#include "tcpl/frontend/idioms.hpp"

namespace tcpl::symbolic {

using frontend::CallSite;
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

bool is_input_call(const CallSite& c) {
    static const std::unordered_set<std::string_view> names = {
        "input", "raw_input", "readline", "readlines", "read", "readLine", "nextInt", "nextLong",
        "nextDouble", "next", "nextLine", "nextToken", "parseInt", "parseLong", "parseDouble",
        "nextIntArray", "readInt", "readLong", "readInts", "ni", "nl", "ns", "na",
    };
    return names.contains(c.callee);
}

bool mentions_stdin(const std::vector<Token>& toks) {
    for (const auto& t : toks) {
        if (t.kind == TokenKind::Identifier && t.text == "stdin") return true;
    }
    return false;
}

bool has_input_call(const Fragment& f) {
    for (const auto& c : frontend::find_calls(f)) {
        if (is_input_call(c)) return true;
    }
    return mentions_stdin(f.tokens);
}

/// Variable-like identifiers: not a callee, not an attribute name.
std::vector<std::string> variable_names(const std::vector<Token>& toks) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Identifier) continue;
        if (i + 1 < toks.size() && toks[i + 1].is_op("(")) continue;
        if (i > 0 && toks[i - 1].is_op(".")) continue;
        out.push_back(toks[i].text);
    }
    return out;
}

std::vector<Token> slice(const std::vector<Token>& toks, std::size_t b, std::size_t e) {
    return {toks.begin() + static_cast<std::ptrdiff_t>(b), toks.begin() + static_cast<std::ptrdiff_t>(e)};
}

Fragment as_fragment(std::vector<Token> toks) {
    Fragment f;
    for (const auto& t : toks) {
        if (!f.tokens.empty()) f.text += t.leading;
        f.text += t.text;
    }
    f.tokens = std::move(toks);
    return f;
}

bool is_assign_op(std::string_view s) {
    static const std::unordered_set<std::string_view> ops = {
        "=", "+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "@=",
    };
    return ops.contains(s);
}

struct Assignment {
    std::vector<std::string> targets;
    std::string op;  // "=", "+=", ..., "++", "--"
    std::vector<Token> rhs;
};

// Last depth-0 identifier of a Java left-hand side (`int[] a`, `d[i][j]`, `this.x`).
std::optional<std::string> java_target(const std::vector<Token>& lhs) {
    int depth = 0;
    std::optional<std::string> out;
    for (const auto& t : lhs) {
        if (is_open(t)) ++depth;
        else if (is_close(t)) --depth;
        else if (depth == 0 && t.kind == TokenKind::Identifier) out = t.text;
    }
    return out;
}

std::vector<std::string> python_targets(const std::vector<Token>& lhs) {
    std::vector<std::string> out;
    int depth = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        const auto& t = lhs[i];
        if (is_open(t)) ++depth;
        else if (is_close(t)) --depth;
        else if (depth == 0 && t.kind == TokenKind::Identifier) {
            if (i + 1 < lhs.size() && lhs[i + 1].is_op(".")) continue;
            out.push_back(t.text);
        }
    }
    return out;
}

void increments(const std::vector<Token>& toks, std::vector<Assignment>& out) {
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (!toks[i].is_op("++") && !toks[i].is_op("--")) continue;
        std::optional<std::string> name;
        if (i > 0 && toks[i - 1].kind == TokenKind::Identifier) name = toks[i - 1].text;
        else if (i + 1 < toks.size() && toks[i + 1].kind == TokenKind::Identifier) name = toks[i + 1].text;
        if (name) out.push_back({{*name}, toks[i].text, {}});
    }
}

std::vector<Assignment> assignments(const Fragment& f, Language lang) {
    std::vector<Assignment> out;
    std::vector<Token> toks = f.tokens;
    if (!toks.empty() && toks.back().is_op(";")) toks.pop_back();
    increments(toks, out);
    if (lang == Language::Java) {
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= toks.size(); ++i) {
            if (i < toks.size()) {
                if (is_open(toks[i])) ++depth;
                else if (is_close(toks[i])) --depth;
                if (!(depth == 0 && toks[i].is_op(","))) continue;
            }
            int d = 0;
            for (std::size_t j = start; j < i; ++j) {
                if (is_open(toks[j])) ++d;
                else if (is_close(toks[j])) --d;
                else if (d == 0 && toks[j].kind == TokenKind::Operator && is_assign_op(toks[j].text)) {
                    if (auto target = java_target(slice(toks, start, j))) {
                        out.push_back({{*target}, toks[j].text, slice(toks, j + 1, i)});
                    }
                    break;
                }
            }
            start = i + 1;
        }
        return out;
    }
    std::vector<std::size_t> eqs;
    int depth = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (is_open(toks[i])) ++depth;
        else if (is_close(toks[i])) --depth;
        else if (depth == 0 && toks[i].kind == TokenKind::Operator && is_assign_op(toks[i].text)) eqs.push_back(i);
        else if (depth == 0 && toks[i].is_kw("lambda")) break;
    }
    if (eqs.empty()) return out;
    Assignment a;
    a.op = toks[eqs.back()].text;
    a.rhs = slice(toks, eqs.back() + 1, toks.size());
    std::size_t start = 0;
    for (auto e : eqs) {
        auto names = python_targets(slice(toks, start, e));
        a.targets.insert(a.targets.end(), names.begin(), names.end());
        start = e + 1;
    }
    out.push_back(std::move(a));
    return out;
}

/// `x.append(v)` style mutations fill x from v.
std::vector<Assignment> container_fills(const Fragment& f) {
    static const std::unordered_set<std::string_view> fills = {
        "append", "add", "extend", "push", "offer", "put", "insert", "addAll", "appendleft",
        "addLast", "addFirst", "offerLast", "push_back", "update",
    };
    std::vector<Assignment> out;
    for (const auto& c : frontend::find_calls(f)) {
        if (!c.member || c.receiver.empty() || !fills.contains(c.callee)) continue;
        Assignment a;
        a.targets = {c.receiver};
        a.op = "=";
        for (const auto& arg : c.args) a.rhs.insert(a.rhs.end(), arg.tokens.begin(), arg.tokens.end());
        out.push_back(std::move(a));
    }
    return out;
}

std::optional<long long> number_value(const Token& t) {
    if (t.kind != TokenKind::Number) return std::nullopt;
    try {
        std::size_t used = 0;
        long long v = std::stoll(t.text, &used, 0);
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

/// v *= c, v /= c, v //= c, v <<= c, v >>= c, v = v * c, v = v // c, v = v >> c, ...
bool is_geometric_update(const Assignment& a) {
    if (a.targets.size() != 1) return false;
    const auto& v = a.targets.front();
    auto constant_factor = [](const std::vector<Token>& rhs, std::string_view op) {
        if (rhs.size() != 1) return false;
        auto n = number_value(rhs.front());
        if (!n) return false;
        return (op == "<<" || op == ">>" || op == ">>>") ? *n >= 1 : *n >= 2;
    };
    static const std::unordered_set<std::string_view> compound = {"*=", "/=", "//=", "<<=", ">>=", ">>>="};
    if (compound.contains(a.op)) {
        std::string base(a.op.substr(0, a.op.size() - 1));
        return constant_factor(a.rhs, base);
    }
    if (a.op != "=" || a.rhs.size() != 3) return false;
    static const std::unordered_set<std::string_view> ops = {"*", "/", "//", "<<", ">>", ">>>"};
    const auto& r = a.rhs;
    if (r[0].kind == TokenKind::Identifier && r[0].text == v && r[1].kind == TokenKind::Operator &&
        ops.contains(r[1].text)) {
        return constant_factor({r[2]}, r[1].text);
    }
    if (r[2].kind == TokenKind::Identifier && r[2].text == v && r[1].is_op("*")) {
        return constant_factor({r[0]}, "*");
    }
    return false;
}

/// Halving of a sum or difference: (lo + hi) / 2, lo + (hi - lo) // 2, (l + r) >> 1.
bool is_halving_expression(const std::vector<Token>& rhs) {
    for (std::size_t i = 0; i + 1 < rhs.size(); ++i) {
        const auto& op = rhs[i];
        if (!(op.is_op("/") || op.is_op("//") || op.is_op(">>") || op.is_op(">>>"))) continue;
        auto n = number_value(rhs[i + 1]);
        if (!n) continue;
        if ((op.is_op(">>") || op.is_op(">>>")) ? *n == 1 : *n == 2) return true;
    }
    return false;
}

std::vector<Fragment> statement_fragments(const Statement& s) {
    if (s.loop) return {s.loop->init, s.loop->condition, s.loop->update, s.loop->target, s.loop->iterable};
    return {s.text};
}

// Token run `1 << n`, `2 ** n`, `pow(2, n)` with n input-sized.
bool exponential_bound(const std::vector<Token>& toks, const InputVars& vars) {
    auto sized_after = [&](std::size_t from) {
        int depth = 0;
        for (std::size_t j = from; j < toks.size(); ++j) {
            const auto& t = toks[j];
            if (is_open(t)) ++depth;
            else if (is_close(t)) {
                if (depth == 0) return false;
                --depth;
            } else if (t.kind == TokenKind::Identifier && vars.is_sized(t.text)) {
                return true;
            }
            if (depth == 0) return false;
        }
        return false;
    };
    for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
        auto n = number_value(toks[i]);
        if (n && *n == 1 && toks[i + 1].is_op("<<") && sized_after(i + 2)) return true;
        if (n && *n == 2 && toks[i + 1].is_op("**") && sized_after(i + 2)) return true;
    }
    for (const auto& c : frontend::find_calls(as_fragment(toks))) {
        if (c.callee != "pow" || c.args.size() < 2) continue;
        if (c.args[0].tokens.size() != 1 || number_value(c.args[0].tokens[0]) != 2) continue;
        for (const auto& name : variable_names(c.args[1].tokens)) {
            if (vars.is_sized(name)) return true;
        }
    }
    return false;
}

TermKind classify_bound(const std::vector<Token>& toks, const std::set<std::string>& exclude, const InputVars& vars) {
    if (toks.empty()) return TermKind::N;
    if (exponential_bound(toks, vars)) return TermKind::Exp;
    const auto frag = as_fragment(toks);
    if (has_input_call(frag)) return TermKind::N;
    bool literal = false;
    bool unknown = false;
    for (const auto& t : toks) literal |= t.kind == TokenKind::Number || t.kind == TokenKind::String;
    for (const auto& name : variable_names(toks)) {
        if (exclude.contains(name)) continue;
        if (vars.is_sized(name)) return TermKind::N;
        if (!vars.constants.contains(name)) unknown = true;
    }
    if (unknown) return TermKind::N;
    return literal ? TermKind::One : TermKind::N;
}

std::vector<Assignment> block_assignments(const StatementBlock& block, Language lang) {
    std::vector<Assignment> out;
    frontend::walk(block, [&](const Statement& s, std::size_t) {
        if (s.kind == StmtKind::FunctionDef) return;
        for (const auto& f : statement_fragments(s)) {
            if (f.empty()) continue;
            auto a = assignments(f, lang);
            out.insert(out.end(), a.begin(), a.end());
        }
    });
    return out;
}

bool is_refill_condition(const Fragment& cond) {
    static const std::unordered_set<std::string_view> names = {
        "hasMoreTokens", "hasMoreElements", "isSpaceChar", "isWhitespace", "read",
    };
    for (const auto& c : frontend::find_calls(cond)) {
        if (names.contains(c.callee)) return true;
    }
    return false;
}

std::set<std::string> loop_variables(const Statement& loop, Language lang) {
    std::set<std::string> vars;
    const auto& lp = *loop.loop;
    for (const auto* f : {&lp.init, &lp.update}) {
        for (const auto& a : assignments(*f, lang)) vars.insert(a.targets.begin(), a.targets.end());
    }
    for (const auto& name : variable_names(lp.target.tokens)) vars.insert(name);
    return vars;
}

std::string shorten(const std::string& text) {
    std::string s;
    bool space = false;
    for (char c : text) {
        if (c == '\n' || c == '\t' || c == ' ') {
            space = !s.empty();
            continue;
        }
        if (space) s += ' ';
        space = false;
        s += c;
    }
    if (s.size() > 60) s = s.substr(0, 57) + "...";
    return s;
}

std::string loop_header_text(const Statement& s) {
    const auto& lp = *s.loop;
    switch (lp.style) {
        case LoopStyle::JavaFor:
            return "for (" + lp.init.text + "; " + lp.condition.text + "; " + lp.update.text + ")";
        case LoopStyle::JavaForEach: return "for (" + lp.target.text + " : " + lp.iterable.text + ")";
        case LoopStyle::JavaWhile: return "while (" + lp.condition.text + ")";
        case LoopStyle::JavaDoWhile: return "do ... while (" + lp.condition.text + ")";
        case LoopStyle::PythonFor: return "for " + lp.target.text + " in " + lp.iterable.text;
        case LoopStyle::PythonWhile: return "while " + lp.condition.text;
    }
    return s.text.text;
}

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

// ---------------------------------------------------------------------------
// Input variables

InputVars input_variables(const StructuralIR& ir) {
    struct Flow {
        std::vector<std::string> targets;
        std::vector<std::string> sources;
        bool from_input = false;
        bool literal_only = false;
    };
    std::vector<Flow> flows;
    InputVars vars;
    const Language lang = ir.language;

    auto add_assignment = [&](const Assignment& a) {
        Flow f;
        f.targets = a.targets;
        f.sources = variable_names(a.rhs);
        if (a.op != "=") f.sources.insert(f.sources.end(), a.targets.begin(), a.targets.end());
        f.from_input = has_input_call(as_fragment(a.rhs));
        bool has_call = !frontend::find_calls(as_fragment(a.rhs)).empty();
        f.literal_only = a.op == "=" && f.sources.empty() && !has_call && !a.rhs.empty();
        flows.push_back(std::move(f));
    };

    auto visit = [&](const StatementBlock& block) {
        frontend::walk(block, [&](const Statement& s, std::size_t) {
            if (s.kind == StmtKind::FunctionDef) return;
            if (s.loop) {
                const auto& lp = *s.loop;
                for (const auto* frag : {&lp.init, &lp.update}) {
                    for (const auto& a : assignments(*frag, lang)) add_assignment(a);
                }
                // Loop variables inherit the size of whatever bounds them.
                const auto own = loop_variables(s, lang);
                Flow f;
                f.targets.assign(own.begin(), own.end());
                for (const auto* frag : {&lp.condition, &lp.iterable}) {
                    for (auto& name : variable_names(frag->tokens)) {
                        if (!own.contains(name)) f.sources.push_back(name);
                    }
                    f.from_input = f.from_input || has_input_call(*frag);
                }
                if (!f.targets.empty()) flows.push_back(std::move(f));
                for (const auto& a : container_fills(lp.condition)) add_assignment(a);
                return;
            }
            for (const auto& a : assignments(s.text, lang)) add_assignment(a);
            for (const auto& a : container_fills(s.text)) add_assignment(a);
        });
    };
    visit(ir.top_level);
    for (const auto& fn : ir.functions) {
        visit(fn.body);
        for (const auto& p : fn.params) {
            if (p != "self" && p != "cls") vars.sized.insert(p);
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& f : flows) {
            bool sized = f.from_input;
            for (const auto& s : f.sources) sized = sized || vars.sized.contains(s);
            if (!sized) continue;
            for (const auto& t : f.targets) changed |= vars.sized.insert(t).second;
        }
    }

    std::set<std::string> assigned;
    std::set<std::string> non_constant;
    for (const auto& f : flows) {
        for (const auto& t : f.targets) {
            assigned.insert(t);
            if (!f.literal_only) non_constant.insert(t);
        }
    }
    for (const auto& name : assigned) {
        if (!non_constant.contains(name) && !vars.sized.contains(name)) vars.constants.insert(name);
    }
    return vars;
}

// ---------------------------------------------------------------------------
// Loops

TermKind loop_level_cost(const Statement& loop, const InputVars& vars, Language lang) {
    const auto& lp = *loop.loop;
    switch (lp.style) {
        case LoopStyle::PythonFor:
        case LoopStyle::JavaForEach:
            return classify_bound(lp.iterable.tokens, {}, vars);
        case LoopStyle::JavaFor: {
            for (const auto& a : assignments(lp.update, lang)) {
                if (is_geometric_update(a)) return TermKind::Log;
            }
            if (!lp.update.empty()) return classify_bound(lp.condition.tokens, loop_variables(loop, lang), vars);
            break;  // `for (; cond;)` behaves like a while loop
        }
        case LoopStyle::JavaWhile:
        case LoopStyle::JavaDoWhile:
        case LoopStyle::PythonWhile:
            break;
    }

    const auto& cond = lp.condition;
    if (is_refill_condition(cond)) return TermKind::One;
    const auto cond_names = variable_names(cond.tokens);
    const std::set<std::string> cond_set(cond_names.begin(), cond_names.end());

    auto body = block_assignments(loop.body, lang);
    auto in_cond = assignments(cond, lang);
    body.insert(body.end(), in_cond.begin(), in_cond.end());

    std::set<std::string> modified;
    for (const auto& a : body) {
        for (const auto& t : a.targets) {
            if (!cond_set.contains(t)) continue;
            modified.insert(t);
            if (is_geometric_update(a)) return TermKind::Log;
            for (const auto& c : frontend::find_calls(as_fragment(a.rhs))) {
                if (c.callee == "read") return TermKind::One;
            }
        }
    }
    if (cond_set.size() >= 2) {
        for (const auto& a : body) {
            if (!is_halving_expression(a.rhs)) continue;
            const auto names = variable_names(a.rhs);
            std::size_t shared = 0;
            for (const auto& n : std::set<std::string>(names.begin(), names.end())) shared += cond_set.contains(n);
            if (shared >= 2) return TermKind::Log;
        }
    }
    std::set<std::string> exclude;
    for (const auto& m : modified) {
        if (!vars.is_sized(m)) exclude.insert(m);
    }
    return classify_bound(cond.tokens, exclude, vars);
}

namespace {

struct Chain {
    std::vector<TermKind> levels;
    TermKind product = TermKind::One;
};

void collect_nests(const StatementBlock& block, const InputVars& vars, Language lang, std::vector<const Statement*>& out) {
    for (const auto& s : block.statements) {
        if (s.kind == StmtKind::FunctionDef) continue;
        if (s.is_loop()) out.push_back(&s);
        else collect_nests(s.body, vars, lang, out);
    }
}

Chain costliest_chain(const Statement& loop, const InputVars& vars, Language lang) {
    std::vector<const Statement*> inner;
    collect_nests(loop.body, vars, lang, inner);
    Chain best;
    for (const auto* child : inner) {
        auto c = costliest_chain(*child, vars, lang);
        if (c.product > best.product || (c.product == best.product && c.levels.size() > best.levels.size())) {
            best = std::move(c);
        }
    }
    const auto level = loop_level_cost(loop, vars, lang);
    best.levels.insert(best.levels.begin(), level);
    best.product = multiply(level, best.product);
    return best;
}

}  // namespace

std::vector<LoopInfo> detect_loops(const StatementBlock& block, const InputVars& vars, Language lang) {
    std::vector<const Statement*> nests;
    collect_nests(block, vars, lang, nests);
    std::vector<LoopInfo> out;
    for (const auto* loop : nests) {
        auto chain = costliest_chain(*loop, vars, lang);
        LoopInfo info;
        info.depth = chain.levels.size();
        info.cost_per_level = std::move(chain.levels);
        info.location = {loop->line_begin, loop->line_end};
        out.push_back(std::move(info));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

bool is_self_call(const CallSite& c, const std::string& name) {
    if (c.callee != name || c.constructor) return false;
    return !c.member || c.receiver == "this" || c.receiver == "self";
}

Shrink classify_shrink(const CallSite& call, const frontend::FunctionUnit& fn, Language lang) {
    std::set<std::string> halved_locals;
    for (const auto& a : block_assignments(fn.body, lang)) {
        if (is_halving_expression(a.rhs)) halved_locals.insert(a.targets.begin(), a.targets.end());
    }
    bool decrement = false;
    for (const auto& arg : call.args) {
        const auto& t = arg.tokens;
        if (is_halving_expression(t)) return Shrink::Halving;
        for (const auto& name : variable_names(t)) {
            if (halved_locals.contains(name)) return Shrink::Halving;
        }
        for (std::size_t i = 0; i + 2 < t.size(); ++i) {
            if (t[i].kind == TokenKind::Identifier && t[i + 1].is_op("-") && t[i + 2].kind == TokenKind::Number) {
                decrement = true;
            }
        }
    }
    return decrement ? Shrink::Decrement : Shrink::Unknown;
}

std::string_view shrink_name(Shrink s) {
    switch (s) {
        case Shrink::Decrement: return "decrement";
        case Shrink::Halving: return "halving";
        case Shrink::Unknown: break;
    }
    return "unknown";
}

}  // namespace

std::vector<RecursionInfo> detect_recursion(const StructuralIR& ir) {
    std::vector<RecursionInfo> out;
    for (const auto& fn : ir.functions) {
        RecursionInfo info;
        info.function = fn.name;
        const CallSite* first = nullptr;
        for (const auto& c : fn.call_sites) {
            if (!is_self_call(c, fn.name)) continue;
            ++info.self_call_count;
            if (!first) first = &c;
        }
        if (info.self_call_count == 0) continue;
        info.shrink = classify_shrink(*first, fn, ir.language);
        out.push_back(std::move(info));
    }
    return out;
}

ComplexityTerm recursion_cost(const RecursionInfo& info, const ComplexityTerm& body_cost) {
    TermKind kind;
    if (info.self_call_count >= 2) {
        kind = TermKind::Exp;
    } else if (info.shrink == Shrink::Halving) {
        kind = body_cost.kind >= TermKind::N ? TermKind::NLog : multiply(TermKind::Log, body_cost.kind);
    } else {
        kind = multiply(TermKind::N, body_cost.kind);
    }
    ComplexityTerm t;
    t.kind = kind;
    t.trace = body_cost.trace;
    t.trace.push_back("recursion " + info.function + ": " + std::to_string(info.self_call_count) +
                      " self-call(s), " + std::string(shrink_name(info.shrink)) + " argument, body " +
                      std::string(big_o(body_cost.kind)) + " -> " + std::string(big_o(kind)));
    t.summands = {kind};
    return t;
}

std::vector<ComplexityTerm> detect_special_tc(const StatementBlock& block, Language lang) {
    std::vector<ComplexityTerm> out;
    frontend::walk(block, [&](const Statement& s, std::size_t) {
        if (s.kind == StmtKind::FunctionDef) return;
        for (const auto& f : statement_fragments(s)) {
            for (const auto& c : frontend::find_calls(f)) {
                if (frontend::is_sort_call(c, lang)) {
                    out.push_back(ComplexityTerm::of(TermKind::NLog, line_prefix(c.line) + "sort idiom `" + c.callee + "` -> O(N log N)"));
                } else if (frontend::is_binary_search_call(c, lang)) {
                    out.push_back(ComplexityTerm::of(TermKind::Log, line_prefix(c.line) + "binary search `" + c.callee + "` -> O(log N)"));
                }
            }
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Whole-program analysis

namespace {

class Analyzer {
public:
    explicit Analyzer(const StructuralIR& ir) : ir_(ir), vars_(input_variables(ir)) {
        for (const auto& r : detect_recursion(ir)) recursion_[r.function] = r;
    }

    Analysis run() {
        ComplexityTerm entry = entry_cost();
        Analysis a;
        a.term = entry;
        a.cls = to_class(entry.kind);
        a.trace = function_trace_;
        a.trace.insert(a.trace.end(), entry.trace.begin(), entry.trace.end());
        a.trace.push_back("total: " + render_sum(entry));
        a.term.trace = a.trace;
        return a;
    }

private:
    ComplexityTerm entry_cost() {
        if (ir_.language == Language::Java) {
            for (std::size_t i = 0; i < ir_.functions.size(); ++i) {
                if (ir_.functions[i].name == "main") return call_term(i, ir_.functions[i].line_begin, "main");
            }
        } else if (has_executable_top_level()) {
            return block(ir_.top_level);
        }
        std::set<std::string> called;
        for (const auto& fn : ir_.functions) {
            for (const auto& c : fn.call_sites) {
                if (!is_self_call(c, fn.name)) called.insert(c.callee);
            }
        }
        std::vector<ComplexityTerm> roots;
        for (std::size_t i = 0; i < ir_.functions.size(); ++i) {
            const auto& fn = ir_.functions[i];
            if (fn.parent || called.contains(fn.name)) continue;
            roots.push_back(call_term(i, fn.line_begin, fn.name));
        }
        if (roots.empty()) {
            for (std::size_t i = 0; i < ir_.functions.size(); ++i) {
                if (!ir_.functions[i].parent) roots.push_back(call_term(i, ir_.functions[i].line_begin, ir_.functions[i].name));
            }
        }
        return combine_sequence(roots);
    }

    bool has_executable_top_level() const {
        for (const auto& s : ir_.top_level.statements) {
            if (s.kind == StmtKind::FunctionDef) continue;
            if (!s.text.empty()) {
                const auto& first = s.text.tokens.front();
                if (first.is_kw("import") || first.is_kw("from") || first.is_op("@")) continue;
            }
            if (s.kind == StmtKind::Compound && s.text.tokens.size() >= 2 && s.text.tokens.front().is_kw("class")) continue;
            return true;
        }
        return false;
    }

    ComplexityTerm block(const StatementBlock& b) {
        std::vector<ComplexityTerm> parts;
        for (const auto& s : b.statements) parts.push_back(statement(s));
        return combine_sequence(parts);
    }

    ComplexityTerm statement(const Statement& s) {
        if (s.kind == StmtKind::FunctionDef) return {};
        if (s.loop) return loop(s);
        if (s.kind == StmtKind::Compound) return combine_sequence({calls(s.text), block(s.body)});
        return calls(s.text);
    }

    ComplexityTerm loop(const Statement& s) {
        const auto& lp = *s.loop;
        const auto level = loop_level_cost(s, vars_, ir_.language);
        std::vector<ComplexityTerm> once;
        std::vector<ComplexityTerm> each;
        switch (lp.style) {
            case LoopStyle::PythonFor:
            case LoopStyle::JavaForEach:
                once.push_back(calls(lp.iterable));
                break;
            case LoopStyle::JavaFor:
                once.push_back(calls(lp.init));
                each.push_back(calls(lp.condition));
                each.push_back(calls(lp.update));
                break;
            default:
                each.push_back(calls(lp.condition));
                break;
        }
        each.push_back(block(s.body));
        auto header = ComplexityTerm::of(level, line_prefix(s.line_begin) + "loop `" + shorten(loop_header_text(s)) +
                                                    "` repeats " + std::string(big_o(level)) + " times");
        if (level == TermKind::One) header.trace.clear();
        auto body = combine_sequence(each);
        auto nested = combine_nested(header, body);
        if (body.kind != TermKind::One) {
            nested.trace.push_back(line_prefix(s.line_begin) + "loop total " + std::string(big_o(level)) + " x " +
                                   std::string(big_o(body.kind)) + " = " + std::string(big_o(nested.kind)));
        }
        once.push_back(std::move(nested));
        return combine_sequence(once);
    }

    ComplexityTerm calls(const Fragment& f) {
        std::vector<ComplexityTerm> parts;
        for (const auto& c : frontend::find_calls(f)) {
            if (frontend::is_sort_call(c, ir_.language)) {
                parts.push_back(ComplexityTerm::of(TermKind::NLog, line_prefix(c.line) + "sort idiom `" + c.callee + "` -> O(N log N)"));
                continue;
            }
            if (frontend::is_binary_search_call(c, ir_.language)) {
                parts.push_back(ComplexityTerm::of(TermKind::Log, line_prefix(c.line) + "binary search `" + c.callee + "` -> O(log N)"));
                continue;
            }
            if (c.constructor) continue;
            if (!current_.empty() && is_self_call(c, ir_.functions[current_.back()].name)) continue;
            if (auto idx = resolve(c.callee)) parts.push_back(call_term(*idx, c.line, c.callee));
        }
        return combine_sequence(parts);
    }

    std::optional<std::size_t> resolve(const std::string& name) const {
        for (std::size_t i = 0; i < ir_.functions.size(); ++i) {
            if (ir_.functions[i].name == name) return i;
        }
        return std::nullopt;
    }

    ComplexityTerm call_term(std::size_t idx, std::size_t line, const std::string& name) {
        const auto& cost = function_cost(idx);
        ComplexityTerm t;
        t.kind = cost.kind;
        t.summands = cost.summands;
        if (cost.kind != TermKind::One) {
            t.trace.push_back(line_prefix(line) + "call " + name + "() costs " + std::string(big_o(cost.kind)));
        }
        return t;
    }

    const ComplexityTerm& function_cost(std::size_t idx) {
        if (auto it = cache_.find(idx); it != cache_.end()) return it->second;
        static const ComplexityTerm kOne;
        if (std::find(current_.begin(), current_.end(), idx) != current_.end()) return kOne;
        current_.push_back(idx);
        const auto& fn = ir_.functions[idx];
        ComplexityTerm cost = block(fn.body);
        if (auto it = recursion_.find(fn.name); it != recursion_.end()) cost = recursion_cost(it->second, cost);
        current_.pop_back();

        function_trace_.insert(function_trace_.end(), cost.trace.begin(), cost.trace.end());
        function_trace_.push_back("function " + fn.name + "(): " + render_sum(cost));
        cost.trace.clear();
        return cache_.emplace(idx, std::move(cost)).first->second;
    }

    const StructuralIR& ir_;
    InputVars vars_;
    std::map<std::string, RecursionInfo> recursion_;
    std::map<std::size_t, ComplexityTerm> cache_;
    std::vector<std::size_t> current_;
    std::vector<std::string> function_trace_;
};

}  // namespace

Analysis analyze(const StructuralIR& ir) { return Analyzer(ir).run(); }

Analysis analyze(const CodeSnippet& snippet) {
    StructuralIR ir;
    try {
        ir = frontend::parse(snippet);
    } catch (const frontend::ParseError& e) {
        throw AnalysisUnavailable(e.what());
    }
    return analyze(ir);
}

}  // namespace tcpl::symbolic
