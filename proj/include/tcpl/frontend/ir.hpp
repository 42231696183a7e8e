#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcpl/core/dataset.hpp"
#include "tcpl/frontend/token.hpp"

namespace tcpl::frontend {

/// A run of tokens plus its source text (comments removed, spacing kept).
struct Fragment {
    std::string text;
    std::vector<Token> tokens;

    bool empty() const { return tokens.empty(); }
};

Fragment make_fragment(const std::vector<Token>& tokens, std::size_t begin, std::size_t end);
Fragment fragment_from_text(const std::string& text, Language lang);

struct CallSite {
    std::string callee;
    /// Identifier immediately before a '.' preceding the callee ("Arrays" in Arrays.sort).
    std::string receiver;
    std::vector<Fragment> args;
    std::size_t line = 0;
    bool constructor = false;  // Java `new X(...)`
    bool member = false;       // preceded by '.', e.g. xs.sort() or a[i].sort()
};

/// Call expressions appearing anywhere in the fragment, in source order.
std::vector<CallSite> find_calls(const Fragment& f);

enum class StmtKind : std::uint8_t {
    ForLoop,
    WhileLoop,
    Call,
    Assign,
    Return,
    SortCall,
    Other,
    Compound,     // if/else/try/with/switch/class bodies and bare blocks
    FunctionDef,  // placeholder; the function lives in StructuralIR::functions
};

std::string_view to_string(StmtKind k);

enum class LoopStyle : std::uint8_t {
    JavaFor,      // for (init; cond; update)
    JavaForEach,  // for (T x : xs)
    JavaWhile,
    JavaDoWhile,
    PythonFor,    // for target in iterable
    PythonWhile,
};

struct LoopParts {
    LoopStyle style = LoopStyle::JavaFor;
    Fragment init;
    Fragment condition;
    Fragment update;
    Fragment target;
    Fragment iterable;
    std::string label;      // Java statement label
    bool has_else = false;  // Python for/while ... else
};

struct Statement;

struct StatementBlock {
    std::vector<Statement> statements;
};

struct Statement {
    StmtKind kind = StmtKind::Other;
    std::size_t line_begin = 0;
    std::size_t line_end = 0;
    /// Leaf statements: the whole statement. Compound: its header without the
    /// block delimiter (e.g. "if (x)", "else", "with open(f) as g").
    Fragment text;
    std::optional<LoopParts> loop;
    StatementBlock body;
    std::size_t function_index = 0;

    bool is_loop() const { return kind == StmtKind::ForLoop || kind == StmtKind::WhileLoop; }
};

struct FunctionUnit {
    std::string name;
    std::vector<std::string> params;
    /// Declaration header without the body, e.g. "def solve(a, b)" or
    /// "static int gcd(int a, int b)".
    Fragment header;
    StatementBlock body;
    /// Every call expression in the body, nested function bodies excluded.
    std::vector<CallSite> call_sites;
    std::size_t line_begin = 0;
    std::size_t line_end = 0;
    std::optional<std::size_t> parent;  // enclosing function, for nested defs
};

struct StructuralIR {
    Language language = Language::Python;
    std::vector<FunctionUnit> functions;
    /// Everything outside function bodies. Function definitions appear here (or in
    /// class bodies / enclosing functions) as FunctionDef placeholders.
    StatementBlock top_level;

    const FunctionUnit* find_function(std::string_view name) const;
};

/// Parses a Java or Python snippet. Constructs outside the recognized subset become
/// Other statements. Throws ParseError on empty or irrecoverably malformed input.
StructuralIR parse(const CodeSnippet& snippet);

/// The function list (empty for function-free scripts).
const std::vector<FunctionUnit>& extract_functions(const StructuralIR& ir);

/// Canonical source rendering. Comments are not preserved.
std::string print(const StructuralIR& ir);

/// Token-level shape of the IR: statement kinds, nesting, and token texts, without
/// line numbers or spacing. Equal signatures mean structurally identical IRs.
std::string structural_signature(const StructuralIR& ir);

/// Applies fn to every statement in pre-order, descending into loop and compound
/// bodies (not into function bodies reached via placeholders).
template <typename Fn>
void walk(const StatementBlock& block, Fn&& fn, std::size_t depth = 0) {
    for (const auto& s : block.statements) {
        fn(s, depth);
        walk(s.body, fn, depth + 1);
    }
}

template <typename Fn>
void walk_mut(StatementBlock& block, Fn&& fn) {
    for (auto& s : block.statements) {
        fn(s);
        walk_mut(s.body, fn);
    }
}

/// Number of loop statements in the whole program.
std::size_t count_loops(const StructuralIR& ir);

}  // namespace tcpl::frontend
