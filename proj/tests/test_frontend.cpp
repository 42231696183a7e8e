#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "tcpl/frontend/ir.hpp"

using namespace tcpl;
using namespace tcpl::frontend;

namespace {

CodeSnippet py(const std::string& src) { return {"t", src, Language::Python}; }
CodeSnippet java(const std::string& src) { return {"t", src, Language::Java}; }

std::vector<std::string> names(const StructuralIR& ir) {
    std::vector<std::string> out;
    for (const auto& f : extract_functions(ir)) out.push_back(f.name);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Independent loop oracle: strip comments and literals with regexes, then count
// `for`/`while` keywords (do-while counted once through its `do`).
std::size_t oracle_loop_count(std::string src, Language lang) {
    if (lang == Language::Java) {
        src = std::regex_replace(src, std::regex(R"(/\*[\s\S]*?\*/)"), " ");
        src = std::regex_replace(src, std::regex(R"(//[^\n]*)"), " ");
        src = std::regex_replace(src, std::regex(R"("(\\.|[^"\\])*")"), "\"\"");
        src = std::regex_replace(src, std::regex(R"('(\\.|[^'\\])*')"), "''");
        auto count = [&](const std::regex& re) {
            return static_cast<std::size_t>(std::distance(std::sregex_iterator(src.begin(), src.end(), re), std::sregex_iterator()));
        };
        std::size_t fors = count(std::regex(R"(\bfor\s*\()"));
        std::size_t whiles = count(std::regex(R"(\bwhile\s*\()"));
        std::size_t dos = count(std::regex(R"(\bdo\s*\{)"));
        return fors + whiles - dos;
    }
    src = std::regex_replace(src, std::regex(R"(\"\"\"[\s\S]*?\"\"\")"), "''");
    src = std::regex_replace(src, std::regex(R"(#[^\n]*)"), " ");
    src = std::regex_replace(src, std::regex(R"("(\\.|[^"\\\n])*")"), "''");
    src = std::regex_replace(src, std::regex(R"('(\\.|[^'\\\n])*')"), "''");
    std::size_t n = 0;
    std::istringstream lines(src);
    std::string line;
    std::regex stmt(R"(^\s*(for|while)\b)");
    while (std::getline(lines, line)) n += std::regex_search(line, stmt) ? 1 : 0;
    return n;
}

std::vector<std::filesystem::path> fixture_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(TCPL_FIXTURES)) {
        if (e.is_regular_file() && language_from_extension(e.path())) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("python def is a function unit") {
    auto ir = parse(py("def solve():\n    n = int(input())\n    return n\n"));
    CHECK(names(ir) == std::vector<std::string>{"solve"});
    CHECK(ir.functions[0].body.statements.size() == 2);
    CHECK(ir.functions[0].body.statements[1].kind == StmtKind::Return);
}

TEST_CASE("empty source is a parse error") {
    CHECK_THROWS_AS(parse(py("   \n\t\n")), ParseError);
    CHECK_THROWS_AS(parse(java("")), ParseError);
}

TEST_CASE("java class with main and helper") {
    const std::string src = R"(import java.util.*;
public class Main {
    static int helper(int[] a, int n) {
        int s = 0;
        for (int i = 0; i < n; i++) s += a[i];
        return s;
    }
    public static void main(String[] args) throws Exception {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        System.out.println(helper(new int[n], n));
    }
}
)";
    auto ir = parse(java(src));
    // Independent count: method headers matched by a regex.
    std::regex method(R"((static|public|private)[\w\s\[\]<>]*\s(\w+)\s*\([^;{)]*\)\s*(throws\s+\w+\s*)?\{)");
    auto n = std::distance(std::sregex_iterator(src.begin(), src.end(), method), std::sregex_iterator());
    CHECK(ir.functions.size() == static_cast<std::size_t>(n));
    CHECK(names(ir) == std::vector<std::string>{"helper", "main"});
    CHECK(ir.functions[0].params == std::vector<std::string>{"a", "n"});
    REQUIRE(ir.find_function("main"));
    bool calls_helper = false;
    for (const auto& c : ir.find_function("main")->call_sites) calls_helper |= c.callee == "helper";
    CHECK(calls_helper);
}

TEST_CASE("function-free script has no units") {
    auto ir = parse(py("n = int(input())\nfor i in range(n):\n    print(i)\n"));
    CHECK(extract_functions(ir).empty());
    CHECK(ir.top_level.statements.size() == 2);
    CHECK(ir.top_level.statements[1].kind == StmtKind::ForLoop);
}

TEST_CASE("nested python defs are both listed") {
    auto ir = parse(py("def outer(n):\n    def inner(k):\n        return k + 1\n    return inner(n)\n"));
    REQUIRE(names(ir) == std::vector<std::string>{"outer", "inner"});
    CHECK(!ir.functions[0].parent.has_value());
    CHECK(ir.functions[1].parent == 0u);
    CHECK(ir.functions[0].body.statements[0].kind == StmtKind::FunctionDef);
    CHECK(ir.functions[0].body.statements[0].function_index == 1);
    CHECK(ir.functions[1].line_begin == 2);
    // The inner body does not leak into the outer's call sites except the call itself.
    CHECK(ir.functions[0].call_sites.size() == 1);
}

TEST_CASE("self calls appear in call sites") {
    auto ir = parse(py("def fib(n):\n    if n < 2:\n        return n\n    return fib(n - 1) + fib(n - 2)\n"));
    std::size_t self = 0;
    for (const auto& c : ir.functions[0].call_sites) self += c.callee == "fib";
    CHECK(self == 2);
    CHECK(ir.functions[0].call_sites[0].args.size() == 1);
    CHECK(ir.functions[0].call_sites[0].args[0].text == "n - 1");
}

TEST_CASE("loop parts") {
    auto j = parse(java("class A { void f(int n) { outer: for (int i = 0, j = 1; i < n; i++, j++) { while (j > 0) j /= 2; } } }"));
    const auto& f = j.functions.at(0);
    REQUIRE(f.body.statements.size() == 1);
    const auto& loop = f.body.statements[0];
    REQUIRE(loop.loop);
    CHECK(loop.loop->label == "outer");
    CHECK(loop.loop->init.text == "int i = 0, j = 1");
    CHECK(loop.loop->condition.text == "i < n");
    CHECK(loop.loop->update.text == "i++, j++");
    REQUIRE(loop.body.statements.size() == 1);
    CHECK(loop.body.statements[0].kind == StmtKind::WhileLoop);
    CHECK(loop.body.statements[0].body.statements[0].kind == StmtKind::Assign);

    auto p = parse(py("for a, b in zip(xs, ys):\n    pass\nelse:\n    x = 1\n"));
    const auto& pl = p.top_level.statements[0];
    CHECK(pl.loop->target.text == "a, b");
    CHECK(pl.loop->iterable.text == "zip(xs, ys)");
    CHECK(pl.loop->has_else);
}

TEST_CASE("leaf classification") {
    auto ir = parse(py("a = [3, 1]\na.sort()\nb = sorted(a)\nprint(a)\nreturn_value = 1\nx\n"));
    const auto& s = ir.top_level.statements;
    CHECK(s[0].kind == StmtKind::Assign);
    CHECK(s[1].kind == StmtKind::SortCall);
    CHECK(s[2].kind == StmtKind::SortCall);
    CHECK(s[3].kind == StmtKind::Call);
    CHECK(s[4].kind == StmtKind::Assign);
    CHECK(s[5].kind == StmtKind::Other);
}

TEST_CASE("do-while, switch, try and anonymous classes") {
    const std::string src = R"(class A {
    int x = 3;
    void f(int n) {
        do { n--; } while (n > 0);
        switch (n) {
            case 1: n++; break;
            default: n--;
        }
        try { g(); } catch (Exception e) { n = 0; } finally { n = 1; }
        Runnable r = new Runnable() { public void run() { for (;;) {} } };
        if (n > 0) n = 1; else if (n < 0) n = 2; else { n = 3; }
    }
    void g() {}
}
)";
    auto ir = parse(java(src));
    CHECK(names(ir) == std::vector<std::string>{"f", "g"});
    const auto& body = ir.functions[0].body.statements;
    CHECK(body[0].loop->style == LoopStyle::JavaDoWhile);
    CHECK(body[1].kind == StmtKind::Compound);
    CHECK(body[1].body.statements.size() == 5);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse(java("class A { void f() { for (int i = 0; i < n; i++) { }")), ParseError);
    CHECK_THROWS_AS(parse(py("def f():\nreturn 1\n")), ParseError);
    CHECK_THROWS_AS(parse(py("if x\n    y = 1\n")), ParseError);
    try {
        parse(py("x = 1\n  y = 2\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("loop keywords in strings and comments are ignored") {
    auto ir = parse(py("# for i in range(n):\ns = 'while True'\n\"\"\"\nfor x in y:\n\"\"\"\n"));
    CHECK(count_loops(ir) == 0);
    auto j = parse(java("class A { /* for (;;) */ void f() { String s = \"while(true)\"; // for\n } }"));
    CHECK(count_loops(j) == 0);
}

TEST_CASE("determinism and whitespace insensitivity") {
    const std::string a = "def f(n):\n    for i in range(n):\n        print(i)\n";
    const std::string b = "def f(n):   # c\n\n    for i in range( n ):\n            print(i)\n";
    CHECK(structural_signature(parse(py(a))) == structural_signature(parse(py(a))));
    CHECK(structural_signature(parse(py(a))) == structural_signature(parse(py(b))));
}

TEST_CASE("fixtures: round trip and loop oracle") {
    auto files = fixture_files();
    REQUIRE(files.size() >= 21);
    for (const auto& f : files) {
        CAPTURE(f.string());
        const auto lang = *language_from_extension(f);
        CodeSnippet s{f.filename().string(), slurp(f), lang};
        auto ir = parse(s);
        CodeSnippet printed{s.id, print(ir), lang};
        auto again = parse(printed);
        CHECK(structural_signature(again) == structural_signature(ir));
        CHECK(count_loops(ir) == oracle_loop_count(s.source, lang));
    }
}
