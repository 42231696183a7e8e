#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tcpl/augment/augment.hpp"
#include "tcpl/symbolic/analyzer.hpp"

using namespace tcpl;
using namespace tcpl::augment;
using frontend::StmtKind;
namespace fs = std::filesystem;

namespace {

CodeSnippet java(const std::string& src, const std::string& id = "j") { return {id, src, Language::Java}; }
CodeSnippet py(const std::string& src, const std::string& id = "p") { return {id, src, Language::Python}; }

std::vector<CodeSnippet> fixtures() {
    std::vector<CodeSnippet> out;
    for (const char* dir : {"oracle", "regression"}) {
        std::vector<fs::path> paths;
        for (const auto& e : fs::directory_iterator(fs::path(TCPL_FIXTURES) / dir)) paths.push_back(e.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            std::ifstream in(p);
            std::stringstream ss;
            ss << in.rdbuf();
            out.push_back({p.stem().string(), ss.str(), *language_from_extension(p)});
        }
    }
    return out;
}

std::vector<StmtKind> loop_kinds(const frontend::StructuralIR& ir) {
    std::vector<StmtKind> out;
    auto collect = [&](const frontend::StatementBlock& b) {
        frontend::walk(b, [&](const frontend::Statement& s, std::size_t) {
            if (s.is_loop()) out.push_back(s.kind);
        });
    };
    collect(ir.top_level);
    for (const auto& fn : ir.functions) collect(fn.body);
    return out;
}

std::optional<std::string> run_python(const std::string& source) {
    static int counter = 0;
    const auto path = fs::temp_directory_path() / ("tcpl_lc_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".py");
    std::ofstream(path) << source;
    FILE* pipe = ::popen(("python3 '" + path.string() + "' 2>&1").c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    std::array<char, 512> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    fs::remove(path);
    if (status != 0) return std::nullopt;
    return out;
}

bool have_python() { return run_python("print(1)\n") == std::string("1\n"); }

std::string mock_command(const std::string& mode) { return std::string(TCPL_MOCK_AUGMENTER) + " --mode " + mode; }

}  // namespace

TEST_CASE("java for becomes a scoped init, while, and trailing update") {
    const auto src = java("class A { void f() { for (int i = 0; i < 5; i++) { System.out.println(i); } } }");
    const auto out = for_to_while(frontend::parse(src), 1);
    CHECK(out.find("int i = 0;") != std::string::npos);
    CHECK(out.find("while (i < 5)") != std::string::npos);
    CHECK(out.find("for") == std::string::npos);

    const auto ir = frontend::parse(java(out));
    const auto& body = ir.functions.at(0).body.statements;
    REQUIRE(body.size() == 1);
    REQUIRE(body[0].kind == StmtKind::Compound);
    const auto& inner = body[0].body.statements;
    REQUIRE(inner.size() == 2);
    CHECK(inner[0].text.text == "int i = 0;");
    REQUIRE(inner[1].kind == StmtKind::WhileLoop);
    CHECK(inner[1].body.statements.back().text.text == "i++;");
}

TEST_CASE("java for with an expression init and comma updates") {
    const auto src = java("class A { void f(int n) { int i, j; for (i = 0, j = n; i < j; i++, j--) { n++; } } }");
    const auto ir = frontend::parse(java(for_to_while(frontend::parse(src), 1)));
    const auto& body = ir.functions.at(0).body.statements;
    REQUIRE(body.size() == 4);
    CHECK(body[1].text.text == "i = 0;");
    CHECK(body[2].text.text == "j = n;");
    REQUIRE(body[3].kind == StmtKind::WhileLoop);
    const auto& w = body[3].body.statements;
    REQUIRE(w.size() == 3);
    CHECK(w[1].text.text == "i++;");
    CHECK(w[2].text.text == "j--;");
}

TEST_CASE("java for with an empty condition becomes while (true)") {
    const auto src = java("class A { void f() { for (int i = 0;; i++) { if (i > 3) break; } } }");
    CHECK(for_to_while(frontend::parse(src), 1).find("while (true)") != std::string::npos);
}

TEST_CASE("continue blocks update hoisting") {
    const auto j = java("class A { void f(int n) { for (int i = 0; i < n; i++) { if (i % 2 == 0) continue; n--; } } }");
    CHECK_THROWS_AS(for_to_while(frontend::parse(j), 1), UnsupportedLoopForm);

    const auto labelled = java(
        "class A { void f(int n) { outer: for (int i = 0; i < n; i++) { for (int j = 0; j < n; j++) { continue outer; } } } }");
    CHECK_THROWS_AS(for_to_while(frontend::parse(labelled), 1), UnsupportedLoopForm);
    // The inner loop's own continue does not reach the outer one.
    const auto inner_only = java(
        "class A { void f(int n) { for (int i = 0; i < n; i++) { for (int j = 0; j < n; j++) { continue; } } } }");
    CHECK_NOTHROW(for_to_while(frontend::parse(inner_only), 1));

    const auto p = py("n = 5\nfor i in range(n):\n    if i == 2:\n        continue\n    print(i)\n");
    CHECK_THROWS_AS(for_to_while(frontend::parse(p), 2), UnsupportedLoopForm);
}

TEST_CASE("java while becomes for with empty init and the trailing update") {
    const auto src = java("class A { void f(int n) { int i = 0; while (i < 10) { n += i; i++; } } }");
    const auto out = while_to_for(frontend::parse(src), 1);
    CHECK(out.find("for (; i < 10; i++)") != std::string::npos);
    const auto ir = frontend::parse(java(out));
    const auto& loop = ir.functions.at(0).body.statements.at(1);
    REQUIRE(loop.kind == StmtKind::ForLoop);
    CHECK(loop.body.statements.size() == 1);

    const auto dec = java("class A { void f(int t) { while (t-- > 0) { System.out.println(t); } } }");
    const auto dec_out = while_to_for(frontend::parse(dec), 1);
    const auto dir = frontend::parse(java(dec_out));
    const auto& l2 = dir.functions.at(0).body.statements.at(0);
    REQUIRE(l2.kind == StmtKind::ForLoop);
    CHECK(l2.loop->init.empty());
    CHECK(l2.loop->update.empty());
    CHECK(l2.loop->condition.text == "t-- > 0");

    const auto refill = java(
        "class A { void f() { while (!st.hasMoreTokens()) { st = new StringTokenizer(in.readLine()); } } }");
    CHECK(while_to_for(frontend::parse(refill), 1).find("for (; !st.hasMoreTokens(); st = new StringTokenizer(in.readLine()))") !=
          std::string::npos);

    const auto do_while = java("class A { void f(int n) { do { n--; } while (n > 0); } }");
    CHECK_THROWS_AS(while_to_for(frontend::parse(do_while), 1), UnsupportedLoopForm);
}

TEST_CASE("python range loop becomes counter while") {
    const auto src = py("n = int(input())\ns = 0\nfor i in range(n):\n    s += i\nprint(s)\n");
    const auto out = for_to_while(frontend::parse(src), 3);
    CHECK(out == "n = int(input())\ns = 0\ni = 0\nwhile i < n:\n    s += i\n    i += 1\nprint(s)\n");

    const auto down = py("for k in range(10, 0, -3):\n    print(k)\n");
    CHECK(for_to_while(frontend::parse(down), 1) == "k = 10\nwhile k > 0:\n    print(k)\n    k -= 3\n");
}

TEST_CASE("python loops without a faithful counterpart are refused") {
    auto refuses = [](const std::string& src, std::size_t line, bool to_while) {
        const auto ir = frontend::parse(py(src));
        if (to_while) CHECK_THROWS_AS(for_to_while(ir, line), UnsupportedLoopForm);
        else CHECK_THROWS_AS(while_to_for(ir, line), UnsupportedLoopForm);
    };
    refuses("while True:\n    x = input()\n    if x == 'q':\n        break\n", 1, false);
    refuses("for x in xs:\n    print(x)\n", 1, true);
    refuses("for i in range(3):\n    print(i)\nelse:\n    print('done')\n", 1, true);
    refuses("for i in range(n):\n    i += 2\n", 1, true);
    refuses("for i in range(len(xs)):\n    xs.append(i)\n", 1, true);
    refuses("for i in range(f(n)):\n    print(i)\n", 1, true);
    refuses("for i in range(0, n, k):\n    print(i)\n", 1, true);
    refuses("for i in range(n):\n    pass\nprint(i)\n", 1, true);
    refuses("i = 0\nwhile i < n:\n    i += 1\nprint(i)\n", 2, false);
    refuses("while i < n:\n    i += 1\n", 1, false);
    refuses("i = 0\nwhile i < n:\n    i *= 2\n", 2, false);
    refuses("i = 0\nwhile i < n:\n    n -= 1\n    i += 1\n", 2, false);
    CHECK_THROWS_AS(for_to_while(frontend::parse(py("x = 1\n")), 1), UnsupportedLoopForm);
}

TEST_CASE("python counter while becomes range for") {
    const auto src = py("n = 5\ni = 1\nwhile i <= n:\n    print(i)\n    i += 2\n");
    CHECK(while_to_for(frontend::parse(src), 3) == "n = 5\nfor i in range(1, (n) + 1, 2):\n    print(i)\n");
}

TEST_CASE("loop_convert presence and labels") {
    const LabeledExample loop_free{py("print(int(input()) * 2)\n", "a"), ComplexityClass::Constant};
    CHECK_FALSE(loop_convert(loop_free).has_value());
    CHECK_FALSE(contains_loop(loop_free.snippet));

    const LabeledExample single{py("n = int(input())\nfor i in range(n):\n    print(i)\n", "b"), ComplexityClass::Linear};
    const auto aug = loop_convert(single);
    REQUIRE(aug.has_value());
    CHECK(aug->method == AugMethod::LC);
    CHECK(aug->label == ComplexityClass::Linear);
    CHECK(aug->original == "b");
    CHECK(aug->snippet.id == "b#lc");

    const LabeledExample unparseable{py("def f(:\n", "c"), ComplexityClass::Linear};
    CHECK_FALSE(loop_convert(unparseable).has_value());

    const LabeledExample only_unsupported{py("for x in xs:\n    print(x)\n", "d"), ComplexityClass::Linear};
    CHECK_FALSE(loop_convert(only_unsupported).has_value());
}

TEST_CASE("mixed for and while are both flipped in one output") {
    const LabeledExample mixed{
        java("class A { void f(int n) { for (int i = 0; i < n; i++) { n--; } int j = 0; while (j < n) { j++; } } }"),
        ComplexityClass::Linear};
    const auto before = loop_kinds(frontend::parse(mixed.snippet));
    REQUIRE(before == std::vector<StmtKind>{StmtKind::ForLoop, StmtKind::WhileLoop});
    const auto aug = loop_convert(mixed);
    REQUIRE(aug.has_value());
    CHECK(loop_kinds(frontend::parse(aug->snippet)) == std::vector<StmtKind>{StmtKind::WhileLoop, StmtKind::ForLoop});
}

TEST_CASE("nested loops convert bottom-up") {
    const LabeledExample nested{
        py("n = int(input())\nt = 0\nfor i in range(n):\n    j = 0\n    while j < i:\n        t += j\n        j += 1\nprint(t)\n"),
        ComplexityClass::Quadratic};
    const auto aug = loop_convert(nested);
    REQUIRE(aug.has_value());
    CHECK(loop_kinds(frontend::parse(aug->snippet)) == std::vector<StmtKind>{StmtKind::WhileLoop, StmtKind::ForLoop});
    CHECK(symbolic::analyze(aug->snippet).cls == ComplexityClass::Quadratic);
}

TEST_CASE("class is invariant under loop conversion on every convertible fixture") {
    // Snippets with loops that the converter leaves alone, and why.
    const std::set<std::string> unconvertible = {
        "logn_1",         // while n > 0 with a halving update: no counter pattern
        "count_in_loop",  // iterates a list, not a range
        "constant_3",     // iterates a literal list
    };
    std::size_t converted = 0;
    for (const auto& s : fixtures()) {
        CAPTURE(s.id);
        const auto cls = symbolic::analyze(s).cls;
        const auto aug = loop_convert({s, cls});
        if (!contains_loop(s)) {
            CHECK_FALSE(aug.has_value());
            continue;
        }
        CHECK(aug.has_value() == !unconvertible.contains(s.id));
        if (!aug) continue;
        ++converted;
        CHECK(symbolic::analyze(aug->snippet).cls == cls);
        CHECK(aug->label == cls);

        // Involution up to class.
        const auto twice = loop_convert(aug->as_labeled());
        REQUIRE(twice.has_value());
        CHECK(symbolic::analyze(twice->snippet).cls == cls);
    }
    CHECK(converted == 15);
}

TEST_CASE("loop conversion is deterministic and pure") {
    for (const auto& s : fixtures()) {
        const LabeledExample ex{s, ComplexityClass::Linear};
        const auto a = loop_convert(ex);
        const auto b = loop_convert(ex);
        CHECK(a.has_value() == b.has_value());
        if (a && b) CHECK(a->snippet.source == b->snippet.source);
    }
}

TEST_CASE("converted python programs print the same output") {
    if (!have_python()) {
        MESSAGE("python3 not available; differential execution skipped");
        return;
    }
    const std::vector<std::string> programs = {
        "n = 7\ntotal = 0\nfor i in range(n):\n    for j in range(i, n, 2):\n        total += i * j\nprint(total)\n",
        "acc = []\nfor k in range(10, 0, -3):\n    acc.append(k)\nprint(acc)\n",
        "n = 6\ni = 1\ns = 0\nwhile i <= n:\n    s += i * i\n    i += 1\nprint(s)\n",
        "x = 0\nfor i in range(5):\n    x += i\nprint(i, x)\nj = 0\nwhile j < 3:\n    x -= j\n    j += 1\nprint(x)\n",
        "res = 0\nfor a in range(4):\n    b = 0\n    while b < a:\n        if a * b > 4:\n            break\n        res += a + b\n        b += 1\nprint(res)\n",
        "xs = [1, 2, 3]\nfor i in range(len(xs)):\n    if i < 3:\n        xs.append(i)\nprint(xs)\n",
        "def f(n):\n    s = 0\n    i = n\n    while i > 0:\n        s += i\n        i -= 2\n    return s\nprint(f(9), f(0))\n",
        "m = 4\nfor r in range(1, m + 1):\n    line = ''\n    for c in range(r):\n        line += str(c)\n    print(line)\n",
    };
    for (const auto& src : programs) {
        CAPTURE(src);
        const LabeledExample ex{py(src), ComplexityClass::Linear};
        const auto aug = loop_convert(ex);
        const auto before = run_python(src);
        REQUIRE(before.has_value());
        if (!aug) continue;
        CAPTURE(aug->snippet.source);
        CHECK(run_python(aug->snippet.source) == before);
        const auto twice = loop_convert(aug->as_labeled());
        if (twice) CHECK(run_python(twice->snippet.source) == before);
    }
}

TEST_CASE("prompts carry the languages and the code") {
    const auto s = java("class A {}");
    const auto bt = backtranslation_prompt(s);
    CHECK(bt.find("class A {}") != std::string::npos);
    CHECK(bt.find("Java") != std::string::npos);
    CHECK(bt.find("Python") != std::string::npos);
    CHECK(bt.find('{' + std::string("code}")) == std::string::npos);
    CHECK(bt.find("language}") == std::string::npos);
    const auto lc = loop_conversion_prompt(py("print(1)"));
    CHECK(lc.find("print(1)") != std::string::npos);
    CHECK(lc.find("language}") == std::string::npos);
}

TEST_CASE("mock augmenter outcomes") {
    const auto s = py("n = int(input())\ntotal = 0\nfor i in range(n):\n    total += i\nprint(total)\n", "s1");

    SUBCASE("renamed variables are accepted") {
        SubprocessBacktranslator bt(mock_command("rename"));
        const auto out = external_backtranslate(s, bt);
        CHECK(out.id == "s1#bt");
        CHECK(out.language == Language::Python);
        CHECK(out.source.find("total_v") != std::string::npos);
        CHECK(symbolic::analyze(out).cls == symbolic::analyze(s).cls);
    }
    SUBCASE("identical code is rejected") {
        SubprocessBacktranslator bt(mock_command("identity"));
        CHECK_THROWS_AS(external_backtranslate(s, bt), InvalidAugmentation);
    }
    SUBCASE("whitespace-only changes are rejected too") {
        CachedBacktranslator bt(std::map<std::string, std::string>{{"s1", "n = int(input())\n\ntotal  =  0\nfor i in range(n):\n    total += i   # sum\nprint(total)\n"}});
        CHECK_THROWS_AS(external_backtranslate(s, bt), InvalidAugmentation);
    }
    SUBCASE("unparseable code is rejected") {
        SubprocessBacktranslator bt(mock_command("garbage"));
        CHECK_THROWS_AS(external_backtranslate(s, bt), InvalidAugmentation);
    }
    SUBCASE("backend errors surface") {
        SubprocessBacktranslator bt(mock_command("error"));
        CHECK_THROWS_WITH_AS(external_backtranslate(s, bt), "AugmenterError: mock failure", AugmenterError);
    }
    SUBCASE("a backend that exits is an error, not a hang") {
        SubprocessBacktranslator bt(mock_command("exit"));
        CHECK_THROWS_AS(external_backtranslate(s, bt), AugmenterError);
    }
    SUBCASE("a missing program is unavailable") {
        CHECK_THROWS_AS(SubprocessBacktranslator("/nonexistent/augmenter --x"), AugmenterUnavailable);
    }
}

TEST_CASE("cached translations load from JSONL") {
    const auto path = fs::temp_directory_path() / ("tcpl_bt_cache_" + std::to_string(::getpid()) + ".jsonl");
    std::ofstream(path) << "{\"id\": \"a\", \"code\": \"x = 2\\n\"}\n\n{\"id\": \"b\", \"code\": \"y = 3\\n\"}\n";
    auto cache = CachedBacktranslator::load(path);
    CHECK(cache.backtranslate(py("x = 1\n", "a")) == "x = 2\n");
    CHECK_THROWS_AS(cache.backtranslate(py("x = 1\n", "zzz")), AugmenterError);
    std::ofstream(path) << "{\"id\": \"a\"}\n";
    CHECK_THROWS_WITH_AS(CachedBacktranslator::load(path), doctest::Contains(":1:"), DataError);
    fs::remove(path);
    CHECK_THROWS_AS(CachedBacktranslator::load(path), IoError);
}

TEST_CASE("augment_dataset") {
    // 5 per class built from the fixture corpus.
    std::vector<LabeledExample> labeled;
    const auto corpus = fixtures();
    for (auto cls : kAllClasses) {
        std::vector<CodeSnippet> of_class;
        for (const auto& s : corpus) {
            if (s.id.rfind(std::string(to_string(cls)) + "_", 0) == 0) of_class.push_back(s);
        }
        REQUIRE(of_class.size() == 3);
        for (int k = 0; k < 5; ++k) {
            auto s = of_class[k % 3];
            s.id = std::string(to_string(cls)) + "-" + std::to_string(k);
            labeled.push_back({s, cls});
        }
    }
    REQUIRE(labeled.size() == 35);

    SUBCASE("bt without a backend") {
        CHECK_THROWS_AS(augment_dataset(labeled, {AugKind::BT, Sampling::Natural}, nullptr), AugmenterUnavailable);
        CHECK_THROWS_AS(augment_dataset(labeled, {AugKind::BTPlusLC, Sampling::Natural}, nullptr), AugmenterUnavailable);
        CHECK_NOTHROW(augment_dataset(labeled, {AugKind::LC, Sampling::Natural}, nullptr));
    }
    SUBCASE("bt doubles the set when every translation is valid") {
        SubprocessBacktranslator bt(mock_command("rename"));
        const auto r = augment_dataset(labeled, {AugKind::BT, Sampling::Natural}, &bt);
        CHECK(r.bt_rejected == 0);
        CHECK(labeled.size() + r.examples.size() == 70);
    }
    SUBCASE("lc adds one per convertible example") {
        std::size_t convertible = 0;
        for (const auto& ex : labeled) convertible += loop_convert(ex).has_value();
        const auto r = augment_dataset(labeled, {AugKind::LC, Sampling::Natural}, nullptr);
        CHECK(r.examples.size() == convertible);
        CHECK(r.lc_skipped == labeled.size() - convertible);
        for (const auto& a : r.examples) CHECK(a.method == AugMethod::LC);
    }
    SUBCASE("bt+lc is the union, labels copied, ids fresh") {
        SubprocessBacktranslator bt(mock_command("rename"));
        const auto r = augment_dataset(labeled, {AugKind::BTPlusLC, Sampling::Artificial}, &bt);
        std::size_t convertible = 0;
        for (const auto& ex : labeled) convertible += loop_convert(ex).has_value();
        CHECK(r.examples.size() == labeled.size() + convertible);

        std::map<std::string, ComplexityClass> by_id;
        for (const auto& ex : labeled) by_id[ex.snippet.id] = ex.label;
        std::set<std::string> ids;
        for (const auto& ex : labeled) ids.insert(ex.snippet.id);
        for (const auto& a : r.examples) {
            REQUIRE(by_id.contains(a.original));
            CHECK(a.label == by_id[a.original]);
            CHECK(ids.insert(a.snippet.id).second);
        }
    }
    SUBCASE("loop-free sets gain nothing from lc") {
        std::vector<LabeledExample> flat = {{py("print(1)\n", "x"), ComplexityClass::Constant},
                                            {java("class A { void f() { int x = 1; } }", "y"), ComplexityClass::Constant}};
        CHECK(augment_dataset(flat, {AugKind::LC, Sampling::Natural}, nullptr).examples.empty());
    }
    SUBCASE("rejected translations are counted, not fatal") {
        SubprocessBacktranslator bt(mock_command("identity"));
        const auto r = augment_dataset(labeled, {AugKind::BT, Sampling::Natural}, &bt);
        CHECK(r.examples.empty());
        CHECK(r.bt_rejected == labeled.size());
    }
}

TEST_CASE("augmented ids never collide with inputs") {
    const auto loop = std::string("n = int(input())\nfor i in range(n):\n    print(i)\n");
    const std::vector<LabeledExample> tricky = {
        {py(loop, "a"), ComplexityClass::Linear},
        {py(loop, "a#lc"), ComplexityClass::Linear},
        {py(loop, "a#lc.2"), ComplexityClass::Linear},
    };
    const auto r = augment_dataset(tricky, {AugKind::LC, Sampling::Natural}, nullptr);
    REQUIRE(r.examples.size() == 3);
    std::set<std::string> ids = {"a", "a#lc", "a#lc.2"};
    for (const auto& a : r.examples) CHECK(ids.insert(a.snippet.id).second);
}

TEST_CASE("strategy names") {
    for (auto k : {AugKind::None, AugKind::BT, AugKind::LC, AugKind::BTPlusLC}) CHECK(parse_aug_kind(to_string(k)) == k);
    CHECK(parse_aug_kind("bt_plus_lc") == AugKind::BTPlusLC);
    CHECK_FALSE(parse_aug_kind("BT").has_value());
    for (auto s : {Sampling::Natural, Sampling::Artificial}) CHECK(parse_sampling(to_string(s)) == s);
}
