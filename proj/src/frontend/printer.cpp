#include <sstream>

#include "tcpl/frontend/ir.hpp"

namespace tcpl::frontend {

namespace {

class Printer {
public:
    explicit Printer(const StructuralIR& ir) : ir_(ir) {}

    std::string run() {
        block(ir_.top_level, 0);
        return out_.str();
    }

private:
    void line(std::size_t depth, const std::string& text) {
        out_ << std::string(depth * 4, ' ') << text << '\n';
    }

    void block(const StatementBlock& b, std::size_t depth) {
        for (const auto& s : b.statements) statement(s, depth);
    }

    void python_suite(const StatementBlock& b, std::size_t depth) {
        if (b.statements.empty()) line(depth, "pass");
        else block(b, depth);
    }

    void statement(const Statement& s, std::size_t depth) {
        const bool py = ir_.language == Language::Python;
        if (s.kind == StmtKind::FunctionDef) {
            const auto& fn = ir_.functions.at(s.function_index);
            if (py) {
                line(depth, fn.header.text + ":");
                python_suite(fn.body, depth + 1);
            } else {
                braced(fn.header.text, fn.body, depth);
            }
            return;
        }
        if (s.loop) {
            loop(s, depth);
            return;
        }
        if (s.kind == StmtKind::Compound) {
            if (py) {
                line(depth, s.text.text + ":");
                python_suite(s.body, depth + 1);
            } else {
                braced(s.text.text, s.body, depth);
            }
            return;
        }
        line(depth, s.text.text);
    }

    void braced(const std::string& header, const StatementBlock& body, std::size_t depth) {
        line(depth, header.empty() ? "{" : header + " {");
        block(body, depth + 1);
        line(depth, "}");
    }

    void loop(const Statement& s, std::size_t depth) {
        const auto& lp = *s.loop;
        const std::string label = lp.label.empty() ? "" : lp.label + ": ";
        switch (lp.style) {
            case LoopStyle::JavaFor: {
                std::string h = "for (" + lp.init.text + ";";
                h += lp.condition.empty() ? ";" : " " + lp.condition.text + ";";
                if (!lp.update.empty()) h += " " + lp.update.text;
                braced(label + h + ")", s.body, depth);
                return;
            }
            case LoopStyle::JavaForEach:
                braced(label + "for (" + lp.target.text + " : " + lp.iterable.text + ")", s.body, depth);
                return;
            case LoopStyle::JavaWhile:
                braced(label + "while (" + lp.condition.text + ")", s.body, depth);
                return;
            case LoopStyle::JavaDoWhile:
                line(depth, label + "do {");
                block(s.body, depth + 1);
                line(depth, "} while (" + lp.condition.text + ");");
                return;
            case LoopStyle::PythonFor:
                line(depth, "for " + lp.target.text + " in " + lp.iterable.text + ":");
                python_suite(s.body, depth + 1);
                return;
            case LoopStyle::PythonWhile:
                line(depth, "while " + lp.condition.text + ":");
                python_suite(s.body, depth + 1);
                return;
        }
    }

    const StructuralIR& ir_;
    std::ostringstream out_;
};

void tokens_sig(std::ostringstream& out, const Fragment& f) {
    out << '[';
    for (std::size_t i = 0; i < f.tokens.size(); ++i) {
        if (i) out << ' ';
        out << f.tokens[i].text;
    }
    out << ']';
}

void block_sig(std::ostringstream& out, const StructuralIR& ir, const StatementBlock& b);

void statement_sig(std::ostringstream& out, const StructuralIR& ir, const Statement& s) {
    out << to_string(s.kind);
    if (s.kind == StmtKind::FunctionDef) {
        const auto& fn = ir.functions.at(s.function_index);
        out << ' ' << fn.name;
        tokens_sig(out, fn.header);
        block_sig(out, ir, fn.body);
        return;
    }
    if (s.loop) {
        const auto& lp = *s.loop;
        out << '/' << static_cast<int>(lp.style);
        if (!lp.label.empty()) out << " label=" << lp.label;
        if (lp.has_else) out << " else";
        tokens_sig(out, lp.init);
        tokens_sig(out, lp.condition);
        tokens_sig(out, lp.update);
        tokens_sig(out, lp.target);
        tokens_sig(out, lp.iterable);
    } else {
        tokens_sig(out, s.text);
    }
    block_sig(out, ir, s.body);
}

void block_sig(std::ostringstream& out, const StructuralIR& ir, const StatementBlock& b) {
    out << '{';
    for (const auto& s : b.statements) {
        statement_sig(out, ir, s);
        out << ';';
    }
    out << '}';
}

}  // namespace

std::string print(const StructuralIR& ir) { return Printer(ir).run(); }

std::string structural_signature(const StructuralIR& ir) {
    std::ostringstream out;
    out << to_string(ir.language) << ':';
    block_sig(out, ir, ir.top_level);
    return out.str();
}

}  // namespace tcpl::frontend
