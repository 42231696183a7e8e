#include "tcpl/symbolic/term.hpp"

#include <algorithm>

namespace tcpl::symbolic {

ComplexityClass to_class(TermKind k) { return static_cast<ComplexityClass>(static_cast<std::uint8_t>(k)); }

TermKind from_class(ComplexityClass c) { return static_cast<TermKind>(static_cast<std::uint8_t>(c)); }

std::string_view big_o(TermKind k) { return tcpl::big_o(to_class(k)); }

namespace {

struct Poly {
    int degree;
    int log;
};

Poly as_poly(TermKind k) {
    switch (k) {
        case TermKind::One: return {0, 0};
        case TermKind::Log: return {0, 1};
        case TermKind::N: return {1, 0};
        case TermKind::NLog: return {1, 1};
        case TermKind::N2: return {2, 0};
        case TermKind::N3: return {3, 0};
        case TermKind::Exp: break;
    }
    return {99, 0};
}

}  // namespace

TermKind multiply(TermKind a, TermKind b) {
    if (a == TermKind::Exp || b == TermKind::Exp) return TermKind::Exp;
    const auto pa = as_poly(a);
    const auto pb = as_poly(b);
    const int degree = pa.degree + pb.degree;
    const int log = std::min(1, pa.log + pb.log);
    if (degree >= 3 || (degree == 2 && log == 1)) return TermKind::N3;
    if (degree == 2) return TermKind::N2;
    if (degree == 1) return log ? TermKind::NLog : TermKind::N;
    return log ? TermKind::Log : TermKind::One;
}

ComplexityTerm ComplexityTerm::of(TermKind k, std::string step) {
    ComplexityTerm t;
    t.kind = k;
    if (!step.empty()) t.trace.push_back(std::move(step));
    if (k != TermKind::One) t.summands.push_back(k);
    return t;
}

ComplexityTerm combine_sequence(const std::vector<ComplexityTerm>& terms) {
    ComplexityTerm out;
    for (const auto& t : terms) {
        out.kind = std::max(out.kind, t.kind);
        out.trace.insert(out.trace.end(), t.trace.begin(), t.trace.end());
        out.summands.insert(out.summands.end(), t.summands.begin(), t.summands.end());
    }
    return out;
}

ComplexityTerm combine_nested(const ComplexityTerm& outer, const ComplexityTerm& inner) {
    ComplexityTerm out;
    out.kind = multiply(outer.kind, inner.kind);
    out.trace = inner.trace;
    out.trace.insert(out.trace.end(), outer.trace.begin(), outer.trace.end());
    if (out.kind != TermKind::One) out.summands.push_back(out.kind);
    return out;
}

std::string render_sum(const ComplexityTerm& t) {
    if (t.summands.empty()) return std::string(big_o(t.kind));
    std::string s;
    for (std::size_t i = 0; i < t.summands.size(); ++i) {
        if (i) s += " + ";
        s += big_o(t.summands[i]);
    }
    if (t.summands.size() > 1 || t.summands.front() != t.kind) {
        s += " = ";
        s += big_o(t.kind);
    }
    return s;
}

}  // namespace tcpl::symbolic
