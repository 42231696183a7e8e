#pragma once

#include <set>
#include <string>
#include <vector>

#include "tcpl/core/dataset.hpp"
#include "tcpl/core/errors.hpp"
#include "tcpl/frontend/ir.hpp"
#include "tcpl/symbolic/term.hpp"

namespace tcpl::symbolic {

class AnalysisUnavailable : public Error {
public:
    explicit AnalysisUnavailable(const std::string& reason) : Error("AnalysisUnavailable: " + reason) {}
};

/// Names considered input-sized, plus names only ever bound to literals.
struct InputVars {
    std::set<std::string> sized;
    std::set<std::string> constants;

    bool is_sized(const std::string& name) const { return sized.contains(name); }
};

/// Flow-insensitive fixed point over the whole program: variables assigned from
/// input-reading calls, anything computed from them (including collections filled
/// from them and their lengths), function parameters, and the loop variables of
/// input-bounded loops.
InputVars input_variables(const frontend::StructuralIR& ir);

struct LineSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct LoopInfo {
    std::size_t depth = 0;
    /// One, Log, N (or Exp for 2^n-bounded loops) per level along the costliest chain.
    std::vector<TermKind> cost_per_level;
    LineSpan location;
};

/// Repetition count of a single loop, ignoring its body.
TermKind loop_level_cost(const frontend::Statement& loop, const InputVars& vars, Language lang);

/// One entry per maximal loop nest found in the block (compound bodies are searched,
/// function bodies are not).
std::vector<LoopInfo> detect_loops(const frontend::StatementBlock& block, const InputVars& vars, Language lang);

enum class Shrink { Decrement, Halving, Unknown };

struct RecursionInfo {
    std::string function;
    std::size_t self_call_count = 0;
    Shrink shrink = Shrink::Unknown;
};

std::vector<RecursionInfo> detect_recursion(const frontend::StructuralIR& ir);

/// Sort idioms give NLog, library binary search gives Log.
std::vector<ComplexityTerm> detect_special_tc(const frontend::StatementBlock& block, Language lang);

/// bodyCost must exclude the self-calls.
ComplexityTerm recursion_cost(const RecursionInfo& info, const ComplexityTerm& body_cost);

struct Analysis {
    ComplexityClass cls = ComplexityClass::Constant;
    ComplexityTerm term;
    std::vector<std::string> trace;
};

/// Full pipeline. Throws AnalysisUnavailable when the snippet does not parse.
Analysis analyze(const CodeSnippet& snippet);
Analysis analyze(const frontend::StructuralIR& ir);

}  // namespace tcpl::symbolic
