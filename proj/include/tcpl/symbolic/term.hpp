#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tcpl/core/complexity_class.hpp"

namespace tcpl::symbolic {

/// Symbolic cost kinds, one per complexity class.
enum class TermKind : std::uint8_t { One, Log, N, NLog, N2, N3, Exp };

ComplexityClass to_class(TermKind k);
TermKind from_class(ComplexityClass c);
std::string_view big_o(TermKind k);

/// Product over the term algebra. Polynomial degree is capped at 3, a log factor
/// squared stays a single log factor, and Exp absorbs everything.
TermKind multiply(TermKind a, TermKind b);

struct ComplexityTerm {
    TermKind kind = TermKind::One;
    /// Derivation steps, outermost last.
    std::vector<std::string> trace;
    /// Non-constant components of a sequence, flattened through calls; used to
    /// render "O(N) + O(N log N) = O(N log N)".
    std::vector<TermKind> summands;

    static ComplexityTerm of(TermKind k, std::string step = {});
};

/// Sequential composition: the dominance maximum. Empty input gives One.
ComplexityTerm combine_sequence(const std::vector<ComplexityTerm>& terms);

/// Nesting: outer repetitions times inner cost.
ComplexityTerm combine_nested(const ComplexityTerm& outer, const ComplexityTerm& inner);

/// "O(N) + O(N) + O(N log N) = O(N log N)" for the term's summands.
std::string render_sum(const ComplexityTerm& t);

}  // namespace tcpl::symbolic
