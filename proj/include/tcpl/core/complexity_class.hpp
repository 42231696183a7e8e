#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcpl {

/// Asymptotic time-complexity label. Enumerator order is the dominance order.
enum class ComplexityClass : std::uint8_t {
    Constant = 0,
    LogN,
    Linear,
    NLogN,
    Quadratic,
    Cubic,
    Exponential,
};

inline constexpr std::size_t kNumComplexityClasses = 7;

inline constexpr std::array<ComplexityClass, kNumComplexityClasses> kAllClasses = {
    ComplexityClass::Constant,  ComplexityClass::LogN,  ComplexityClass::Linear,
    ComplexityClass::NLogN,     ComplexityClass::Quadratic, ComplexityClass::Cubic,
    ComplexityClass::Exponential,
};

constexpr std::size_t index_of(ComplexityClass c) { return static_cast<std::size_t>(c); }

/// Serialized name: "constant", "logn", "linear", "nlogn", "quadratic", "cubic", "exponential".
std::string_view to_string(ComplexityClass c);

/// Big-O rendering used in analysis traces, e.g. "O(N log N)".
std::string_view big_o(ComplexityClass c);

std::optional<ComplexityClass> parse_complexity_class(std::string_view name);

/// Join in the dominance order.
constexpr ComplexityClass dominates(ComplexityClass a, ComplexityClass b) {
    return index_of(a) >= index_of(b) ? a : b;
}

/// Ordered subset of classes a dataset is labelled with.
class ClassSet {
public:
    ClassSet() = default;
    /// Sorts and deduplicates.
    explicit ClassSet(std::vector<ComplexityClass> classes);

    static ClassSet all();

    bool contains(ComplexityClass c) const;
    std::size_t size() const { return classes_.size(); }
    bool empty() const { return classes_.empty(); }
    ComplexityClass operator[](std::size_t i) const { return classes_[i]; }
    /// Position of c in this set; c must be a member.
    std::size_t position(ComplexityClass c) const;

    /// Greatest member not above c, or the smallest member when none is.
    ComplexityClass clamp(ComplexityClass c) const;

    auto begin() const { return classes_.begin(); }
    auto end() const { return classes_.end(); }
    const std::vector<ComplexityClass>& classes() const { return classes_; }

    bool operator==(const ClassSet&) const = default;

private:
    std::vector<ComplexityClass> classes_;
};

}  // namespace tcpl
