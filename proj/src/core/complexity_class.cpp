#include "tcpl/core/complexity_class.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcpl {

namespace {

constexpr std::array<std::string_view, kNumComplexityClasses> kNames = {
    "constant", "logn", "linear", "nlogn", "quadratic", "cubic", "exponential",
};

constexpr std::array<std::string_view, kNumComplexityClasses> kBigO = {
    "O(1)", "O(log N)", "O(N)", "O(N log N)", "O(N^2)", "O(N^3)", "O(2^N)",
};

}  // namespace

std::string_view to_string(ComplexityClass c) { return kNames[index_of(c)]; }

std::string_view big_o(ComplexityClass c) { return kBigO[index_of(c)]; }

std::optional<ComplexityClass> parse_complexity_class(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return kAllClasses[i];
    }
    return std::nullopt;
}

ClassSet::ClassSet(std::vector<ComplexityClass> classes) : classes_(std::move(classes)) {
    std::sort(classes_.begin(), classes_.end());
    classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
}

ClassSet ClassSet::all() { return ClassSet({kAllClasses.begin(), kAllClasses.end()}); }

bool ClassSet::contains(ComplexityClass c) const {
    return std::binary_search(classes_.begin(), classes_.end(), c);
}

std::size_t ClassSet::position(ComplexityClass c) const {
    auto it = std::lower_bound(classes_.begin(), classes_.end(), c);
    if (it == classes_.end() || *it != c) {
        throw std::out_of_range("class '" + std::string(to_string(c)) + "' is not in the class set");
    }
    return static_cast<std::size_t>(it - classes_.begin());
}

ComplexityClass ClassSet::clamp(ComplexityClass c) const {
    if (classes_.empty()) return c;
    auto it = std::upper_bound(classes_.begin(), classes_.end(), c);
    if (it == classes_.begin()) return classes_.front();
    return *std::prev(it);
}

}  // namespace tcpl
