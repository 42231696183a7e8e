#include "tcpl/frontend/idioms.hpp"

namespace tcpl::frontend {

bool is_sort_call(const CallSite& call, Language lang) {
    if (lang == Language::Python) {
        if (call.callee == "sorted") return !call.member;
        return call.callee == "sort" && call.member;
    }
    if (call.callee == "sort" || call.callee == "parallelSort") return call.member;
    return false;
}

bool is_binary_search_call(const CallSite& call, Language lang) {
    if (lang == Language::Python) {
        return call.callee == "bisect" || call.callee == "bisect_left" || call.callee == "bisect_right" ||
               call.callee == "insort" || call.callee == "insort_left" || call.callee == "insort_right";
    }
    return call.callee == "binarySearch" && call.member;
}

}  // namespace tcpl::frontend
