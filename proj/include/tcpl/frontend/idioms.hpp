#pragma once

#include "tcpl/frontend/ir.hpp"

namespace tcpl::frontend {

/// sorted(xs), xs.sort(), Arrays.sort(a), Collections.sort(l), list.sort(cmp).
bool is_sort_call(const CallSite& call, Language lang);

/// bisect.* in Python, Arrays/Collections.binarySearch in Java.
bool is_binary_search_call(const CallSite& call, Language lang);

}  // namespace tcpl::frontend
