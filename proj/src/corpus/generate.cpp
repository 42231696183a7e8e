#include "tcpl/corpus/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "tcpl/core/errors.hpp"
#include "tcpl/util/random.hpp"

namespace tcpl::corpus {

namespace {

struct Template {
    Language language;
    const char* text;
};

// Placeholders: {N} size, {A} array, {R} result, {T} temporary, {I} {J} {K} loop
// variables, {F} function, {C1} {C2} small constants. A line holding only {PRE}
// becomes zero to two constant-time filler statements.

const std::map<ComplexityClass, std::vector<Template>>& templates() {
    using C = ComplexityClass;
    using L = Language;
    static const std::map<ComplexityClass, std::vector<Template>> t = {
        {C::Constant,
         {
             {L::Python, R"({T}, {R} = map(int, input().split())
{PRE}
{R} = ({T} * {C1} + {R}) % {C2}
print({R})
)"},
             {L::Python, R"({N} = int(input())
{PRE}
if {N} % 2 == 0:
    print({N} // 2)
else:
    print(3 * {N} + 1)
)"},
             {L::Python, R"({N} = int(input())
{R} = 0
{PRE}
for {I} in range({C1}):
    {R} += {I} * {N}
print({R})
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        long {T} = sc.nextLong();
        long {N} = sc.nextLong();
        {PRE}
        long {R} = Math.max({T}, {N}) * {C1} - Math.min({T}, {N});
        System.out.println({R} % {C2});
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int {R} = 0;
        {PRE}
        for (int {I} = 0; {I} < {C1}; {I}++) {
            {R} += {N} % ({I} + 1);
        }
        System.out.println({R});
    }
}
)"},
         }},
        {C::LogN,
         {
             {L::Python, R"({N} = int(input())
{R} = 0
{PRE}
while {N} > 0:
    {N} //= 2
    {R} += 1
print({R})
)"},
             {L::Python, R"({N} = int(input())
{T} = 1
{R} = 0
{PRE}
while {T} < {N}:
    {T} *= {C1}
    {R} += 1
print({R})
)"},
             {L::Python, R"({N}, {T} = map(int, input().split())
{I} = 0
{J} = {N}
{PRE}
while {I} < {J}:
    {K} = ({I} + {J}) // 2
    if {K} * {K} < {T}:
        {I} = {K} + 1
    else:
        {J} = {K}
print({I})
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        long {N} = sc.nextLong();
        int {R} = 0;
        {PRE}
        while ({N} > 1) {
            {N} /= 2;
            {R}++;
        }
        System.out.println({R});
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int {R} = 0;
        {PRE}
        for (int {I} = 1; {I} < {N}; {I} *= 2) {
            {R} += {I} % {C1};
        }
        System.out.println({R});
    }
}
)"},
         }},
        {C::Linear,
         {
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{R} = 0
{PRE}
for {I} in {A}:
    {R} += {I}
print({R})
)"},
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{R} = {A}[0]
{PRE}
for {I} in range(1, {N}):
    if {A}[{I}] > {R}:
        {R} = {A}[{I}]
print({R})
)"},
             {L::Python, R"({N} = int(input())
{R} = 0
{I} = 0
{PRE}
while {I} < {N}:
    {R} += {I} % {C1}
    {I} += 1
print({R})
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        long {R} = 0;
        {PRE}
        for (int {I} = 0; {I} < {N}; {I}++) {
            {R} += sc.nextInt();
        }
        System.out.println({R});
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int[] {A} = new int[{N}];
        for (int {I} = 0; {I} < {N}; {I}++) {
            {A}[{I}] = sc.nextInt();
        }
        {PRE}
        int {R} = 0;
        int {J} = 0;
        while ({J} < {N}) {
            {R} = Math.max({R}, {A}[{J}]);
            {J}++;
        }
        System.out.println({R});
    }
}
)"},
         }},
        {C::NLogN,
         {
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{A}.sort()
{R} = 0
{PRE}
for {I} in range({N}):
    {R} += {A}[{I}] * ({I} + 1)
print({R})
)"},
             {L::Python, R"({N} = int(input())
{R} = 0
{PRE}
for {I} in range({N}):
    {J} = 1
    while {J} < {N}:
        {R} += {J} ^ {I}
        {J} *= 2
print({R})
)"},
             {L::Python, R"({N} = int(input())
{A} = sorted(map(int, input().split()))
{PRE}
print({A}[{N} // 2])
)"},
             {L::Python, R"(import heapq

{N} = int(input())
{A} = []
{R} = 0
{PRE}
for {I} in range({N}):
    heapq.heappush({A}, ({I} * {C2}) % {N})
while {A}:
    {R} += heapq.heappop({A})
print({R})
)"},
             {L::Java, R"(import java.util.PriorityQueue;
import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        PriorityQueue<Integer> {A} = new PriorityQueue<>();
        {PRE}
        for (int {I} = 0; {I} < {N}; {I}++) {
            {A}.add(sc.nextInt());
        }
        long {R} = 0;
        while (!{A}.isEmpty()) {
            {R} = {R} * {C1} + {A}.poll();
        }
        System.out.println({R});
    }
}
)"},
             {L::Java, R"(import java.util.Arrays;
import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int[] {A} = new int[{N}];
        for (int {I} = 0; {I} < {N}; {I}++) {
            {A}[{I}] = sc.nextInt();
        }
        {PRE}
        Arrays.sort({A});
        System.out.println({A}[{N} - 1] - {A}[0]);
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        long {R} = 0;
        {PRE}
        for (int {I} = 0; {I} < {N}; {I}++) {
            for (int {J} = 1; {J} < {N}; {J} *= 2) {
                {R} += {I} & {J};
            }
        }
        System.out.println({R});
    }
}
)"},
         }},
        {C::Quadratic,
         {
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{R} = 0
{PRE}
for {I} in range({N}):
    for {J} in range({I} + 1, {N}):
        if {A}[{I}] > {A}[{J}]:
            {R} += 1
print({R})
)"},
             {L::Python, R"({N} = int(input())
{R} = 0
{PRE}
for {I} in range({N}):
    for {J} in range({N}):
        {R} += ({I} * {J}) % {C1}
print({R})
)"},
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{R} = 0
{PRE}
for {I} in {A}:
    {R} += {A}.count({I})
print({R})
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int[] {A} = new int[{N}];
        for (int {I} = 0; {I} < {N}; {I}++) {
            {A}[{I}] = sc.nextInt();
        }
        {PRE}
        int {R} = 0;
        for (int {I} = 0; {I} < {N}; {I}++) {
            for (int {J} = 0; {J} < {I}; {J}++) {
                if ({A}[{J}] + {A}[{I}] == {C1}) {
                    {R}++;
                }
            }
        }
        System.out.println({R});
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        long[][] {A} = new long[{N}][{N}];
        {PRE}
        for (int {I} = 0; {I} < {N}; {I}++) {
            for (int {J} = 0; {J} < {N}; {J}++) {
                {A}[{I}][{J}] = ({I} + 1) * ({J} + {C1});
            }
        }
        System.out.println({A}[{N} - 1][{N} - 1]);
    }
}
)"},
         }},
        {C::Cubic,
         {
             {L::Python, R"({N} = int(input())
{R} = 0
{PRE}
for {I} in range({N}):
    for {J} in range({N}):
        for {K} in range({N}):
            {R} += ({I} + {J} + {K}) % {C1}
print({R})
)"},
             {L::Python, R"({N} = int(input())
{A} = list(map(int, input().split()))
{R} = 0
{PRE}
for {I} in range({N}):
    for {J} in range({I} + 1, {N}):
        for {K} in range({J} + 1, {N}):
            if {A}[{I}] + {A}[{J}] + {A}[{K}] == 0:
                {R} += 1
print({R})
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        long[][] {A} = new long[{N}][{N}];
        for (int {I} = 0; {I} < {N}; {I}++) {
            for (int {J} = 0; {J} < {N}; {J}++) {
                {A}[{I}][{J}] = sc.nextLong();
            }
        }
        {PRE}
        for (int {K} = 0; {K} < {N}; {K}++) {
            for (int {I} = 0; {I} < {N}; {I}++) {
                for (int {J} = 0; {J} < {N}; {J}++) {
                    {A}[{I}][{J}] = Math.min({A}[{I}][{J}], {A}[{I}][{K}] + {A}[{K}][{J}]);
                }
            }
        }
        System.out.println({A}[0][{N} - 1]);
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        long {R} = 0;
        {PRE}
        for (int {I} = 0; {I} < {N}; {I}++) {
            for (int {J} = {I}; {J} < {N}; {J}++) {
                for (int {K} = {J}; {K} < {N}; {K}++) {
                    {R} += ({I} ^ {J} ^ {K}) % {C1};
                }
            }
        }
        System.out.println({R});
    }
}
)"},
         }},
        {C::Exponential,
         {
             {L::Python, R"(def {F}({T}):
    if {T} < 2:
        return {T}
    return {F}({T} - 1) + {F}({T} - 2)


{N} = int(input())
{PRE}
print({F}({N}))
)"},
             {L::Python, R"(def {F}({I}, {R}, {A}):
    if {I} == len({A}):
        return 1 if {R} % {C1} == 0 else 0
    return {F}({I} + 1, {R}, {A}) + {F}({I} + 1, {R} + {A}[{I}], {A})


{N} = int(input())
{A} = list(map(int, input().split()))
{PRE}
print({F}(0, 0, {A}))
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    static long {F}(int {T}) {
        if ({T} <= 1) {
            return 1;
        }
        return {F}({T} - 1) + {F}({T} - 2);
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        {PRE}
        System.out.println({F}({N}));
    }
}
)"},
             {L::Java, R"(import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int {N} = sc.nextInt();
        int[] {A} = new int[{N}];
        for (int {I} = 0; {I} < {N}; {I}++) {
            {A}[{I}] = sc.nextInt();
        }
        {PRE}
        int {R} = 0;
        for (int {K} = 0; {K} < (1 << {N}); {K}++) {
            int {T} = 0;
            for (int {J} = 0; {J} < {N}; {J}++) {
                if ((({K} >> {J}) & 1) == 1) {
                    {T} += {A}[{J}];
                }
            }
            if ({T} % {C1} == 0) {
                {R}++;
            }
        }
        System.out.println({R});
    }
}
)"},
         }},
    };
    return t;
}

const std::vector<std::string> kSizeNames = {"n", "size", "cnt", "length", "m", "limit"};
const std::vector<std::string> kArrayNames = {"arr", "a", "nums", "xs", "data", "vals", "items", "w", "seq"};
const std::vector<std::string> kScalarNames = {"total", "acc", "res", "best", "s", "ans", "cur", "out", "score", "q", "r", "h"};
const std::vector<std::string> kLoopNames = {"i", "j", "k", "p", "u", "v", "x", "y", "t", "z"};
const std::vector<std::string> kFunctionNames = {"solve", "go", "rec", "f", "count_ways", "calc", "dfs"};

std::vector<std::string> distinct(Rng& rng, const std::vector<std::string>& pool, std::size_t n) {
    std::vector<std::string> copy = pool;
    rng.shuffle(std::span<std::string>(copy));
    copy.resize(n);
    return copy;
}

std::string filler(Rng& rng, Language lang, const std::string& indent, const std::string& name) {
    const auto c1 = std::to_string(2 + rng.below(98));
    const auto c2 = std::to_string(2 + rng.below(98));
    std::string line;
    if (lang == Language::Python) {
        switch (rng.below(3)) {
        case 0: line = name + " = " + c1 + " * " + c2; break;
        case 1: line = name + " = (" + c1 + " + " + c2 + ") % 7"; break;
        default: line = name + " = " + c1; break;
        }
    } else {
        switch (rng.below(3)) {
        case 0: line = "int " + name + " = " + c1 + " * " + c2 + ";"; break;
        case 1: line = "long " + name + " = " + c1 + "L + " + c2 + ";"; break;
        default: line = "final int " + name + " = " + c1 + ";"; break;
        }
    }
    return indent + line + "\n";
}

std::string instantiate(const Template& t, Rng& rng) {
    std::map<std::string, std::string> names;
    const auto loops = distinct(rng, kLoopNames, 3);
    const auto scalars = distinct(rng, kScalarNames, 4);
    names["{N}"] = rng.pick(kSizeNames);
    names["{A}"] = rng.pick(kArrayNames);
    names["{R}"] = scalars[0];
    names["{T}"] = scalars[1];
    names["{I}"] = loops[0];
    names["{J}"] = loops[1];
    names["{K}"] = loops[2];
    names["{F}"] = rng.pick(kFunctionNames);
    names["{C1}"] = std::to_string(2 + rng.below(9));
    names["{C2}"] = std::to_string(11 + rng.below(990));
    const std::string fill_a = scalars[2], fill_b = scalars[3];

    std::string out;
    std::string text = t.text;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (const auto pos = line.find("{PRE}"); pos != std::string::npos) {
            const std::string indent = line.substr(0, pos);
            const auto count = rng.below(3);
            if (count > 0) out += filler(rng, t.language, indent, fill_a);
            if (count > 1) out += filler(rng, t.language, indent, fill_b);
            continue;
        }
        for (const auto& [key, value] : names) {
            for (auto p = line.find(key); p != std::string::npos; p = line.find(key, p + value.size())) {
                line.replace(p, key.size(), value);
            }
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace

Dataset generate(std::size_t per_class, std::uint64_t seed, const ClassSet& classes) {
    Rng rng(derive_seed(seed, "corpus"));
    std::vector<DatasetEntry> entries;
    for (auto cls : classes) {
        const auto& options = templates().at(cls);
        const int width = per_class < 1000 ? 3 : static_cast<int>(std::to_string(per_class).size());
        for (std::size_t n = 1; n <= per_class; ++n) {
            const auto& t = rng.pick(options);
            auto number = std::to_string(n);
            number.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(number.size()))), '0');
            entries.push_back({{"syn-" + std::string(to_string(cls)) + "-" + number, instantiate(t, rng), t.language}, cls});
        }
    }
    return Dataset(std::move(entries), classes);
}

std::vector<LabeledExample> samples(std::uint64_t seed) {
    Rng rng(derive_seed(seed, "corpus-samples"));
    std::vector<LabeledExample> out;
    for (const auto& [cls, options] : templates()) {
        for (std::size_t i = 0; i < options.size(); ++i) {
            out.push_back({{"sample-" + std::string(to_string(cls)) + "-" + std::to_string(i + 1),
                            instantiate(options[i], rng), options[i].language},
                           cls});
        }
    }
    return out;
}

Splits split(const Dataset& data, double validation_share, double test_share, std::uint64_t seed) {
    if (validation_share < 0 || test_share < 0 || validation_share + test_share >= 1.0) {
        throw ConfigError("split shares must be non-negative and leave room for training data");
    }
    Rng rng(derive_seed(seed, "corpus-split"));
    std::vector<int> part(data.size(), 0);  // 0 train, 1 validation, 2 test
    for (auto cls : data.class_set()) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data.entries()[i].label == cls) members.push_back(i);
        }
        rng.shuffle(std::span<std::size_t>(members));
        const auto nv = static_cast<std::size_t>(std::lround(validation_share * static_cast<double>(members.size())));
        const auto nt = static_cast<std::size_t>(std::lround(test_share * static_cast<double>(members.size())));
        for (std::size_t k = 0; k < members.size(); ++k) part[members[k]] = k < nv ? 1 : k < nv + nt ? 2 : 0;
    }
    std::vector<DatasetEntry> parts[3];
    for (std::size_t i = 0; i < data.size(); ++i) parts[part[i]].push_back(data.entries()[i]);
    return {Dataset(std::move(parts[0]), data.class_set()), Dataset(std::move(parts[1]), data.class_set()),
            Dataset(std::move(parts[2]), data.class_set())};
}

}  // namespace tcpl::corpus
