#include <cctype>
#include <unordered_set>

#include "tcpl/classifier/classifier.hpp"
#include "tcpl/frontend/token.hpp"

namespace tcpl::classifier {

namespace {

using frontend::TokenKind;

// Library and builtin names that say something about cost; kept verbatim.
const std::unordered_set<std::string_view> kKeptNames = {
    "i", "j", "k",
    // Python
    "range", "len", "input", "print", "sorted", "sort", "max", "min", "sum", "map", "list", "set", "dict",
    "append", "pop", "insert", "remove", "count", "index", "bisect", "bisect_left", "bisect_right", "heapq",
    "heappush", "heappop", "deque", "popleft", "reversed", "enumerate", "zip", "int", "str", "split", "join",
    "sqrt", "log", "pow", "abs", "self", "readline", "stdin", "sys", "math",
    // Java
    "Arrays", "Collections", "Math", "Scanner", "BufferedReader", "StringTokenizer", "System", "out", "println",
    "nextInt", "nextLong", "next", "nextLine", "length", "size", "get", "add", "put", "contains", "containsKey",
    "binarySearch", "HashMap", "HashSet", "TreeMap", "TreeSet", "ArrayList", "PriorityQueue", "ArrayDeque",
    "String", "Integer", "Long", "parseInt", "charAt", "substring", "hasMoreTokens", "nextToken", "readLine",
    "main", "args", "max", "min",
};

std::string abstract(const frontend::Token& t) {
    switch (t.kind) {
        case TokenKind::Identifier: return kKeptNames.contains(t.text) ? t.text : "ID";
        case TokenKind::Number: return "NUM";
        case TokenKind::String: return "STR";
        case TokenKind::Newline: return "NL";
        case TokenKind::Indent: return "INDENT";
        case TokenKind::Dedent: return "DEDENT";
        default: return t.text;
    }
}

/// Used when the lexer rejects the source: words and single punctuation characters.
std::vector<std::string> rough_tokens(const std::string& src, Language lang) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < src.size();) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            const std::string word = src.substr(i, j - i);
            if (frontend::is_keyword(word, lang) || kKeptNames.contains(word)) out.push_back(word);
            else out.push_back("ID");
            i = j;
        } else if (std::isdigit(c)) {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
            out.push_back("NUM");
        } else {
            out.emplace_back(1, static_cast<char>(c));
            ++i;
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> tokenize(const CodeSnippet& snippet, int ngram_max) {
    std::vector<std::string> base;
    try {
        for (const auto& t : frontend::lex(snippet.source, snippet.language)) {
            if (t.kind == TokenKind::End) continue;
            base.push_back(abstract(t));
        }
    } catch (const frontend::ParseError&) {
        base = rough_tokens(snippet.source, snippet.language);
    }
    // A lone line break carries nothing.
    if (base.size() == 1 && base.front() == "NL") base.clear();

    std::vector<std::string> out = base;
    for (int n = 2; n <= ngram_max; ++n) {
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= base.size(); ++i) {
            std::string gram = base[i];
            for (int k = 1; k < n; ++k) gram += " " + base[i + static_cast<std::size_t>(k)];
            out.push_back(std::move(gram));
        }
    }
    return out;
}

}  // namespace tcpl::classifier
