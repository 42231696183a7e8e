// Test double for the augmenter wire protocol.
#include <cctype>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpl/frontend/token.hpp"

using nlohmann::json;

namespace {

/// Names the snippet itself binds: assignment targets and loop targets.
std::set<std::string> bound_names(const std::string& code, tcpl::Language lang) {
    using tcpl::frontend::TokenKind;
    std::set<std::string> out;
    const auto toks = tcpl::frontend::lex(code, lang);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Identifier) continue;
        if (i > 0 && toks[i - 1].is_op(".")) continue;
        const auto& next = toks[i + 1];
        if (next.is_op("=") || next.is_op("+=") || next.is_op("-=") || next.is_kw("in") ||
            (lang == tcpl::Language::Java && next.is_op(":"))) {
            out.insert(toks[i].text);
        }
    }
    out.erase("args");
    return out;
}

std::string rename(const std::string& code, tcpl::Language lang) {
    const auto names = bound_names(code, lang);
    std::string out;
    char quote = 0;
    char prev_sig = 0;
    for (std::size_t i = 0; i < code.size();) {
        const char c = code[i];
        if (quote) {
            out += c;
            if (c == '\\' && i + 1 < code.size()) out += code[++i];
            else if (c == quote) quote = 0;
            ++i;
            continue;
        }
        if (c == '"' || c == '\'') {
            quote = c;
            out += c;
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < code.size() && (std::isalnum(static_cast<unsigned char>(code[j])) || code[j] == '_')) ++j;
            std::string word = code.substr(i, j - i);
            if (prev_sig != '.' && names.contains(word)) word += "_v";
            out += word;
            prev_sig = 'a';
            i = j;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) prev_sig = c;
        out += c;
        ++i;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mock back-translation augmenter speaking newline-delimited JSON on stdin/stdout."};
    std::string mode = "rename";
    app.add_option("--mode", mode, "rename | identity | garbage | error | exit")
        ->check(CLI::IsMember({"rename", "identity", "garbage", "error", "exit"}));
    CLI11_PARSE(app, argc, argv);

    std::string line;
    while (std::getline(std::cin, line)) {
        if (mode == "exit") return 0;
        json resp;
        try {
            const auto req = json::parse(line);
            const auto id = req.at("id").get<std::string>();
            resp["id"] = id;
            if (req.value("op", "") != "backtranslate") {
                resp["error"] = "unknown op";
            } else if (mode == "error") {
                resp["error"] = "mock failure";
            } else {
                const auto code = req.at("code").get<std::string>();
                const auto lang = tcpl::parse_language(req.at("language").get<std::string>());
                if (!lang) throw std::runtime_error("unknown language");
                if (mode == "identity") resp["code"] = code;
                else if (mode == "garbage") resp["code"] = "))) this is not code (((";
                else resp["code"] = rename(code, *lang);
            }
        } catch (const std::exception& e) {
            if (!resp.contains("id")) resp["id"] = nullptr;
            resp["error"] = e.what();
        }
        std::cout << resp.dump() << std::endl;
    }
    return 0;
}
