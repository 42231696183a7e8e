#include <fstream>

#include "json.hpp"

#include "augment_prompts.hpp"
#include "tcpl/augment/augment.hpp"
#include "tcpl/util/subprocess.hpp"

namespace tcpl::augment {

using nlohmann::json;

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
        text.replace(pos, key.size(), value);
    }
    return text;
}

std::string display_name(Language lang) { return lang == Language::Java ? "Java" : "Python"; }

std::string fill_prompt(const char* tmpl, const CodeSnippet& snippet) {
    const Language other = snippet.language == Language::Java ? Language::Python : Language::Java;
    std::string out = substitute(std::string(tmpl), "{source_language}", display_name(snippet.language));
    out = substitute(out, "{target_language}", display_name(other));
    return substitute(out, "{code}", snippet.source);
}

}  // namespace

std::string backtranslation_prompt(const CodeSnippet& snippet) { return fill_prompt(prompts::kBacktranslate, snippet); }

std::string loop_conversion_prompt(const CodeSnippet& snippet) { return fill_prompt(prompts::kLoopConvert, snippet); }

// ------------------------------------------------------------------- subprocess

struct SubprocessBacktranslator::Impl {
    std::string command;
    std::unique_ptr<Subprocess> proc;
};

SubprocessBacktranslator::SubprocessBacktranslator(const std::string& command) : impl_(std::make_unique<Impl>()) {
    impl_->command = command;
    try {
        const auto argv = split_command(command);
        if (argv.empty()) throw AugmenterUnavailable("empty augmenter command");
        impl_->proc = std::make_unique<Subprocess>(argv);
    } catch (const SubprocessError& e) {
        throw AugmenterUnavailable(e.what());
    }
}

SubprocessBacktranslator::~SubprocessBacktranslator() = default;

std::string SubprocessBacktranslator::backtranslate(const CodeSnippet& snippet) {
    const json request = {
        {"op", "backtranslate"},
        {"id", snippet.id},
        {"language", std::string(to_string(snippet.language))},
        {"code", snippet.source},
        {"prompt", backtranslation_prompt(snippet)},
    };
    std::optional<std::string> line;
    try {
        impl_->proc->write_line(request.dump());
        line = impl_->proc->read_line(subprocess_timeout());
    } catch (const SubprocessError& e) {
        throw AugmenterError(std::string("augmenter '") + impl_->command + "': " + e.what());
    }
    if (!line) throw AugmenterError("augmenter '" + impl_->command + "' closed its output");

    json response;
    try {
        response = json::parse(*line);
    } catch (const json::exception& e) {
        throw AugmenterError("augmenter sent malformed JSON: " + std::string(e.what()));
    }
    if (!response.is_object()) throw AugmenterError("augmenter response is not an object");
    if (!response.contains("id") || !response["id"].is_string() || response["id"].get<std::string>() != snippet.id) {
        throw AugmenterError("augmenter response id does not match request '" + snippet.id + "'");
    }
    if (response.contains("error")) {
        const auto& err = response["error"];
        throw AugmenterError(err.is_string() ? err.get<std::string>() : err.dump());
    }
    if (!response.contains("code") || !response["code"].is_string()) {
        throw AugmenterError("augmenter response has neither code nor error");
    }
    return response["code"].get<std::string>();
}

// ------------------------------------------------------------------- cache

CachedBacktranslator::CachedBacktranslator(std::map<std::string, std::string> by_id) : by_id_(std::move(by_id)) {}

CachedBacktranslator CachedBacktranslator::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open back-translation cache " + path.string());
    std::map<std::string, std::string> by_id;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto rec = json::parse(line);
            by_id[rec.at("id").get<std::string>()] = rec.at("code").get<std::string>();
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return CachedBacktranslator(std::move(by_id));
}

std::string CachedBacktranslator::backtranslate(const CodeSnippet& snippet) {
    const auto it = by_id_.find(snippet.id);
    if (it == by_id_.end()) throw AugmenterError("no cached back-translation for '" + snippet.id + "'");
    return it->second;
}

// ------------------------------------------------------------------- validation

CodeSnippet external_backtranslate(const CodeSnippet& snippet, Backtranslator& endpoint) {
    CodeSnippet out{snippet.id + "#bt", endpoint.backtranslate(snippet), snippet.language};
    frontend::StructuralIR ir;
    try {
        ir = frontend::parse(out);
    } catch (const frontend::ParseError& e) {
        throw InvalidAugmentation("'" + snippet.id + "' came back unparseable: " + e.what());
    }
    std::string original_sig;
    try {
        original_sig = frontend::structural_signature(frontend::parse(snippet));
    } catch (const frontend::ParseError&) {
        // The original itself is outside the parser subset; fall back to text comparison.
        if (out.source == snippet.source) throw InvalidAugmentation("'" + snippet.id + "' came back unchanged");
        return out;
    }
    if (frontend::structural_signature(ir) == original_sig) {
        throw InvalidAugmentation("'" + snippet.id + "' came back unchanged");
    }
    return out;
}

}  // namespace tcpl::augment
