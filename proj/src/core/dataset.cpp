#include "tcpl/core/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tcpl/core/errors.hpp"
#include "tcpl/util/random.hpp"

namespace tcpl {

using json = nlohmann::json;

std::string_view to_string(Language lang) {
    return lang == Language::Java ? "java" : "python";
}

std::optional<Language> parse_language(std::string_view name) {
    if (name == "java") return Language::Java;
    if (name == "python") return Language::Python;
    return std::nullopt;
}

std::optional<Language> language_from_extension(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".java") return Language::Java;
    if (ext == ".py") return Language::Python;
    return std::nullopt;
}

Dataset::Dataset(std::vector<DatasetEntry> entries, ClassSet class_set)
    : entries_(std::move(entries)), class_set_(std::move(class_set)) {
    std::unordered_set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.snippet.id.empty()) throw DataError("dataset entry with empty id");
        if (!seen.insert(e.snippet.id).second) {
            throw DataError("duplicate snippet id '" + e.snippet.id + "'");
        }
        if (e.snippet.source.empty()) {
            throw DataError("snippet '" + e.snippet.id + "' has empty source");
        }
        if (e.label && !class_set_.contains(*e.label)) {
            throw DataError("snippet '" + e.snippet.id + "' has label '" +
                            std::string(to_string(*e.label)) + "' outside the class set");
        }
    }
}

std::vector<LabeledExample> Dataset::labeled() const {
    std::vector<LabeledExample> out;
    for (const auto& e : entries_) {
        if (e.label) out.push_back({e.snippet, *e.label});
    }
    return out;
}

namespace {

std::string where(std::string_view origin, std::size_t line) {
    return std::string(origin) + ":" + std::to_string(line) + ": ";
}

ClassSet parse_class_list(const json& arr, std::string_view origin, std::size_t line) {
    if (!arr.is_array()) throw DataError(where(origin, line) + "'classes' must be an array");
    std::vector<ComplexityClass> classes;
    for (const auto& item : arr) {
        if (!item.is_string()) throw DataError(where(origin, line) + "class names must be strings");
        auto c = parse_complexity_class(item.get<std::string>());
        if (!c) throw DataError(where(origin, line) + "unknown class '" + item.get<std::string>() + "'");
        classes.push_back(*c);
    }
    return ClassSet(std::move(classes));
}

std::string required_string(const json& obj, const char* key, std::string_view origin, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw DataError(where(origin, line) + "missing string field '" + key + "'");
    }
    return it->get<std::string>();
}

}  // namespace

Dataset parse_jsonl(std::istream& in, std::string_view origin, std::optional<ClassSet> fallback_classes) {
    std::vector<DatasetEntry> entries;
    std::optional<ClassSet> header;
    std::string text;
    std::size_t line_no = 0;
    std::unordered_set<std::string> seen;
    while (std::getline(in, text)) {
        ++line_no;
        if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw DataError(where(origin, line_no) + "invalid JSON: " + e.what());
        }
        if (!obj.is_object()) throw DataError(where(origin, line_no) + "expected a JSON object");
        if (entries.empty() && !header && obj.contains("classes") && !obj.contains("id")) {
            header = parse_class_list(obj["classes"], origin, line_no);
            continue;
        }
        DatasetEntry entry;
        entry.snippet.id = required_string(obj, "id", origin, line_no);
        entry.snippet.source = required_string(obj, "code", origin, line_no);
        const auto lang = required_string(obj, "language", origin, line_no);
        auto parsed_lang = parse_language(lang);
        if (!parsed_lang) throw DataError(where(origin, line_no) + "unknown language '" + lang + "'");
        entry.snippet.language = *parsed_lang;
        if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) throw DataError(where(origin, line_no) + "'label' must be a string");
            auto c = parse_complexity_class(it->get<std::string>());
            if (!c) throw DataError(where(origin, line_no) + "unknown label '" + it->get<std::string>() + "'");
            entry.label = *c;
        }
        if (entry.snippet.id.empty()) throw DataError(where(origin, line_no) + "empty id");
        if (!seen.insert(entry.snippet.id).second) {
            throw DataError(where(origin, line_no) + "duplicate id '" + entry.snippet.id + "'");
        }
        if (entry.snippet.source.empty()) throw DataError(where(origin, line_no) + "empty code");
        if (header && entry.label && !header->contains(*entry.label)) {
            throw DataError(where(origin, line_no) + "label '" + std::string(to_string(*entry.label)) +
                            "' is not in the declared class set");
        }
        entries.push_back(std::move(entry));
    }

    ClassSet classes;
    if (header) {
        classes = *header;
    } else if (fallback_classes) {
        classes = *fallback_classes;
    } else {
        std::vector<ComplexityClass> present;
        for (const auto& e : entries) {
            if (e.label) present.push_back(*e.label);
        }
        classes = present.empty() ? ClassSet::all() : ClassSet(std::move(present));
    }
    try {
        return Dataset(std::move(entries), std::move(classes));
    } catch (const DataError& e) {
        throw DataError(std::string(origin) + ": " + e.what());
    }
}

Dataset load_jsonl(const std::filesystem::path& path, std::optional<ClassSet> fallback_classes) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
    return parse_jsonl(in, path.string(), std::move(fallback_classes));
}

void write_jsonl(std::ostream& out, const Dataset& dataset) {
    json header;
    header["classes"] = json::array();
    for (auto c : dataset.class_set()) header["classes"].push_back(std::string(to_string(c)));
    out << header.dump() << '\n';
    for (const auto& e : dataset.entries()) {
        json obj;
        obj["id"] = e.snippet.id;
        obj["code"] = e.snippet.source;
        obj["language"] = std::string(to_string(e.snippet.language));
        if (e.label) obj["label"] = std::string(to_string(*e.label));
        out << obj.dump() << '\n';
    }
}

void save_jsonl(const std::filesystem::path& path, const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_jsonl(out, dataset);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

FewShotSplit few_shot_split(const Dataset& train, std::size_t k, std::uint64_t seed,
                            const EligibilityFn& eligible) {
    const auto& entries = train.entries();
    std::map<ComplexityClass, std::vector<std::size_t>> candidates;
    for (auto c : train.class_set()) candidates[c];
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!e.label) continue;
        if (eligible && !eligible(e.snippet)) continue;
        candidates[*e.label].push_back(i);
    }

    std::vector<bool> picked(entries.size(), false);
    FewShotSplit split;
    for (auto c : train.class_set()) {
        auto& pool = candidates[c];
        if (pool.size() < k) throw InsufficientClassCount(c, pool.size(), k);
        Rng rng(derive_seed(seed, "few-shot:" + std::string(to_string(c))));
        rng.shuffle(std::span<std::size_t>(pool));
        for (std::size_t j = 0; j < k; ++j) {
            picked[pool[j]] = true;
            split.labeled.push_back({entries[pool[j]].snippet, c});
        }
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!picked[i]) split.unlabeled.push_back({entries[i].snippet, entries[i].label});
    }
    return split;
}

}  // namespace tcpl
