#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcpl/core/complexity_class.hpp"

namespace tcpl {

enum class Language : std::uint8_t { Java, Python };

std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view name);
/// Guess from a file extension (".java", ".py").
std::optional<Language> language_from_extension(const std::filesystem::path& path);

struct CodeSnippet {
    std::string id;
    std::string source;
    Language language = Language::Python;
};

struct LabeledExample {
    CodeSnippet snippet;
    ComplexityClass label = ComplexityClass::Constant;
};

/// Member of the unlabeled pool. The gold label, when known, is kept aside for
/// pseudo-label diagnostics only and must never be shown to a classifier.
struct UnlabeledExample {
    CodeSnippet snippet;
    std::optional<ComplexityClass> hidden_label;
};

struct DatasetEntry {
    CodeSnippet snippet;
    std::optional<ComplexityClass> label;
};

class Dataset {
public:
    Dataset() = default;
    /// Validates: unique non-empty ids, non-empty sources, labels inside class_set.
    Dataset(std::vector<DatasetEntry> entries, ClassSet class_set);

    const std::vector<DatasetEntry>& entries() const { return entries_; }
    const ClassSet& class_set() const { return class_set_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::vector<LabeledExample> labeled() const;

private:
    std::vector<DatasetEntry> entries_;
    ClassSet class_set_;
};

/// Reads JSON Lines: one object per line with `id`, `code`, `language` and optional
/// `label`. An optional first line `{"classes": [...]}` fixes the class set; otherwise
/// it is the set of labels present (or `fallback_classes` when given).
/// Throws IoError when unreadable and DataError (with file:line) when malformed.
Dataset load_jsonl(const std::filesystem::path& path,
                   std::optional<ClassSet> fallback_classes = std::nullopt);
Dataset parse_jsonl(std::istream& in, std::string_view origin,
                    std::optional<ClassSet> fallback_classes = std::nullopt);

/// Writes the class-set header followed by one record per entry.
void write_jsonl(std::ostream& out, const Dataset& dataset);
void save_jsonl(const std::filesystem::path& path, const Dataset& dataset);

struct FewShotSplit {
    std::vector<LabeledExample> labeled;
    std::vector<UnlabeledExample> unlabeled;
};

using EligibilityFn = std::function<bool(const CodeSnippet&)>;

/// Picks exactly k examples per class of the dataset's class set; everything else
/// goes to the unlabeled pool in original order. Deterministic in (train, k, seed).
/// With `eligible`, the k picks are drawn only from snippets it accepts.
/// Throws InsufficientClassCount when a class has fewer than k candidates.
FewShotSplit few_shot_split(const Dataset& train, std::size_t k, std::uint64_t seed,
                            const EligibilityFn& eligible = {});

}  // namespace tcpl
