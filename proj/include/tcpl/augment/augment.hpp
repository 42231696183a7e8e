#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcpl/core/dataset.hpp"
#include "tcpl/core/errors.hpp"
#include "tcpl/frontend/ir.hpp"

namespace tcpl::augment {

class UnsupportedLoopForm : public Error {
public:
    explicit UnsupportedLoopForm(const std::string& why) : Error("UnsupportedLoopForm: " + why) {}
};

class AugmenterUnavailable : public Error {
public:
    explicit AugmenterUnavailable(const std::string& why) : Error("AugmenterUnavailable: " + why) {}
};

class AugmenterError : public Error {
public:
    explicit AugmenterError(const std::string& why) : Error("AugmenterError: " + why) {}
};

class InvalidAugmentation : public Error {
public:
    explicit InvalidAugmentation(const std::string& why) : Error("InvalidAugmentation: " + why) {}
};

enum class AugMethod { BT, LC };

std::string_view to_string(AugMethod m);

struct AugmentedExample {
    std::string original;
    CodeSnippet snippet;
    ComplexityClass label = ComplexityClass::Constant;
    AugMethod method = AugMethod::LC;

    LabeledExample as_labeled() const { return {snippet, label}; }
};

enum class AugKind { None, BT, LC, BTPlusLC };
enum class Sampling { Natural, Artificial };

struct AugStrategy {
    AugKind kind = AugKind::None;
    Sampling sampling = Sampling::Natural;

    bool uses_bt() const { return kind == AugKind::BT || kind == AugKind::BTPlusLC; }
    bool uses_lc() const { return kind == AugKind::LC || kind == AugKind::BTPlusLC; }
};

/// "none", "bt", "lc", "bt+lc" (also "bt_plus_lc").
std::optional<AugKind> parse_aug_kind(std::string_view s);
std::string_view to_string(AugKind k);
std::optional<Sampling> parse_sampling(std::string_view s);
std::string_view to_string(Sampling s);

// ---------------------------------------------------------------- Loop conversion

/// Source with the for loop starting at `line` rewritten as a while loop.
/// Throws UnsupportedLoopForm when there is no such loop or it cannot be converted safely.
std::string for_to_while(const frontend::StructuralIR& ir, std::size_t line);

/// Source with the while loop starting at `line` rewritten as a for loop.
std::string while_to_for(const frontend::StructuralIR& ir, std::size_t line);

/// Flips every convertible loop. Absent when the snippet has no loops, does not
/// parse, or no loop could be converted.
std::optional<AugmentedExample> loop_convert(const LabeledExample& example);

/// True when the snippet parses and contains at least one loop.
bool contains_loop(const CodeSnippet& snippet);

// ---------------------------------------------------------------- Back-translation

/// Source of round-tripped code.
class Backtranslator {
public:
    virtual ~Backtranslator() = default;
    /// Raw returned code. Throws AugmenterError on backend-reported failures.
    virtual std::string backtranslate(const CodeSnippet& snippet) = 0;
};

/// Talks the augmenter wire protocol to a spawned process.
class SubprocessBacktranslator : public Backtranslator {
public:
    /// Throws AugmenterUnavailable when the command cannot be started.
    explicit SubprocessBacktranslator(const std::string& command);
    ~SubprocessBacktranslator() override;
    std::string backtranslate(const CodeSnippet& snippet) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Pre-computed translations keyed by original id (JSONL records with `id` and `code`).
class CachedBacktranslator : public Backtranslator {
public:
    explicit CachedBacktranslator(std::map<std::string, std::string> by_id);
    static CachedBacktranslator load(const std::filesystem::path& path);
    std::string backtranslate(const CodeSnippet& snippet) override;

private:
    std::map<std::string, std::string> by_id_;
};

/// Prompt template text shipped for LLM-backed augmenters, placeholders filled in.
std::string backtranslation_prompt(const CodeSnippet& snippet);
std::string loop_conversion_prompt(const CodeSnippet& snippet);

/// Asks the backend, then validates: the result must parse and differ structurally
/// from the input. Throws InvalidAugmentation otherwise.
CodeSnippet external_backtranslate(const CodeSnippet& snippet, Backtranslator& endpoint);

struct AugmentResult {
    std::vector<AugmentedExample> examples;
    std::size_t lc_skipped = 0;
    std::size_t bt_rejected = 0;
};

/// Augments the labeled set. Output ids are "<id>#lc" / "<id>#bt" and never collide
/// with input ids. Throws AugmenterUnavailable when BT is requested without a backend.
AugmentResult augment_dataset(const std::vector<LabeledExample>& labeled, const AugStrategy& strategy,
                              Backtranslator* bt);

}  // namespace tcpl::augment
