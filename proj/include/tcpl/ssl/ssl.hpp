#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcpl/augment/augment.hpp"
#include "tcpl/classifier/classifier.hpp"
#include "tcpl/core/dataset.hpp"
#include "tcpl/core/metrics.hpp"

namespace tcpl::ssl {

enum class PseudoSource { Model, Symbolic };

std::string_view to_string(PseudoSource s);

struct PseudoLabel {
    std::string id;
    ComplexityClass label = ComplexityClass::Constant;
    PseudoSource source = PseudoSource::Model;
    std::optional<double> confidence;  // MODEL only
    int epoch = 0;
};

/// Symbolic fallback: a class, or nothing when the snippet cannot be analysed.
using SymbolicFn = std::function<std::optional<ComplexityClass>(const CodeSnippet&)>;

/// analyze() clamped into `classes`, memoised by snippet id.
SymbolicFn symbolic_labeler(const ClassSet& classes);

/// Model label when max prob >= theta, otherwise the symbolic label when `sym` is set
/// and succeeds, otherwise nothing. `sym` is only called for items below theta.
std::vector<PseudoLabel> pseudo_label(classifier::Classifier& model, const SymbolicFn& sym,
                                      const std::vector<UnlabeledExample>& unlabeled, double theta, int epoch);

/// Training pool keyed by snippet id. Original examples are never relabelled; a
/// pseudo-labelled id holds its most recent label. Insertion order is kept.
class LabeledPool {
public:
    void add_original(const LabeledExample& ex);
    /// Returns how many entries were added or relabelled.
    std::size_t merge(const std::vector<PseudoLabel>& labels, const std::map<std::string, const CodeSnippet*>& snippets);
    void merge_originals(const LabeledPool& other);

    const std::vector<LabeledExample>& examples() const { return examples_; }
    std::size_t size() const { return examples_.size(); }
    bool contains(const std::string& id) const { return index_.contains(id); }
    bool is_original(const std::string& id) const;
    std::optional<ComplexityClass> label_of(const std::string& id) const;

private:
    std::vector<LabeledExample> examples_;
    std::vector<bool> original_;
    std::map<std::string, std::size_t> index_;
};

enum class Mode { SelfTrain, CoTrain };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

struct SSLState {
    Mode mode = Mode::SelfTrain;
    LabeledPool labeled;      // L
    LabeledPool augmented;    // L_aug
    std::vector<UnlabeledExample> unlabeled;  // U, kept for re-labelling every epoch
    std::unique_ptr<classifier::Classifier> model;      // B
    std::unique_ptr<classifier::Classifier> aug_model;  // B_aug, co-training only
    double theta = 0.7;
    int epoch = 0;
    std::uint64_t seed = 0;
    std::vector<PseudoLabel> log;
};

struct EpochStats {
    int epoch = 0;
    std::size_t model_labels = 0;      // over both models in co-training
    std::size_t symbolic_labels = 0;
    std::size_t covered = 0;           // distinct U ids that received any label this epoch
    std::size_t labeled_size = 0;      // |L| after the merge
    std::size_t augmented_size = 0;    // |L_aug| after the merge
};

/// L <- L u L_aug; fit B on L; label U; merge into L.
EpochStats self_train_epoch(SSLState& state, const SymbolicFn& sym);

/// Fit B on L and B_aug on L_aug; B's labels extend L_aug, B_aug's labels extend L.
/// Throws ConfigError when B_aug is missing.
EpochStats co_train_epoch(SSLState& state, const SymbolicFn& sym);

/// Class predictions of the current model(s); co-training averages both distributions.
std::map<std::string, ComplexityClass> predict_classes(SSLState& state, const std::vector<LabeledExample>& data);

// ------------------------------------------------------------------- experiments

enum class Selection { BestValidation, LastEpoch };

struct ExperimentConfig {
    std::string name = "experiment";
    std::filesystem::path train;
    std::optional<std::filesystem::path> validation;
    std::filesystem::path test;
    std::optional<ClassSet> classes;
    Mode mode = Mode::SelfTrain;
    std::size_t k_shot = 5;
    double theta = 0.7;
    int epochs = 20;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    bool use_sym = true;
    augment::AugStrategy augmentation;
    std::string augmenter;                            // command line, for BT
    std::optional<std::filesystem::path> bt_cache;   // pre-computed BT results
    std::string backend = "builtin";
    classifier::Hyperparams hyperparams;
    Selection selection = Selection::BestValidation;
    std::filesystem::path output = "runs/experiment";
    int jobs = 1;

    /// Relative paths resolve against `base_dir`. Throws ConfigError.
    static ExperimentConfig from_json(const std::string& text, const std::filesystem::path& base_dir);
    static ExperimentConfig load(const std::filesystem::path& path);
    std::string to_json() const;
};

struct EpochRecord {
    EpochStats stats;
    double validation_accuracy = 0.0;
    double test_accuracy = 0.0;
    double test_macro_f1 = 0.0;
    std::optional<double> pseudo_label_accuracy;  // against hidden labels, diagnostics only
    double coverage = 0.0;                         // covered / parse-clean |U|
};

struct SeedRun {
    std::uint64_t seed = 0;
    std::size_t labeled_size = 0;
    std::size_t augmented_size = 0;
    std::size_t unlabeled_size = 0;
    std::size_t parse_clean_unlabeled = 0;
    std::vector<EpochRecord> epochs;
    int selected_epoch = 0;
    Metrics test;  // of the selected epoch
};

struct RunReport {
    ExperimentConfig config;
    std::vector<SeedRun> runs;
    MeanStd accuracy;
    MeanStd macro_f1;

    std::string to_json() const;
    std::string epochs_csv() const;
    std::string confusion_csv() const;
    /// Writes report.json, epochs.csv, confusion.csv into config.output.
    std::vector<std::filesystem::path> write(bool force) const;
};

/// Runs every seed of the config. Throws ConfigError, DataError, IoError,
/// InsufficientClassCount, AugmenterUnavailable, and backend errors.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace tcpl::ssl
