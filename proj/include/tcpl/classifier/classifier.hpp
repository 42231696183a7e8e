#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tcpl/core/dataset.hpp"
#include "tcpl/core/errors.hpp"

namespace tcpl::classifier {

class EmptyTrainingSet : public Error {
public:
    EmptyTrainingSet() : Error("EmptyTrainingSet: fit needs at least one labeled example") {}
};

class UnfittedModel : public Error {
public:
    UnfittedModel() : Error("UnfittedModel: predict called before fit") {}
};

class BackendUnavailable : public Error {
public:
    explicit BackendUnavailable(const std::string& why) : Error("BackendUnavailable: " + why) {}
};

class ProtocolViolation : public Error {
public:
    explicit ProtocolViolation(const std::string& why) : Error("ProtocolViolation: " + why) {}
};

/// Probabilities over a class set, indexed by position in that set.
struct ClassDistribution {
    ClassSet classes;
    std::vector<double> probs;

    double prob(ComplexityClass c) const { return probs[classes.position(c)]; }
    /// Most probable class; ties go to the earlier class.
    ComplexityClass argmax() const;
    double max_prob() const;

    static ClassDistribution uniform(const ClassSet& classes);
};

/// The trainable model B.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual const ClassSet& class_set() const = 0;

    /// Continues training from the current state. Throws EmptyTrainingSet.
    virtual void fit(const std::vector<LabeledExample>& data, std::uint64_t seed) = 0;

    /// One distribution per snippet, in order. Throws UnfittedModel.
    virtual std::vector<ClassDistribution> predict(const std::vector<CodeSnippet>& batch) = 0;
};

/// Abstracted code tokens followed by joined n-grams up to ngram_max, e.g.
/// "for i in range(n)" -> for i in range ( ID ) then "for i", "i in", ...
std::vector<std::string> tokenize(const CodeSnippet& snippet, int ngram_max = 2);

struct Hyperparams {
    double learning_rate = 2.0;
    int epochs_per_fit = 100;
    double l2 = 1e-4;
    int ngram_max = 2;
    std::size_t batch_size = 8;
};

/// Multinomial logistic regression over L2-normalised n-gram counts, trained by
/// mini-batch gradient descent. The first fit sets the biases to smoothed log class
/// frequencies; later fits warm-start from the current weights and the vocabulary only grows.
class BuiltinModel : public Classifier {
public:
    explicit BuiltinModel(ClassSet classes, Hyperparams hp = {});

    const ClassSet& class_set() const override { return classes_; }
    const Hyperparams& hyperparams() const { return hp_; }
    void fit(const std::vector<LabeledExample>& data, std::uint64_t seed) override;
    std::vector<ClassDistribution> predict(const std::vector<CodeSnippet>& batch) override;
    ClassDistribution predict_one(const CodeSnippet& snippet) const;

    bool fitted() const { return fitted_; }
    std::size_t vocabulary_size() const { return vocab_.size(); }

    /// Adds the n-grams of `data` to the vocabulary with zero weights.
    void extend_vocabulary(const std::vector<LabeledExample>& data);

    /// Flat parameters: weights (feature-major, one value per class) then biases.
    std::vector<double> parameters() const;
    void set_parameters(const std::vector<double>& params);

    /// Mean cross-entropy plus (l2 / 2) * |W|^2 (biases unregularised).
    double loss(const std::vector<LabeledExample>& data) const;
    /// Analytic gradient of loss() with respect to parameters().
    std::vector<double> gradient(const std::vector<LabeledExample>& data) const;

    void save(const std::filesystem::path& path) const;
    /// Throws IoError / DataError.
    static BuiltinModel load(const std::filesystem::path& path);

private:
    struct Sparse {
        std::vector<std::pair<std::size_t, double>> entries;
    };

    Sparse featurize(const CodeSnippet& snippet) const;
    std::vector<double> scores(const Sparse& x) const;
    void softmax_in_place(std::vector<double>& v) const;
    void normalize_scale();

    ClassSet classes_;
    Hyperparams hp_;
    std::map<std::string, std::size_t> vocab_;
    std::vector<double> weights_;  // vocab x classes, effective weight = scale_ * weights_
    double scale_ = 1.0;
    std::vector<double> bias_;
    bool fitted_ = false;
};

/// Client for the classifier wire protocol over a spawned process.
class ExternalClassifier : public Classifier {
public:
    /// Starts the command and performs the handshake. Throws BackendUnavailable or
    /// ProtocolViolation (class set mismatch).
    ExternalClassifier(const std::string& command, ClassSet classes);
    ~ExternalClassifier() override;

    const ClassSet& class_set() const override { return classes_; }
    void fit(const std::vector<LabeledExample>& data, std::uint64_t seed) override;
    std::vector<ClassDistribution> predict(const std::vector<CodeSnippet>& batch) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ClassSet classes_;
};

/// Tolerance for |sum(probs) - 1| on distributions received over the protocol.
inline constexpr double kProtocolSumTolerance = 1e-6;

/// "builtin" or "external:<command line>".
std::unique_ptr<Classifier> make_classifier(const std::string& backend, const ClassSet& classes,
                                            const Hyperparams& hp = {});

}  // namespace tcpl::classifier
