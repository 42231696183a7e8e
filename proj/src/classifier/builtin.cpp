#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "tcpl/classifier/classifier.hpp"
#include "tcpl/util/random.hpp"

namespace tcpl::classifier {

using nlohmann::json;

namespace {
constexpr double kPriorSmoothing = 0.01;
}  // namespace

ComplexityClass ClassDistribution::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best]) best = i;
    }
    return classes[best];
}

double ClassDistribution::max_prob() const { return *std::max_element(probs.begin(), probs.end()); }

ClassDistribution ClassDistribution::uniform(const ClassSet& classes) {
    return {classes, std::vector<double>(classes.size(), 1.0 / static_cast<double>(classes.size()))};
}

BuiltinModel::BuiltinModel(ClassSet classes, Hyperparams hp)
    : classes_(std::move(classes)), hp_(hp), bias_(classes_.size(), 0.0) {
    if (classes_.empty()) throw ConfigError("classifier needs a non-empty class set");
    if (hp_.batch_size == 0 || hp_.epochs_per_fit < 0 || hp_.learning_rate <= 0 || hp_.l2 < 0 || hp_.ngram_max < 1) {
        throw ConfigError("invalid classifier hyperparameters");
    }
}

BuiltinModel::Sparse BuiltinModel::featurize(const CodeSnippet& snippet) const {
    std::map<std::string, double> counts;
    for (auto& t : tokenize(snippet, hp_.ngram_max)) counts[std::move(t)] += 1.0;
    double norm = 0.0;
    for (const auto& [_, c] : counts) norm += c * c;
    norm = std::sqrt(norm);
    Sparse x;
    for (const auto& [gram, c] : counts) {
        if (auto it = vocab_.find(gram); it != vocab_.end()) x.entries.emplace_back(it->second, c / norm);
    }
    return x;
}

void BuiltinModel::extend_vocabulary(const std::vector<LabeledExample>& data) {
    const std::size_t k = classes_.size();
    for (const auto& ex : data) {
        for (auto& t : tokenize(ex.snippet, hp_.ngram_max)) {
            if (vocab_.emplace(std::move(t), vocab_.size()).second) weights_.resize(vocab_.size() * k, 0.0);
        }
    }
}

std::vector<double> BuiltinModel::scores(const Sparse& x) const {
    const std::size_t k = classes_.size();
    std::vector<double> s(k, 0.0);
    for (const auto& [f, v] : x.entries) {
        for (std::size_t c = 0; c < k; ++c) s[c] += weights_[f * k + c] * v;
    }
    for (std::size_t c = 0; c < k; ++c) s[c] = scale_ * s[c] + bias_[c];
    return s;
}

void BuiltinModel::softmax_in_place(std::vector<double>& v) const {
    const double top = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (auto& e : v) sum += (e = std::exp(e - top));
    for (auto& e : v) e /= sum;
}

void BuiltinModel::normalize_scale() {
    for (auto& w : weights_) w *= scale_;
    scale_ = 1.0;
}

void BuiltinModel::fit(const std::vector<LabeledExample>& data, std::uint64_t seed) {
    if (data.empty()) throw EmptyTrainingSet();
    for (const auto& ex : data) {
        if (!classes_.contains(ex.label)) {
            throw DataError("label '" + std::string(to_string(ex.label)) + "' of '" + ex.snippet.id +
                            "' is outside the classifier's class set");
        }
    }
    extend_vocabulary(data);
    const std::size_t k = classes_.size();
    std::vector<Sparse> xs;
    std::vector<std::size_t> ys;
    xs.reserve(data.size());
    for (const auto& ex : data) {
        xs.push_back(featurize(ex.snippet));
        ys.push_back(classes_.position(ex.label));
    }

    if (!fitted_) {
        // Start from smoothed log class frequencies so unseen inputs fall back to the prior.
        std::vector<double> count(k, 0.0);
        for (auto y : ys) count[y] += 1.0;
        const double n = static_cast<double>(ys.size());
        for (std::size_t c = 0; c < k; ++c) {
            bias_[c] = std::log((count[c] + kPriorSmoothing) / (n + kPriorSmoothing * static_cast<double>(k)));
        }
    }

    Rng rng(derive_seed(seed, "builtin-fit"));
    std::vector<std::size_t> order(data.size());
    std::vector<double> grad_bias(k);
    std::vector<double> grad_w(weights_.size(), 0.0);
    std::vector<char> marked(vocab_.size(), 0);
    std::vector<std::size_t> touched;
    const double lr = hp_.learning_rate;
    for (int epoch = 0; epoch < hp_.epochs_per_fit; ++epoch) {
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t start = 0; start < order.size(); start += hp_.batch_size) {
            const std::size_t end = std::min(order.size(), start + hp_.batch_size);
            const double m = static_cast<double>(end - start);
            std::fill(grad_bias.begin(), grad_bias.end(), 0.0);
            for (std::size_t b = start; b < end; ++b) {
                const auto& x = xs[order[b]];
                auto p = scores(x);
                softmax_in_place(p);
                p[ys[order[b]]] -= 1.0;
                for (std::size_t c = 0; c < k; ++c) grad_bias[c] += p[c];
                for (const auto& [f, v] : x.entries) {
                    if (!marked[f]) {
                        marked[f] = 1;
                        touched.push_back(f);
                    }
                    for (std::size_t c = 0; c < k; ++c) grad_w[f * k + c] += p[c] * v;
                }
            }
            // Weight decay through the shared scale, then the sparse data term.
            scale_ *= 1.0 - lr * hp_.l2;
            std::sort(touched.begin(), touched.end());
            for (auto f : touched) {
                for (std::size_t c = 0; c < k; ++c) {
                    weights_[f * k + c] -= lr * grad_w[f * k + c] / m / scale_;
                    grad_w[f * k + c] = 0.0;
                }
                marked[f] = 0;
            }
            touched.clear();
            for (std::size_t c = 0; c < k; ++c) bias_[c] -= lr * grad_bias[c] / m;
            if (scale_ < 1e-6) normalize_scale();
        }
    }
    normalize_scale();
    fitted_ = true;
}

ClassDistribution BuiltinModel::predict_one(const CodeSnippet& snippet) const {
    if (!fitted_) throw UnfittedModel();
    auto p = scores(featurize(snippet));
    softmax_in_place(p);
    return {classes_, std::move(p)};
}

std::vector<ClassDistribution> BuiltinModel::predict(const std::vector<CodeSnippet>& batch) {
    std::vector<ClassDistribution> out;
    out.reserve(batch.size());
    for (const auto& s : batch) out.push_back(predict_one(s));
    return out;
}

std::vector<double> BuiltinModel::parameters() const {
    std::vector<double> p;
    p.reserve(weights_.size() + bias_.size());
    for (double w : weights_) p.push_back(scale_ * w);
    p.insert(p.end(), bias_.begin(), bias_.end());
    return p;
}

void BuiltinModel::set_parameters(const std::vector<double>& params) {
    if (params.size() != weights_.size() + bias_.size()) throw Error("parameter vector has the wrong length");
    std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(weights_.size()), weights_.begin());
    std::copy(params.begin() + static_cast<std::ptrdiff_t>(weights_.size()), params.end(), bias_.begin());
    scale_ = 1.0;
    fitted_ = true;
}

double BuiltinModel::loss(const std::vector<LabeledExample>& data) const {
    if (data.empty()) throw EmptyTrainingSet();
    double total = 0.0;
    for (const auto& ex : data) {
        auto s = scores(featurize(ex.snippet));
        const double top = *std::max_element(s.begin(), s.end());
        double sum = 0.0;
        for (double e : s) sum += std::exp(e - top);
        total += top + std::log(sum) - s[classes_.position(ex.label)];
    }
    double reg = 0.0;
    for (double w : weights_) reg += (scale_ * w) * (scale_ * w);
    return total / static_cast<double>(data.size()) + 0.5 * hp_.l2 * reg;
}

std::vector<double> BuiltinModel::gradient(const std::vector<LabeledExample>& data) const {
    if (data.empty()) throw EmptyTrainingSet();
    const std::size_t k = classes_.size();
    const double m = static_cast<double>(data.size());
    std::vector<double> g(weights_.size() + k, 0.0);
    for (const auto& ex : data) {
        const auto x = featurize(ex.snippet);
        auto p = scores(x);
        softmax_in_place(p);
        p[classes_.position(ex.label)] -= 1.0;
        for (const auto& [f, v] : x.entries) {
            for (std::size_t c = 0; c < k; ++c) g[f * k + c] += p[c] * v / m;
        }
        for (std::size_t c = 0; c < k; ++c) g[weights_.size() + c] += p[c] / m;
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) g[i] += hp_.l2 * scale_ * weights_[i];
    return g;
}

// ------------------------------------------------------------------- persistence

namespace {
constexpr const char* kFormat = "tcpl-builtin-model";
constexpr int kVersion = 1;
}  // namespace

void BuiltinModel::save(const std::filesystem::path& path) const {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["classes"] = json::array();
    for (auto c : classes_) j["classes"].push_back(std::string(to_string(c)));
    j["hyperparams"] = {{"learning_rate", hp_.learning_rate},
                        {"epochs_per_fit", hp_.epochs_per_fit},
                        {"l2", hp_.l2},
                        {"ngram_max", hp_.ngram_max},
                        {"batch_size", hp_.batch_size}};
    std::vector<std::string> grams(vocab_.size());
    for (const auto& [gram, idx] : vocab_) grams[idx] = gram;
    j["vocabulary"] = grams;
    j["weights"] = parameters();
    j["fitted"] = fitted_;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file " + path.string());
    out << j.dump() << '\n';
    if (!out) throw IoError("write failed for model file " + path.string());
}

BuiltinModel BuiltinModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file " + path.string());
    try {
        const auto j = json::parse(in);
        if (j.at("format") != kFormat) throw DataError(path.string() + ": not a model file");
        if (j.at("version") != kVersion) {
            throw DataError(path.string() + ": unsupported model version " + j.at("version").dump());
        }
        std::vector<ComplexityClass> classes;
        for (const auto& name : j.at("classes")) {
            auto c = parse_complexity_class(name.get<std::string>());
            if (!c) throw DataError(path.string() + ": unknown class " + name.dump());
            classes.push_back(*c);
        }
        const auto& h = j.at("hyperparams");
        Hyperparams hp;
        hp.learning_rate = h.at("learning_rate").get<double>();
        hp.epochs_per_fit = h.at("epochs_per_fit").get<int>();
        hp.l2 = h.at("l2").get<double>();
        hp.ngram_max = h.at("ngram_max").get<int>();
        hp.batch_size = h.at("batch_size").get<std::size_t>();
        BuiltinModel model(ClassSet(classes), hp);
        const auto grams = j.at("vocabulary").get<std::vector<std::string>>();
        for (const auto& g : grams) model.vocab_.emplace(g, model.vocab_.size());
        if (model.vocab_.size() != grams.size()) throw DataError(path.string() + ": duplicate vocabulary entry");
        model.weights_.assign(grams.size() * model.classes_.size(), 0.0);
        model.set_parameters(j.at("weights").get<std::vector<double>>());
        model.fitted_ = j.at("fitted").get<bool>();
        return model;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw DataError(path.string() + ": " + e.what());
    } catch (const DataError&) {
        throw;
    } catch (const Error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace tcpl::classifier
