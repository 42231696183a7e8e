#include <cmath>

#include "json.hpp"
#include "tcpl/classifier/classifier.hpp"
#include "tcpl/util/subprocess.hpp"

namespace tcpl::classifier {

using nlohmann::json;

struct ExternalClassifier::Impl {
    std::string command;
    std::unique_ptr<Subprocess> proc;

    json call(const json& request) {
        std::optional<std::string> line;
        try {
            proc->write_line(request.dump());
            line = proc->read_line(subprocess_timeout());
        } catch (const SubprocessTimeout& e) {
            throw BackendUnavailable("classifier '" + command + "': " + e.what());
        } catch (const SubprocessError& e) {
            throw BackendUnavailable("classifier '" + command + "': " + e.what());
        }
        if (!line) throw BackendUnavailable("classifier '" + command + "' closed its output");
        json response;
        try {
            response = json::parse(*line);
        } catch (const json::exception& e) {
            throw ProtocolViolation("malformed JSON from classifier: " + std::string(e.what()));
        }
        if (!response.is_object()) throw ProtocolViolation("classifier response is not an object");
        if (response.contains("error")) {
            const auto& err = response["error"];
            throw ProtocolViolation("classifier reported: " + (err.is_string() ? err.get<std::string>() : err.dump()));
        }
        return response;
    }
};

namespace {

json class_names(const ClassSet& classes) {
    json out = json::array();
    for (auto c : classes) out.push_back(std::string(to_string(c)));
    return out;
}

json snippet_json(const CodeSnippet& s) {
    return {{"id", s.id}, {"code", s.source}, {"language", std::string(to_string(s.language))}};
}

}  // namespace

ExternalClassifier::ExternalClassifier(const std::string& command, ClassSet classes)
    : impl_(std::make_unique<Impl>()), classes_(std::move(classes)) {
    impl_->command = command;
    try {
        const auto argv = split_command(command);
        if (argv.empty()) throw BackendUnavailable("empty classifier command");
        impl_->proc = std::make_unique<Subprocess>(argv);
    } catch (const SubprocessError& e) {
        throw BackendUnavailable(e.what());
    }
    const auto hello = impl_->call({{"op", "hello"}, {"classes", class_names(classes_)}});
    if (!hello.contains("classes") || hello["classes"] != class_names(classes_)) {
        throw ProtocolViolation("handshake class set " + (hello.contains("classes") ? hello["classes"].dump() : "<missing>") +
                                " differs from " + class_names(classes_).dump());
    }
}

ExternalClassifier::~ExternalClassifier() = default;

void ExternalClassifier::fit(const std::vector<LabeledExample>& data, std::uint64_t seed) {
    if (data.empty()) throw EmptyTrainingSet();
    json examples = json::array();
    for (const auto& ex : data) {
        auto e = snippet_json(ex.snippet);
        e["label"] = std::string(to_string(ex.label));
        examples.push_back(std::move(e));
    }
    const auto r = impl_->call({{"op", "fit"}, {"examples", std::move(examples)}, {"seed", seed}});
    if (!r.contains("ok") || r["ok"] != true) throw ProtocolViolation("fit response lacks \"ok\": true");
}

std::vector<ClassDistribution> ExternalClassifier::predict(const std::vector<CodeSnippet>& batch) {
    json examples = json::array();
    for (const auto& s : batch) examples.push_back(snippet_json(s));
    const auto r = impl_->call({{"op", "predict"}, {"examples", std::move(examples)}});
    if (!r.contains("predictions") || !r["predictions"].is_array() || r["predictions"].size() != batch.size()) {
        throw ProtocolViolation("predict response must hold one prediction per example");
    }
    std::vector<ClassDistribution> out;
    out.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& p = r["predictions"][i];
        if (!p.is_object() || !p.contains("id") || p["id"] != batch[i].id) {
            throw ProtocolViolation("prediction " + std::to_string(i) + " does not answer '" + batch[i].id + "'");
        }
        if (!p.contains("probs") || !p["probs"].is_object() || p["probs"].size() != classes_.size()) {
            throw ProtocolViolation("prediction for '" + batch[i].id + "' must give one probability per class");
        }
        ClassDistribution d{classes_, {}};
        double sum = 0.0;
        for (auto c : classes_) {
            const auto key = std::string(to_string(c));
            if (!p["probs"].contains(key) || !p["probs"][key].is_number()) {
                throw ProtocolViolation("prediction for '" + batch[i].id + "' lacks class '" + key + "'");
            }
            const double v = p["probs"][key].get<double>();
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ProtocolViolation("probability outside [0, 1] for '" + batch[i].id + "'");
            }
            d.probs.push_back(v);
            sum += v;
        }
        if (std::abs(sum - 1.0) > kProtocolSumTolerance) {
            throw ProtocolViolation("probabilities for '" + batch[i].id + "' sum to " + std::to_string(sum));
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::unique_ptr<Classifier> make_classifier(const std::string& backend, const ClassSet& classes, const Hyperparams& hp) {
    if (backend == "builtin") return std::make_unique<BuiltinModel>(classes, hp);
    constexpr std::string_view prefix = "external:";
    if (backend.rfind(prefix, 0) == 0) return std::make_unique<ExternalClassifier>(backend.substr(prefix.size()), classes);
    throw ConfigError("unknown classifier backend '" + backend + "' (expected builtin or external:<command>)");
}

}  // namespace tcpl::classifier
