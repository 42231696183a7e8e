// Classifier wire protocol server hosting the built-in model, plus fixed-output test modes.
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpl/classifier/classifier.hpp"

using nlohmann::json;
using namespace tcpl;
using namespace tcpl::classifier;

namespace {

CodeSnippet snippet_from(const json& e) {
    const auto lang = parse_language(e.at("language").get<std::string>());
    if (!lang) throw std::runtime_error("unknown language " + e.at("language").dump());
    return {e.at("id").get<std::string>(), e.at("code").get<std::string>(), *lang};
}

json probs_json(const ClassSet& classes, const std::vector<double>& probs) {
    json out = json::object();
    for (std::size_t i = 0; i < classes.size(); ++i) out[std::string(to_string(classes[i]))] = probs[i];
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serves the classifier protocol on stdin/stdout."};
    std::string mode = "builtin";
    double peak = 0.7;
    app.add_option("--mode", mode, "builtin | uniform | sum08 | peak")
        ->check(CLI::IsMember({"builtin", "uniform", "sum08", "peak"}));
    app.add_option("--peak", peak, "probability given to the first class in peak mode")->check(CLI::Range(0.0, 1.0));
    CLI11_PARSE(app, argc, argv);

    ClassSet classes = ClassSet::all();
    std::optional<BuiltinModel> model;
    std::string line;
    while (std::getline(std::cin, line)) {
        json resp;
        try {
            const auto req = json::parse(line);
            const auto op = req.value("op", "");
            if (op == "hello") {
                if (req.contains("classes")) {
                    std::vector<ComplexityClass> cs;
                    for (const auto& n : req["classes"]) {
                        auto c = parse_complexity_class(n.get<std::string>());
                        if (!c) throw std::runtime_error("unknown class " + n.dump());
                        cs.push_back(*c);
                    }
                    classes = ClassSet(cs);
                }
                model.reset();
                resp["classes"] = json::array();
                for (auto c : classes) resp["classes"].push_back(std::string(to_string(c)));
            } else if (op == "fit") {
                std::vector<LabeledExample> data;
                for (const auto& e : req.at("examples")) {
                    auto c = parse_complexity_class(e.at("label").get<std::string>());
                    if (!c) throw std::runtime_error("unknown label " + e.at("label").dump());
                    data.push_back({snippet_from(e), *c});
                }
                if (!model) model.emplace(classes);
                model->fit(data, req.at("seed").get<std::uint64_t>());
                resp["ok"] = true;
            } else if (op == "predict") {
                resp["predictions"] = json::array();
                for (const auto& e : req.at("examples")) {
                    const auto s = snippet_from(e);
                    std::vector<double> probs;
                    if (mode == "builtin") {
                        probs = model && model->fitted() ? model->predict_one(s).probs
                                                         : ClassDistribution::uniform(classes).probs;
                    } else if (mode == "uniform") {
                        probs = ClassDistribution::uniform(classes).probs;
                    } else if (mode == "sum08") {
                        probs.assign(classes.size(), 0.8 / static_cast<double>(classes.size()));
                    } else {
                        const double rest = classes.size() > 1 ? (1.0 - peak) / static_cast<double>(classes.size() - 1) : 0.0;
                        probs.assign(classes.size(), rest);
                        probs[0] = peak;
                    }
                    resp["predictions"].push_back({{"id", s.id}, {"probs", probs_json(classes, probs)}});
                }
            } else {
                resp["error"] = "unknown op '" + op + "'";
            }
        } catch (const std::exception& e) {
            resp = {{"error", e.what()}};
        }
        std::cout << resp.dump() << std::endl;
    }
    return 0;
}
