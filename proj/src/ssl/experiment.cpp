#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tcpl/frontend/ir.hpp"
#include "tcpl/ssl/ssl.hpp"

namespace tcpl::ssl {

using nlohmann::json;
namespace fs = std::filesystem;

// ------------------------------------------------------------------- config

namespace {

void require_known_keys(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return (path.is_absolute() ? path : base / path).lexically_normal();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text, const fs::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    require_known_keys(j,
                       {"name", "train", "validation", "test", "classes", "mode", "k_shot", "theta", "epochs", "seeds",
                        "use_sym", "augmentation", "classifier", "selection", "output", "jobs"},
                       "config");
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        if (!j.contains("train") || !j.contains("test")) throw ConfigError("config needs 'train' and 'test' dataset paths");
        c.train = resolve(base_dir, j.at("train").get<std::string>());
        c.test = resolve(base_dir, j.at("test").get<std::string>());
        if (j.contains("validation") && !j["validation"].is_null()) {
            c.validation = resolve(base_dir, j["validation"].get<std::string>());
        }
        if (j.contains("classes")) {
            std::vector<ComplexityClass> cs;
            for (const auto& n : j["classes"]) {
                auto cls = parse_complexity_class(n.get<std::string>());
                if (!cls) throw ConfigError("unknown class " + n.dump());
                cs.push_back(*cls);
            }
            c.classes = ClassSet(cs);
        }
        if (j.contains("mode")) {
            auto m = parse_mode(j["mode"].get<std::string>());
            if (!m) throw ConfigError("mode must be self-train or co-train");
            c.mode = *m;
        }
        c.k_shot = j.value("k_shot", c.k_shot);
        c.theta = j.value("theta", c.theta);
        c.epochs = j.value("epochs", c.epochs);
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        c.use_sym = j.value("use_sym", c.use_sym);
        if (j.contains("augmentation")) {
            const auto& a = j["augmentation"];
            require_known_keys(a, {"strategy", "sampling", "augmenter", "cache"}, "augmentation");
            auto kind = augment::parse_aug_kind(a.value("strategy", "none"));
            if (!kind) throw ConfigError("augmentation.strategy must be none, bt, lc or bt+lc");
            auto sampling = augment::parse_sampling(a.value("sampling", "natural"));
            if (!sampling) throw ConfigError("augmentation.sampling must be natural or artificial");
            c.augmentation = {*kind, *sampling};
            c.augmenter = a.value("augmenter", "");
            if (a.contains("cache")) c.bt_cache = resolve(base_dir, a["cache"].get<std::string>());
        }
        if (j.contains("classifier")) {
            const auto& k = j["classifier"];
            require_known_keys(k, {"backend", "learning_rate", "epochs_per_fit", "l2", "ngram_max", "batch_size"},
                               "classifier");
            c.backend = k.value("backend", c.backend);
            auto& hp = c.hyperparams;
            hp.learning_rate = k.value("learning_rate", hp.learning_rate);
            hp.epochs_per_fit = k.value("epochs_per_fit", hp.epochs_per_fit);
            hp.l2 = k.value("l2", hp.l2);
            hp.ngram_max = k.value("ngram_max", hp.ngram_max);
            hp.batch_size = k.value("batch_size", hp.batch_size);
        }
        if (j.contains("selection")) {
            const auto s = j["selection"].get<std::string>();
            if (s == "best-validation") c.selection = Selection::BestValidation;
            else if (s == "last") c.selection = Selection::LastEpoch;
            else throw ConfigError("selection must be best-validation or last");
        } else if (!c.validation) {
            c.selection = Selection::LastEpoch;
        }
        c.output = resolve(base_dir, j.value("output", std::string("runs/") + c.name));
        c.jobs = j.value("jobs", c.jobs);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }

    if (c.k_shot == 0) throw ConfigError("k_shot must be at least 1");
    if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
    if (c.epochs < 1) throw ConfigError("epochs must be at least 1");
    if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
    if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
    if (c.selection == Selection::BestValidation && !c.validation) {
        throw ConfigError("best-validation selection needs a validation dataset");
    }
    if (c.mode == Mode::CoTrain && c.augmentation.kind == augment::AugKind::None) {
        throw ConfigError("co-training needs an augmentation strategy to build B_aug's view");
    }
    if (c.augmentation.sampling == augment::Sampling::Artificial && !c.augmentation.uses_lc()) {
        throw ConfigError("artificial sampling only applies to strategies with loop conversion");
    }
    if (c.backend != "builtin" && c.backend.rfind("external:", 0) != 0) {
        throw ConfigError("classifier.backend must be builtin or external:<command>");
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return from_json(ss.str(), path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

json config_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["train"] = c.train.string();
    j["validation"] = c.validation ? json(c.validation->string()) : json(nullptr);
    j["test"] = c.test.string();
    if (c.classes) {
        j["classes"] = json::array();
        for (auto cls : *c.classes) j["classes"].push_back(std::string(to_string(cls)));
    }
    j["mode"] = std::string(to_string(c.mode));
    j["k_shot"] = c.k_shot;
    j["theta"] = c.theta;
    j["epochs"] = c.epochs;
    j["seeds"] = c.seeds;
    j["use_sym"] = c.use_sym;
    j["augmentation"] = {{"strategy", std::string(augment::to_string(c.augmentation.kind))},
                         {"sampling", std::string(augment::to_string(c.augmentation.sampling))},
                         {"augmenter", c.augmenter}};
    if (c.bt_cache) j["augmentation"]["cache"] = c.bt_cache->string();
    j["classifier"] = {{"backend", c.backend},
                       {"learning_rate", c.hyperparams.learning_rate},
                       {"epochs_per_fit", c.hyperparams.epochs_per_fit},
                       {"l2", c.hyperparams.l2},
                       {"ngram_max", c.hyperparams.ngram_max},
                       {"batch_size", c.hyperparams.batch_size}};
    j["selection"] = c.selection == Selection::BestValidation ? "best-validation" : "last";
    return j;
}

}  // namespace

std::string ExperimentConfig::to_json() const {
    auto j = config_json(*this);
    j["output"] = output.string();
    j["jobs"] = jobs;
    return j.dump(2);
}

// ------------------------------------------------------------------- running

namespace {

struct Inputs {
    Dataset train;
    std::optional<Dataset> validation;
    Dataset test;
};

Dataset load_against(const fs::path& path, const ClassSet& classes, const std::string& role) {
    auto d = load_jsonl(path, classes);
    for (const auto& e : d.entries()) {
        if (!e.label) throw DataError(path.string() + ": " + role + " example '" + e.snippet.id + "' has no label");
        if (!classes.contains(*e.label)) {
            throw DataError(path.string() + ": " + role + " label '" + std::string(to_string(*e.label)) +
                            "' is outside the training class set");
        }
    }
    return d;
}

Inputs load_inputs(const ExperimentConfig& c) {
    Inputs in{load_jsonl(c.train, c.classes), std::nullopt, {}};
    const auto& classes = in.train.class_set();
    in.test = load_against(c.test, classes, "test");
    if (c.validation) in.validation = load_against(*c.validation, classes, "validation");

    std::set<std::string> train_ids;
    for (const auto& e : in.train.entries()) train_ids.insert(e.snippet.id);
    auto disjoint = [&](const Dataset& d, const fs::path& p) {
        for (const auto& e : d.entries()) {
            if (train_ids.contains(e.snippet.id)) {
                throw DataError(p.string() + ": id '" + e.snippet.id + "' also appears in the training set");
            }
        }
    };
    disjoint(in.test, c.test);
    if (in.validation) disjoint(*in.validation, *c.validation);
    return in;
}

std::unique_ptr<augment::Backtranslator> make_backtranslator(const ExperimentConfig& c) {
    if (!c.augmentation.uses_bt()) return nullptr;
    if (c.bt_cache) return std::make_unique<augment::CachedBacktranslator>(augment::CachedBacktranslator::load(*c.bt_cache));
    if (!c.augmenter.empty()) return std::make_unique<augment::SubprocessBacktranslator>(c.augmenter);
    return nullptr;
}

SeedRun run_seed(const ExperimentConfig& c, const Inputs& in, std::uint64_t seed) {
    const auto& classes = in.train.class_set();
    EligibilityFn eligible;
    if (c.augmentation.sampling == augment::Sampling::Artificial) eligible = augment::contains_loop;
    auto split = few_shot_split(in.train, c.k_shot, seed, eligible);

    SSLState state;
    state.mode = c.mode;
    state.theta = c.theta;
    state.seed = seed;
    for (const auto& ex : split.labeled) state.labeled.add_original(ex);
    if (c.augmentation.kind != augment::AugKind::None) {
        auto bt = make_backtranslator(c);
        const auto aug = augment::augment_dataset(split.labeled, c.augmentation, bt.get());
        for (const auto& a : aug.examples) state.augmented.add_original(a.as_labeled());
    }
    state.unlabeled = std::move(split.unlabeled);
    state.model = classifier::make_classifier(c.backend, classes, c.hyperparams);
    if (c.mode == Mode::CoTrain) state.aug_model = classifier::make_classifier(c.backend, classes, c.hyperparams);

    std::set<std::string> held_out;
    for (const auto& e : in.test.entries()) held_out.insert(e.snippet.id);
    if (in.validation) {
        for (const auto& e : in.validation->entries()) held_out.insert(e.snippet.id);
    }
    for (const auto& ex : state.augmented.examples()) {
        if (held_out.contains(ex.snippet.id)) {
            throw DataError("augmented id '" + ex.snippet.id + "' collides with a held-out example");
        }
    }

    SeedRun run;
    run.seed = seed;
    run.labeled_size = state.labeled.size();
    run.augmented_size = state.augmented.size();
    run.unlabeled_size = state.unlabeled.size();
    std::map<std::string, ComplexityClass> hidden;
    for (const auto& u : state.unlabeled) {
        if (u.hidden_label) hidden.emplace(u.snippet.id, *u.hidden_label);
        try {
            frontend::parse(u.snippet);
            ++run.parse_clean_unlabeled;
        } catch (const frontend::ParseError&) {
        }
    }

    const SymbolicFn sym = c.use_sym ? symbolic_labeler(classes) : SymbolicFn{};
    const auto test = in.test.labeled();
    const auto validation = in.validation ? in.validation->labeled() : std::vector<LabeledExample>{};
    std::vector<Metrics> test_metrics;
    double best_val = -1.0;
    for (int e = 1; e <= c.epochs; ++e) {
        const auto log_start = state.log.size();
        EpochRecord rec;
        rec.stats = c.mode == Mode::SelfTrain ? self_train_epoch(state, sym) : co_train_epoch(state, sym);
        rec.coverage = run.parse_clean_unlabeled == 0
                           ? 1.0
                           : static_cast<double>(rec.stats.covered) / static_cast<double>(run.parse_clean_unlabeled);
        std::size_t judged = 0, right = 0;
        for (std::size_t i = log_start; i < state.log.size(); ++i) {
            if (auto it = hidden.find(state.log[i].id); it != hidden.end()) {
                ++judged;
                right += it->second == state.log[i].label;
            }
        }
        if (judged) rec.pseudo_label_accuracy = static_cast<double>(right) / static_cast<double>(judged);

        test_metrics.push_back(compute_metrics(predict_classes(state, test), test, classes));
        rec.test_accuracy = test_metrics.back().accuracy;
        rec.test_macro_f1 = test_metrics.back().macro_f1;
        if (!validation.empty()) {
            rec.validation_accuracy = compute_metrics(predict_classes(state, validation), validation, classes).accuracy;
        }
        const bool better = c.selection == Selection::LastEpoch || rec.validation_accuracy > best_val;
        if (better) {
            best_val = rec.validation_accuracy;
            run.selected_epoch = e;
        }
        run.epochs.push_back(std::move(rec));
    }
    run.test = test_metrics[static_cast<std::size_t>(run.selected_epoch - 1)];
    return run;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
    const auto inputs = load_inputs(config);
    RunReport report;
    report.config = config;
    if (config.jobs <= 1) {
        for (auto seed : config.seeds) report.runs.push_back(run_seed(config, inputs, seed));
    } else {
        // Seeds are independent; results are collected in config order.
        std::size_t next = 0;
        std::vector<std::optional<SeedRun>> done(config.seeds.size());
        std::vector<std::pair<std::size_t, std::future<SeedRun>>> running;
        while (next < config.seeds.size() || !running.empty()) {
            while (next < config.seeds.size() && running.size() < static_cast<std::size_t>(config.jobs)) {
                running.emplace_back(next, std::async(std::launch::async, run_seed, std::cref(config), std::cref(inputs),
                                                      config.seeds[next]));
                ++next;
            }
            auto& [idx, fut] = running.front();
            done[idx] = fut.get();
            running.erase(running.begin());
        }
        for (auto& r : done) report.runs.push_back(std::move(*r));
    }
    std::vector<double> acc, f1;
    for (const auto& r : report.runs) {
        acc.push_back(r.test.accuracy);
        f1.push_back(r.test.macro_f1);
    }
    report.accuracy = mean_std(acc);
    report.macro_f1 = mean_std(f1);
    return report;
}

// ------------------------------------------------------------------- report

std::string RunReport::to_json() const {
    json j;
    j["config"] = config_json(config);
    j["runs"] = json::array();
    for (const auto& r : runs) {
        json run;
        run["seed"] = r.seed;
        run["labeled"] = r.labeled_size;
        run["augmented"] = r.augmented_size;
        run["unlabeled"] = r.unlabeled_size;
        run["unlabeled_parse_clean"] = r.parse_clean_unlabeled;
        run["selected_epoch"] = r.selected_epoch;
        run["test"] = {{"accuracy", r.test.accuracy}, {"macro_f1", r.test.macro_f1}, {"total", r.test.total}};
        json per_class = json::object();
        for (const auto& [cls, f] : r.test.per_class_f1) per_class[std::string(to_string(cls))] = f;
        run["test"]["per_class_f1"] = per_class;
        run["epochs"] = json::array();
        for (const auto& e : r.epochs) {
            json ej = {{"epoch", e.stats.epoch},
                       {"validation_accuracy", e.validation_accuracy},
                       {"test_accuracy", e.test_accuracy},
                       {"test_macro_f1", e.test_macro_f1},
                       {"pseudo_labels", {{"model", e.stats.model_labels}, {"symbolic", e.stats.symbolic_labels}}},
                       {"coverage", e.coverage},
                       {"labeled_size", e.stats.labeled_size},
                       {"augmented_size", e.stats.augmented_size}};
            ej["pseudo_label_accuracy"] = e.pseudo_label_accuracy ? json(*e.pseudo_label_accuracy) : json(nullptr);
            run["epochs"].push_back(std::move(ej));
        }
        j["runs"].push_back(std::move(run));
    }
    j["summary"] = {
        {"accuracy", {{"mean", accuracy.mean}, {"std", accuracy.stddev}, {"row", format_percent_row(accuracy)}}},
        {"macro_f1", {{"mean", macro_f1.mean}, {"std", macro_f1.stddev}, {"row", format_percent_row(macro_f1)}}},
    };
    return j.dump(2) + "\n";
}

std::string RunReport::epochs_csv() const {
    std::ostringstream out;
    out.precision(6);
    out << "seed,epoch,validation_accuracy,test_accuracy,test_macro_f1,model_labels,symbolic_labels,coverage,"
           "labeled_size,augmented_size,pseudo_label_accuracy\n";
    for (const auto& r : runs) {
        for (const auto& e : r.epochs) {
            out << r.seed << ',' << e.stats.epoch << ',' << e.validation_accuracy << ',' << e.test_accuracy << ','
                << e.test_macro_f1 << ',' << e.stats.model_labels << ',' << e.stats.symbolic_labels << ',' << e.coverage
                << ',' << e.stats.labeled_size << ',' << e.stats.augmented_size << ',';
            if (e.pseudo_label_accuracy) out << *e.pseudo_label_accuracy;
            out << '\n';
        }
    }
    return out.str();
}

std::string RunReport::confusion_csv() const {
    std::ostringstream out;
    out << "seed,gold";
    if (!runs.empty()) {
        for (auto c : runs.front().test.class_set) out << ',' << to_string(c);
    }
    out << '\n';
    for (const auto& r : runs) {
        const auto& cs = r.test.class_set;
        for (std::size_t g = 0; g < cs.size(); ++g) {
            out << r.seed << ',' << to_string(cs[g]);
            for (auto n : r.test.confusion[g]) out << ',' << n;
            out << '\n';
        }
    }
    return out.str();
}

std::vector<fs::path> RunReport::write(bool force) const {
    const auto& dir = config.output;
    const std::vector<std::pair<fs::path, std::string>> files = {
        {dir / "report.json", to_json()},
        {dir / "epochs.csv", epochs_csv()},
        {dir / "confusion.csv", confusion_csv()},
    };
    if (!force) {
        for (const auto& [p, _] : files) {
            if (fs::exists(p)) throw IoError(p.string() + " exists (use --force to overwrite)");
        }
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::vector<fs::path> written;
    for (const auto& [p, text] : files) {
        std::ofstream out(p);
        if (!out || !(out << text)) throw IoError("cannot write " + p.string());
        written.push_back(p);
    }
    return written;
}

}  // namespace tcpl::ssl
