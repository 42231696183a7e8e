#include "tcpl/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpl/augment/augment.hpp"
#include "tcpl/classifier/classifier.hpp"
#include "tcpl/core/metrics.hpp"
#include "tcpl/corpus/generate.hpp"
#include "tcpl/ssl/ssl.hpp"
#include "tcpl/symbolic/analyzer.hpp"

namespace tcpl::cli {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const augment::AugmenterUnavailable*>(&e)) return kNoAugmenter;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InsufficientClassCount*>(&e)) return kConfig;
    if (dynamic_cast<const IoError*>(&e)) return kIo;
    if (dynamic_cast<const DataError*>(&e)) return kData;
    return kRuntime;
}

namespace {

struct Globals {
    std::uint64_t seed = 1;
    bool seed_given = false;
    bool force = false;
    int jobs = 0;  // 0: keep the config's value
    std::string format = "json";
};

void ensure_writable(const fs::path& path, bool force) {
    if (!force && fs::exists(path)) throw IoError(path.string() + " exists (use --force to overwrite)");
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Records go to `path`, or to `out` when no path is given.
void emit(const std::optional<fs::path>& path, const std::string& text, bool force, std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    ensure_writable(*path, force);
    write_file(*path, text);
}

json metrics_json(const Metrics& m) {
    json j = {{"accuracy", m.accuracy}, {"macro_f1", m.macro_f1}, {"total", m.total}};
    json per = json::object();
    for (const auto& [c, f] : m.per_class_f1) per[std::string(to_string(c))] = f;
    j["per_class_f1"] = per;
    j["classes"] = json::array();
    for (auto c : m.class_set) j["classes"].push_back(std::string(to_string(c)));
    j["confusion"] = m.confusion;
    return j;
}

// ------------------------------------------------------------------- analyze

std::vector<CodeSnippet> collect_snippets(const std::vector<std::string>& paths, const std::string& language) {
    std::optional<Language> forced;
    if (!language.empty()) forced = parse_language(language);
    std::vector<CodeSnippet> out;
    auto add_file = [&](const fs::path& p) {
        if (p.extension() == ".jsonl") {
            const auto data = load_jsonl(p);
            for (const auto& e : data.entries()) out.push_back(e.snippet);
            return;
        }
        const auto lang = forced ? forced : language_from_extension(p);
        if (!lang) throw DataError(p.string() + ": cannot tell the language (use --language)");
        out.push_back({p.stem().string(), read_file(p), *lang});
    };
    for (const auto& arg : paths) {
        const fs::path p(arg);
        if (!fs::exists(p)) throw IoError(arg + ": no such file or directory");
        if (!fs::is_directory(p)) {
            add_file(p);
            continue;
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(p)) {
            if (entry.is_regular_file() && language_from_extension(entry.path())) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) add_file(f);
    }
    std::set<std::string> seen;
    for (const auto& s : out) {
        if (!seen.insert(s.id).second) throw DataError("duplicate snippet id '" + s.id + "'");
    }
    return out;
}

int cmd_analyze(const Globals& g, const std::vector<std::string>& paths, const std::string& language,
                const std::string& gold_path, const std::string& output, const std::string& metrics_path,
                std::ostream& out, std::ostream& err) {
    const auto snippets = collect_snippets(paths, language);
    std::optional<Dataset> gold;
    if (!gold_path.empty()) gold = load_jsonl(gold_path);

    std::map<std::string, ComplexityClass> predicted;
    std::ostringstream records;
    if (g.format == "csv") records << "id,class\n";
    for (const auto& s : snippets) {
        json rec = {{"id", s.id}};
        try {
            const auto a = symbolic::analyze(s);
            auto cls = a.cls;
            if (gold) cls = gold->class_set().clamp(cls);
            predicted[s.id] = cls;
            rec["class"] = std::string(to_string(cls));
            rec["trace"] = a.trace;
        } catch (const symbolic::AnalysisUnavailable& e) {
            rec["class"] = nullptr;
            rec["error"] = e.what();
        }
        if (g.format == "csv") {
            records << csv_field(s.id) << ',' << (rec["class"].is_null() ? "" : rec["class"].get<std::string>()) << '\n';
        } else {
            records << rec.dump() << '\n';
        }
    }
    std::optional<fs::path> out_path;
    if (!output.empty()) out_path = output;
    emit(out_path, records.str(), g.force, out);
    if (!gold) return kOk;

    std::set<std::string> have;
    for (const auto& s : snippets) have.insert(s.id);
    std::vector<LabeledExample> judged;
    std::size_t unanalysable = 0;
    for (const auto& ex : gold->labeled()) {
        if (!have.contains(ex.snippet.id)) throw DataError(gold_path + ": gold id '" + ex.snippet.id + "' has no snippet");
        if (predicted.contains(ex.snippet.id)) judged.push_back(ex);
        else ++unanalysable;
    }
    const auto m = compute_metrics(predicted, judged, gold->class_set());
    auto mj = metrics_json(m);
    mj["unanalysable"] = unanalysable;
    fs::path mpath = metrics_path.empty() ? (out_path ? fs::path(out_path->string() + ".metrics.json") : fs::path("metrics.json"))
                                          : fs::path(metrics_path);
    ensure_writable(mpath, g.force);
    write_file(mpath, mj.dump(2) + "\n");
    err << "symbolic accuracy " << std::fixed << std::setprecision(4) << m.accuracy << " over " << m.total
        << " gold snippets (" << unanalysable << " unanalysable), metrics in " << mpath.string() << "\n";
    return kOk;
}

// ------------------------------------------------------------------- augment

int cmd_augment(const Globals& g, const std::string& input, const std::string& strategy_name,
                const std::string& augmenter, const std::string& cache, const std::string& output, std::ostream& err) {
    const auto kind = augment::parse_aug_kind(strategy_name);
    if (!kind || *kind == augment::AugKind::None) throw ConfigError("--strategy must be bt, lc or bt+lc");
    const augment::AugStrategy strategy{*kind, augment::Sampling::Natural};
    if (strategy.uses_bt() && augmenter.empty() && cache.empty()) {
        throw augment::AugmenterUnavailable("back-translation needs --augmenter or --cache");
    }
    const auto data = load_jsonl(input);
    const auto labeled = data.labeled();
    if (labeled.size() != data.size()) throw DataError(input + ": augmentation needs every record labelled");

    const fs::path out_path(output);
    auto prov_path = out_path;
    prov_path.replace_extension(".provenance.json");
    ensure_writable(out_path, g.force);
    ensure_writable(prov_path, g.force);

    std::unique_ptr<augment::Backtranslator> bt;
    if (strategy.uses_bt()) {
        if (!cache.empty()) bt = std::make_unique<augment::CachedBacktranslator>(augment::CachedBacktranslator::load(cache));
        else bt = std::make_unique<augment::SubprocessBacktranslator>(augmenter);
    }
    const auto result = augment::augment_dataset(labeled, strategy, bt.get());

    std::vector<DatasetEntry> entries = data.entries();
    json prov = {{"input", input}, {"strategy", std::string(augment::to_string(*kind))}, {"records", json::array()}};
    for (const auto& a : result.examples) {
        entries.push_back({a.snippet, a.label});
        prov["records"].push_back({{"id", a.snippet.id},
                                   {"original", a.original},
                                   {"method", a.method == augment::AugMethod::BT ? "bt" : "lc"}});
    }
    prov["lc_skipped"] = result.lc_skipped;
    prov["bt_rejected"] = result.bt_rejected;
    save_jsonl(out_path, Dataset(std::move(entries), data.class_set()));
    write_file(prov_path, prov.dump(2) + "\n");
    err << "wrote " << data.size() + result.examples.size() << " records (" << result.examples.size()
        << " augmented, " << result.lc_skipped << " without a convertible loop, " << result.bt_rejected
        << " back-translations rejected) to " << out_path.string() << "\n";
    return kOk;
}

// ------------------------------------------------------------------- train / predict

int cmd_train(const Globals& g, const std::string& input, const std::string& output, const classifier::Hyperparams& hp,
              std::ostream& err) {
    const auto data = load_jsonl(input);
    const auto labeled = data.labeled();
    ensure_writable(output, g.force);
    classifier::BuiltinModel model(data.class_set(), hp);
    model.fit(labeled, g.seed);
    model.save(output);
    std::size_t right = 0;
    for (const auto& ex : labeled) right += model.predict_one(ex.snippet).argmax() == ex.label;
    err << "trained on " << labeled.size() << " examples, training accuracy " << std::fixed << std::setprecision(4)
        << static_cast<double>(right) / static_cast<double>(labeled.size()) << "\n";
    return kOk;
}

int cmd_predict(const Globals& g, const std::string& model_path, const std::string& input, const std::string& output,
                std::ostream& out, std::ostream& err) {
    auto model = classifier::BuiltinModel::load(model_path);
    const auto data = load_jsonl(input, model.class_set());
    std::vector<CodeSnippet> batch;
    for (const auto& e : data.entries()) batch.push_back(e.snippet);
    const auto dists = model.predict(batch);

    std::ostringstream records;
    records << std::setprecision(6);
    if (g.format == "csv") {
        records << "id,class";
        for (auto c : model.class_set()) records << ",p_" << to_string(c);
        records << '\n';
    }
    std::size_t labelled = 0, right = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto cls = dists[i].argmax();
        if (const auto& gold = data.entries()[i].label) {
            ++labelled;
            right += *gold == cls;
        }
        if (g.format == "csv") {
            records << csv_field(batch[i].id) << ',' << to_string(cls);
            for (double p : dists[i].probs) records << ',' << p;
            records << '\n';
            continue;
        }
        json probs = json::object();
        for (std::size_t c = 0; c < dists[i].probs.size(); ++c) {
            probs[std::string(to_string(model.class_set()[c]))] = dists[i].probs[c];
        }
        records << json{{"id", batch[i].id}, {"class", std::string(to_string(cls))}, {"probs", probs}}.dump() << '\n';
    }
    std::optional<fs::path> out_path;
    if (!output.empty()) out_path = output;
    emit(out_path, records.str(), g.force, out);
    if (labelled) {
        err << "accuracy " << std::fixed << std::setprecision(4)
            << static_cast<double>(right) / static_cast<double>(labelled) << " on " << labelled << " labelled records\n";
    }
    return kOk;
}

// ------------------------------------------------------------------- experiment / corpus / report

int cmd_experiment(const Globals& g, const std::vector<std::string>& configs, std::ostream& out, std::ostream& err) {
    for (const auto& path : configs) {
        auto config = ssl::ExperimentConfig::load(path);
        if (g.seed_given) config.seeds = {g.seed};
        if (g.jobs > 0) config.jobs = g.jobs;
        const auto report = ssl::run_experiment(config);
        for (const auto& f : report.write(g.force)) err << "wrote " << f.string() << "\n";
        out << config.name << "\taccuracy " << format_percent_row(report.accuracy) << "\tmacro-F1 "
            << format_percent_row(report.macro_f1) << "\n";
    }
    return kOk;
}

int cmd_gen_corpus(const Globals& g, std::size_t count, double validation_share, double test_share,
                   const std::string& output, std::ostream& err) {
    const auto classes = ClassSet::all();
    if (count == 0 || count % classes.size() != 0) {
        throw ConfigError("--count must be a positive multiple of " + std::to_string(classes.size()));
    }
    const fs::path dir(output);
    const std::vector<std::string> names = {"all.jsonl", "train.jsonl", "valid.jsonl", "test.jsonl"};
    for (const auto& n : names) ensure_writable(dir / n, g.force);
    const auto all = corpus::generate(count / classes.size(), g.seed, classes);
    const auto parts = corpus::split(all, validation_share, test_share, g.seed);
    save_jsonl(dir / "all.jsonl", all);
    save_jsonl(dir / "train.jsonl", parts.train);
    save_jsonl(dir / "valid.jsonl", parts.validation);
    save_jsonl(dir / "test.jsonl", parts.test);
    err << "wrote " << all.size() << " snippets: " << parts.train.size() << " train, " << parts.validation.size()
        << " validation, " << parts.test.size() << " test in " << dir.string() << "\n";
    return kOk;
}

int cmd_report(const Globals& g, const std::vector<std::string>& paths, std::ostream& out) {
    json rows = json::array();
    for (const auto& arg : paths) {
        fs::path p(arg);
        if (fs::is_directory(p)) p /= "report.json";
        json r;
        try {
            r = json::parse(read_file(p));
        } catch (const json::exception& e) {
            throw DataError(p.string() + ": not a report (" + e.what() + ")");
        }
        try {
            const auto& config = r.at("config");
            const auto& summary = r.at("summary");
            json row = json::object();
            row["name"] = config.at("name");
            row["mode"] = config.at("mode");
            row["use_sym"] = config.at("use_sym");
            row["augmentation"] = config.at("augmentation").at("strategy");
            row["seeds"] = config.at("seeds");
            row["accuracy"] = summary.at("accuracy").at("row");
            row["macro_f1"] = summary.at("macro_f1").at("row");
            row["per_seed_accuracy"] = json::array();
            for (const auto& run : r.at("runs")) row["per_seed_accuracy"].push_back(run.at("test").at("accuracy"));
            rows.push_back(std::move(row));
        } catch (const json::exception& e) {
            throw DataError(p.string() + ": report is missing fields (" + e.what() + ")");
        }
    }
    if (g.format == "csv") {
        out << "name,mode,use_sym,augmentation,accuracy,macro_f1\n";
        for (const auto& r : rows) {
            out << csv_field(r["name"].get<std::string>()) << ',' << r["mode"].get<std::string>() << ','
                << (r["use_sym"].get<bool>() ? "true" : "false") << ',' << r["augmentation"].get<std::string>() << ','
                << r["accuracy"].get<std::string>() << ',' << r["macro_f1"].get<std::string>() << '\n';
        }
    } else {
        out << rows.dump(2) << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-complexity prediction: symbolic analysis, augmentation and semi-supervised training."};
    app.name("tcpl");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for training and corpus generation; overrides config seeds");
    app.add_flag("--force", g.force, "overwrite existing outputs");
    app.add_option("--jobs", g.jobs, "parallel seeds per experiment")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "record format")->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> paths;
    std::string language, gold, output, metrics;
    auto* analyze = app.add_subcommand("analyze", "symbolic complexity of source files, directories or JSONL datasets");
    analyze->add_option("paths", paths, "inputs")->required();
    analyze->add_option("--language", language, "language for files without a known extension")
        ->check(CLI::IsMember({"java", "python"}));
    analyze->add_option("--gold", gold, "labelled JSONL; writes metrics of the symbolic classifier");
    analyze->add_option("-o,--output", output, "records file (default: stdout)");
    analyze->add_option("--metrics", metrics, "metrics file (default: <output>.metrics.json or metrics.json)");

    std::string input, strategy, augmenter, cache;
    auto* aug = app.add_subcommand("augment", "writes a dataset plus its loop-converted and back-translated copies");
    aug->add_option("-i,--input", input, "labelled JSONL")->required();
    aug->add_option("--strategy", strategy, "bt, lc or bt+lc")->required();
    aug->add_option("--augmenter", augmenter, "back-translation command");
    aug->add_option("--cache", cache, "pre-computed back-translations (JSONL of id, code)");
    aug->add_option("-o,--output", output, "augmented JSONL; provenance goes next to it")->required();

    classifier::Hyperparams hp;
    auto* train = app.add_subcommand("train", "fits the built-in classifier on a labelled dataset");
    train->add_option("-i,--input", input, "labelled JSONL")->required();
    train->add_option("-o,--output", output, "model file")->required();
    train->add_option("--learning-rate", hp.learning_rate)->check(CLI::PositiveNumber);
    train->add_option("--epochs-per-fit", hp.epochs_per_fit)->check(CLI::PositiveNumber);
    train->add_option("--l2", hp.l2)->check(CLI::NonNegativeNumber);
    train->add_option("--ngram-max", hp.ngram_max)->check(CLI::Range(1, 3));
    train->add_option("--batch-size", hp.batch_size)->check(CLI::PositiveNumber);

    std::string model;
    auto* predict = app.add_subcommand("predict", "class probabilities from a trained model");
    predict->add_option("-m,--model", model, "model file")->required();
    predict->add_option("-i,--input", input, "JSONL")->required();
    predict->add_option("-o,--output", output, "records file (default: stdout)");

    std::vector<std::string> configs;
    auto* experiment = app.add_subcommand("experiment", "runs experiment configs and writes their reports");
    experiment->add_option("configs", configs, "config files")->required();

    std::size_t count = 700;
    double validation_share = 0.15, test_share = 0.15;
    auto* gen = app.add_subcommand("gen-corpus", "writes the synthetic corpus and its splits");
    gen->add_option("--count", count, "total snippets, a multiple of the class count");
    gen->add_option("--validation-share", validation_share)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--test-share", test_share)->check(CLI::Range(0.0, 1.0));
    gen->add_option("-o,--output", output, "directory")->required();

    auto* report = app.add_subcommand("report", "summary rows of finished runs");
    report->add_option("paths", paths, "run directories or report.json files")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (*analyze) return cmd_analyze(g, paths, language, gold, output, metrics, out, err);
        if (*aug) return cmd_augment(g, input, strategy, augmenter, cache, output, err);
        if (*train) return cmd_train(g, input, output, hp, err);
        if (*predict) return cmd_predict(g, model, input, output, out, err);
        if (*experiment) return cmd_experiment(g, configs, out, err);
        if (*gen) return cmd_gen_corpus(g, count, validation_share, test_share, output, err);
        if (*report) return cmd_report(g, paths, out);
    } catch (const std::exception& e) {
        err << "tcpl: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kUsage;
}

}  // namespace tcpl::cli
