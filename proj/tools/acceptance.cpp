// Acceptance run: one PASS / FAIL / SKIP line per criterion. Exit status 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpl/augment/augment.hpp"
#include "tcpl/classifier/classifier.hpp"
#include "tcpl/corpus/generate.hpp"
#include "tcpl/ssl/ssl.hpp"
#include "tcpl/symbolic/analyzer.hpp"
#include "tcpl/util/random.hpp"

using namespace tcpl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(const std::string& status, const std::string& name, const std::string& detail) {
    if (status == "FAIL") ++failures;
    std::cout << status << "  " << name << ": " << detail << std::endl;
}

void check(bool ok, const std::string& name, const std::string& detail) { verdict(ok ? "PASS" : "FAIL", name, detail); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

CodeSnippet read_snippet(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return {p.stem().string(), ss.str(), *language_from_extension(p)};
}

std::vector<CodeSnippet> fixture_snippets(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto* sub : {"oracle", "regression"}) {
        for (const auto& e : fs::directory_iterator(root / sub)) {
            if (language_from_extension(e.path())) files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<CodeSnippet> out;
    for (const auto& f : files) out.push_back(read_snippet(f));
    return out;
}

void running_example(const fs::path& fixtures) {
    const auto t0 = Clock::now();
    const auto a = symbolic::analyze(read_snippet(fixtures / "regression" / "running_example.py"));
    const double dt = seconds_since(t0);
    bool loop = false, sort = false;
    for (const auto& t : a.trace) {
        loop |= t.find("repeats O(N) times") != std::string::npos;
        sort |= t.find("-> O(N log N)") != std::string::npos;
    }
    const bool reduction = !a.trace.empty() && a.trace.back() == "total: O(N) + O(N) + O(N log N) = O(N log N)";
    check(a.cls == ComplexityClass::NLogN && loop && sort && reduction && dt < 1.0, "running example",
          "class " + std::string(to_string(a.cls)) + ", loop term " + (loop ? "yes" : "no") + ", sort term " +
              (sort ? "yes" : "no") + ", final reduction " + (reduction ? "yes" : "no") + ", " + fixed(dt * 1000, 1) + " ms");
}

void oracle_corpus(const fs::path& fixtures) {
    int right = 0, total = 0;
    std::string misses;
    for (const auto& e : fs::directory_iterator(fixtures / "oracle")) {
        if (!language_from_extension(e.path())) continue;
        const auto s = read_snippet(e.path());
        const auto gold = parse_complexity_class(s.id.substr(0, s.id.rfind('_')));
        ++total;
        const auto got = symbolic::analyze(s).cls;
        if (gold && got == *gold) ++right;
        else misses += " " + s.id;
    }
    check(right == 21 && total == 21, "oracle corpus", std::to_string(right) + "/" + std::to_string(total) + misses);
}

void known_failure(const fs::path& fixtures) {
    const auto a = symbolic::analyze(read_snippet(fixtures / "regression" / "count_in_loop.py"));
    check(a.cls == ComplexityClass::Linear, "count-in-loop regression",
          "classified " + std::string(to_string(a.cls)) + " (pinned: linear, true cost quadratic)");
}

void lc_invariance(const fs::path& fixtures, const std::string& sample_path) {
    auto measure = [](const std::vector<CodeSnippet>& snippets, std::size_t& convertible, std::size_t& kept) {
        convertible = kept = 0;
        for (const auto& s : snippets) {
            std::optional<augment::AugmentedExample> lc;
            ComplexityClass before;
            try {
                before = symbolic::analyze(s).cls;
                lc = augment::loop_convert({s, before});
            } catch (const Error&) {
                continue;
            }
            if (!lc) continue;
            ++convertible;
            try {
                kept += symbolic::analyze(lc->snippet).cls == before;
            } catch (const Error&) {
            }
        }
    };
    std::size_t conv = 0, kept = 0;
    measure(fixture_snippets(fixtures), conv, kept);
    check(conv > 0 && kept == conv, "LC invariance on fixtures", std::to_string(kept) + "/" + std::to_string(conv) + " convertible fixtures keep their class");

    std::vector<CodeSnippet> sample;
    std::string origin;
    if (!sample_path.empty()) {
        const auto data = load_jsonl(sample_path);
        for (const auto& e : data.entries()) sample.push_back(e.snippet);
        origin = sample_path;
    } else {
        const auto data = corpus::generate(100, 17);
        for (const auto& e : data.entries()) sample.push_back(e.snippet);
        origin = "synthetic corpus (no user sample given)";
    }
    measure(sample, conv, kept);
    const double rate = conv ? double(kept) / double(conv) : 0.0;
    check(conv > 0 && rate >= 0.95, "LC invariance on corpus sample",
          fixed(rate) + " of " + std::to_string(conv) + " convertible snippets keep their class, " + origin);
}

void codecomplex_sample(const std::string& path) {
    if (path.empty()) {
        verdict("SKIP", "symbolic-only accuracy on CodeComplex-Java", "no dataset (set TCPL_CODECOMPLEX_JAVA or --codecomplex)");
        return;
    }
    const auto data = load_jsonl(path);
    std::vector<LabeledExample> java;
    for (const auto& ex : data.labeled()) {
        if (ex.snippet.language == Language::Java) java.push_back(ex);
    }
    Rng rng(derive_seed(1, "codecomplex-sample"));
    rng.shuffle(std::span<LabeledExample>(java));
    if (java.size() > 200) java.resize(200);
    std::size_t right = 0;
    for (const auto& ex : java) {
        try {
            right += data.class_set().clamp(symbolic::analyze(ex.snippet).cls) == ex.label;
        } catch (const Error&) {
        }
    }
    const double acc = java.empty() ? 0.0 : double(right) / double(java.size());
    check(java.size() == 200 && acc >= 0.40 && acc <= 0.60, "symbolic-only accuracy on CodeComplex-Java",
          fixed(acc) + " on " + std::to_string(java.size()) + " sampled snippets (target [0.40, 0.60])");
}

struct Arm {
    std::string name;
    ssl::Mode mode;
    bool sym;
    augment::AugKind aug;
    ssl::RunReport report;
};

std::string row(const MeanStd& m) { return format_percent_row(m); }

// b is not below a by more than one standard deviation.
bool within_one_std(const MeanStd& b, const MeanStd& a) { return b.mean + std::max(b.stddev, a.stddev) >= a.mean; }

void ssl_dynamics(const std::string& augmenter, Clock::time_point suite_start) {
    const auto dir = fs::temp_directory_path() / "tcpl_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto splits = corpus::split(corpus::generate(100, 1), 0.15, 0.15, 1);
    save_jsonl(dir / "train.jsonl", splits.train);
    save_jsonl(dir / "valid.jsonl", splits.validation);
    save_jsonl(dir / "test.jsonl", splits.test);

    using K = augment::AugKind;
    std::vector<Arm> arms = {
        {"ST", ssl::Mode::SelfTrain, false, K::None, {}},
        {"+AUG", ssl::Mode::SelfTrain, false, K::BTPlusLC, {}},
        {"+Sym", ssl::Mode::SelfTrain, true, K::None, {}},
        {"+Sym+AUG", ssl::Mode::SelfTrain, true, K::BTPlusLC, {}},
        {"full (co-train+Sym+AUG)", ssl::Mode::CoTrain, true, K::BTPlusLC, {}},
    };
    auto config_for = [&](const Arm& a) {
        ssl::ExperimentConfig c;
        c.name = a.name;
        c.train = dir / "train.jsonl";
        c.validation = dir / "valid.jsonl";
        c.test = dir / "test.jsonl";
        c.mode = a.mode;
        c.k_shot = 5;
        c.theta = 0.7;
        c.epochs = 20;
        c.seeds = {1, 2, 3};
        c.use_sym = a.sym;
        c.augmentation = {a.aug, augment::Sampling::Natural};
        c.augmenter = augmenter;
        c.output = dir / "runs";
        return c;
    };
    for (auto& a : arms) {
        const auto t0 = Clock::now();
        a.report = ssl::run_experiment(config_for(a));
        std::cout << "      " << std::left << std::setw(24) << a.name << " accuracy " << row(a.report.accuracy) << "  macro-F1 "
                  << row(a.report.macro_f1) << "  (" << fixed(seconds_since(t0), 1) << " s)" << std::endl;
    }
    const auto& st = arms[0].report.accuracy;
    const auto& full = arms[4].report.accuracy;
    check(full.mean >= st.mean, "SSL (a) full config vs self-training baseline",
          "full " + row(full) + " >= ST " + row(st));

    std::string cov;
    bool covered = true;
    for (const auto& a : arms) {
        if (!a.sym) continue;
        for (const auto& run : a.report.runs) {
            covered &= run.epochs.at(0).coverage == 1.0;
            cov += " " + fixed(run.epochs[0].coverage, 3);
        }
    }
    check(covered, "SSL (b) symbolic fallback covers parse-clean U by epoch 1", "epoch-1 coverage per run:" + cov);

    const auto& aug = arms[1].report.accuracy;
    const auto& sym = arms[2].report.accuracy;
    const auto& both = arms[3].report.accuracy;
    const bool order = within_one_std(aug, st) && within_one_std(sym, st) && within_one_std(both, aug) &&
                       within_one_std(both, sym) && within_one_std(full, both);
    bool dominance = true;
    for (const auto& a : arms) dominance &= within_one_std(a.report.accuracy, st);
    check(order && dominance, "SSL ablation ordering within 1 std",
          "ST " + row(st) + " <= +AUG " + row(aug) + " / +Sym " + row(sym) + " <= +Sym+AUG " + row(both) + " <= full " + row(full));

    const auto again = ssl::run_experiment(config_for(arms[4]));
    check(again.to_json() == arms[4].report.to_json(), "determinism",
          "two runs of the full config with seeds {1,2,3} give byte-identical report JSON");

    const double elapsed = seconds_since(suite_start);
    check(elapsed < 600.0, "SSL (c) runtime", "acceptance run so far " + fixed(elapsed, 1) + " s (limit 600 s)");
}

class FixedModel : public classifier::Classifier {
public:
    explicit FixedModel(classifier::ClassDistribution d) : d_(std::move(d)) {}
    const ClassSet& class_set() const override { return d_.classes; }
    void fit(const std::vector<LabeledExample>&, std::uint64_t) override {}
    std::vector<classifier::ClassDistribution> predict(const std::vector<CodeSnippet>& batch) override {
        return std::vector<classifier::ClassDistribution>(batch.size(), d_);
    }

private:
    classifier::ClassDistribution d_;
};

void threshold_boundary() {
    const auto classes = ClassSet::all();
    classifier::ClassDistribution d{classes, std::vector<double>(classes.size(), 0.05)};
    d.probs[classes.position(ComplexityClass::Quadratic)] = 0.70;
    FixedModel model(d);
    bool sym_called = false;
    const ssl::SymbolicFn sym = [&](const CodeSnippet&) -> std::optional<ComplexityClass> {
        sym_called = true;
        return ComplexityClass::Constant;
    };
    const auto labels = ssl::pseudo_label(model, sym, {{{"u", "x = 1\n", Language::Python}, std::nullopt}}, 0.7, 1);
    const bool ok = labels.size() == 1 && labels[0].source == ssl::PseudoSource::Model &&
                    labels[0].label == ComplexityClass::Quadratic && !sym_called;
    check(ok, "threshold boundary", "max prob 0.70 at theta 0.7 gives a " +
                                        std::string(labels.empty() ? "missing" : ssl::to_string(labels[0].source)) + " label");
}

void gradient_check(const fs::path& fixtures) {
    const auto data = load_jsonl(fixtures / "classifier" / "gradient_five.jsonl").labeled();
    classifier::Hyperparams hp;
    hp.l2 = 1e-2;
    classifier::BuiltinModel m(ClassSet::all(), hp);
    m.extend_vocabulary(data);
    Rng rng(2024);
    auto params = m.parameters();
    for (auto& p : params) p = (rng.uniform() - 0.5) * 0.4;
    m.set_parameters(params);
    const auto analytic = m.gradient(data);
    double diff = 0, na = 0, nn = 0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto plus = params, minus = params;
        plus[i] += h;
        minus[i] -= h;
        m.set_parameters(plus);
        const double lp = m.loss(data);
        m.set_parameters(minus);
        const double numeric = (lp - m.loss(data)) / (2 * h);
        diff += (analytic[i] - numeric) * (analytic[i] - numeric);
        na += analytic[i] * analytic[i];
        nn += numeric * numeric;
    }
    const double rel = std::sqrt(diff) / std::max(std::sqrt(na), std::sqrt(nn));
    check(data.size() == 5 && rel < 1e-4, "gradient check",
          "relative error " + [&] { std::ostringstream s; s << std::scientific << std::setprecision(2) << rel; return s.str(); }() +
              " over " + std::to_string(params.size()) + " parameters on 5 examples");
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one verdict per line."};
    std::string fixtures = TCPL_FIXTURES;
    std::string augmenter = std::string(TCPL_MOCK_AUGMENTER) + " --mode rename";
    std::string codecomplex = env_or("TCPL_CODECOMPLEX_JAVA", "");
    std::string lc_sample = env_or("TCPL_LC_SAMPLE", "");
    app.add_option("--fixtures", fixtures, "fixture directory");
    app.add_option("--augmenter", augmenter, "back-translation command used by the SSL runs");
    app.add_option("--codecomplex", codecomplex, "CodeComplex JSONL for the symbolic-only check");
    app.add_option("--lc-sample", lc_sample, "JSONL sample for the LC invariance rate");
    CLI11_PARSE(app, argc, argv);

    const auto start = Clock::now();
    const fs::path root(fixtures);
    try {
        running_example(root);
        oracle_corpus(root);
        known_failure(root);
        lc_invariance(root, lc_sample);
        codecomplex_sample(codecomplex);
        threshold_boundary();
        gradient_check(root);
        ssl_dynamics(augmenter, start);
    } catch (const std::exception& e) {
        verdict("FAIL", "acceptance run", e.what());
    }
    std::cout << (failures ? "FAILED " : "OK ") << failures << " failing criteria, " << fixed(seconds_since(start), 1)
              << " s" << std::endl;
    return failures ? 1 : 0;
}
