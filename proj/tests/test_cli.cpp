#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tcpl/cli/cli.hpp"

using namespace tcpl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result tcpl_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tcpl_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<json> jsonl(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(json::parse(line));
    }
    return out;
}

const std::string kFixtures = TCPL_FIXTURES;

}  // namespace

TEST_CASE("analyze reports class and trace per snippet") {
    const auto r = tcpl_run({"analyze", kFixtures + "/regression/running_example.py"});
    REQUIRE(r.code == cli::kOk);
    const auto recs = jsonl(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["id"] == "running_example");
    CHECK(recs[0]["class"] == "nlogn");
    CHECK(recs[0]["trace"].back().get<std::string>().find("O(N log N)") != std::string::npos);

    const auto csv = tcpl_run({"analyze", kFixtures + "/regression/count_in_loop.py", "--format", "csv"});
    CHECK(csv.out == "id,class\ncount_in_loop,linear\n");
}

TEST_CASE("analyze with gold scores the oracle corpus") {
    const auto dir = scratch("gold");
    const auto r = tcpl_run({"analyze", kFixtures + "/oracle", "--gold", kFixtures + "/oracle_gold.jsonl", "-o",
                             (dir / "recs.jsonl").string(), "--metrics", (dir / "m.json").string()});
    REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
    CHECK(jsonl(slurp(dir / "recs.jsonl")).size() == 21);
    const auto m = json::parse(slurp(dir / "m.json"));
    CHECK(m["accuracy"] == 1.0);
    CHECK(m["total"] == 21);
    CHECK(m["unanalysable"] == 0);

    // A second run refuses to overwrite unless forced.
    const auto again = tcpl_run({"analyze", kFixtures + "/oracle", "-o", (dir / "recs.jsonl").string()});
    CHECK(again.code == cli::kIo);
    CHECK(again.err.find("--force") != std::string::npos);
    CHECK(tcpl_run({"analyze", kFixtures + "/oracle", "-o", (dir / "recs.jsonl").string(), "--force"}).code == cli::kOk);
}

TEST_CASE("analyze error categories") {
    const auto dir = scratch("analyze_errors");
    CHECK(tcpl_run({"analyze", (dir / "missing.py").string()}).code == cli::kIo);
    std::ofstream(dir / "prog.txt") << "x = 1\n";
    CHECK(tcpl_run({"analyze", (dir / "prog.txt").string()}).code == cli::kData);
    CHECK(tcpl_run({"analyze", (dir / "prog.txt").string(), "--language", "python"}).code == cli::kOk);
    std::ofstream(dir / "bad.jsonl") << "{\"id\": \"a\"}\n";
    CHECK(tcpl_run({"analyze", (dir / "bad.jsonl").string()}).code == cli::kData);

    std::ofstream(dir / "broken.py") << "def f(:\n";
    const auto r = tcpl_run({"analyze", (dir / "broken.py").string()});
    CHECK(r.code == cli::kOk);
    const auto recs = jsonl(r.out);
    CHECK(recs[0]["class"].is_null());
    CHECK(recs[0].contains("error"));
}

TEST_CASE("augment with loop conversion adds one record per convertible snippet") {
    const auto dir = scratch("augment_lc");
    const auto out = dir / "aug.jsonl";
    const auto r = tcpl_run({"augment", "-i", kFixtures + "/oracle_gold.jsonl", "--strategy", "lc", "-o", out.string()});
    REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
    // 16 oracle programs contain loops; logn_1 and constant_3 use forms that do not convert.
    CHECK(jsonl(slurp(out)).size() == 1 + 21 + 14);
    const auto prov = json::parse(slurp(dir / "aug.provenance.json"));
    CHECK(prov["records"].size() == 14);
    for (const auto& rec : prov["records"]) {
        CHECK(rec["method"] == "lc");
        CHECK(rec["id"].get<std::string>() == rec["original"].get<std::string>() + "#lc");
    }
}

TEST_CASE("augment with back-translation") {
    const auto dir = scratch("augment_bt");
    const auto out = dir / "aug.jsonl";
    const auto input = kFixtures + "/oracle_gold.jsonl";
    const auto mock = std::string(TCPL_MOCK_AUGMENTER) + " --mode rename";
    const auto r = tcpl_run({"augment", "-i", input, "--strategy", "bt", "--augmenter", mock, "-o", out.string()});
    REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
    CHECK(jsonl(slurp(out)).size() == 1 + 42);
    const auto prov = json::parse(slurp(dir / "aug.provenance.json"));
    for (const auto& rec : prov["records"]) CHECK(rec["method"] == "bt");

    const auto none = tcpl_run({"augment", "-i", input, "--strategy", "bt", "-o", (dir / "x.jsonl").string()});
    CHECK(none.code == cli::kNoAugmenter);
    const auto dead = tcpl_run({"augment", "-i", input, "--strategy", "bt+lc", "--augmenter", "/nonexistent/augmenter", "-o",
                                (dir / "y.jsonl").string()});
    CHECK(dead.code == cli::kNoAugmenter);
    CHECK(tcpl_run({"augment", "-i", input, "--strategy", "none", "-o", (dir / "z.jsonl").string()}).code == cli::kConfig);
}

TEST_CASE("gen-corpus, train and predict") {
    const auto dir = scratch("train");
    REQUIRE(tcpl_run({"gen-corpus", "--count", "140", "--seed", "4", "-o", (dir / "c").string()}).code == cli::kOk);
    for (const auto* f : {"all.jsonl", "train.jsonl", "valid.jsonl", "test.jsonl"}) CHECK(fs::exists(dir / "c" / f));
    const auto generated = slurp(dir / "c" / "all.jsonl");
    REQUIRE(tcpl_run({"gen-corpus", "--count", "140", "--seed", "4", "-o", (dir / "c").string(), "--force"}).code == cli::kOk);
    CHECK(slurp(dir / "c" / "all.jsonl") == generated);
    CHECK(tcpl_run({"gen-corpus", "--count", "100", "-o", (dir / "d").string()}).code == cli::kConfig);

    const auto model = (dir / "model.json").string();
    const auto t = tcpl_run({"train", "-i", (dir / "c" / "train.jsonl").string(), "-o", model, "--seed", "3"});
    REQUIRE_MESSAGE(t.code == cli::kOk, t.err);
    const auto p = tcpl_run({"predict", "-m", model, "-i", (dir / "c" / "test.jsonl").string()});
    REQUIRE(p.code == cli::kOk);
    const auto recs = jsonl(p.out);
    CHECK(recs.size() == 21);
    for (const auto& rec : recs) {
        double sum = 0;
        for (const auto& [k, v] : rec["probs"].items()) sum += v.get<double>();
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(p.err.find("accuracy") != std::string::npos);
    const auto csv = tcpl_run({"predict", "-m", model, "-i", (dir / "c" / "test.jsonl").string(), "--format", "csv"});
    CHECK(csv.out.rfind("id,class,p_constant,", 0) == 0);
    CHECK(tcpl_run({"predict", "-m", (dir / "none.json").string(), "-i", (dir / "c" / "test.jsonl").string()}).code ==
          cli::kIo);
}

TEST_CASE("experiment writes reports and prints the summary row") {
    const auto dir = scratch("experiment");
    REQUIRE(tcpl_run({"gen-corpus", "--count", "140", "--seed", "2", "-o", dir.string()}).code == cli::kOk);
    json cfg = {{"name", "full"},
                {"train", "train.jsonl"},
                {"validation", "valid.jsonl"},
                {"test", "test.jsonl"},
                {"mode", "co-train"},
                {"k_shot", 2},
                {"epochs", 2},
                {"seeds", {1, 2}},
                {"augmentation", {{"strategy", "bt+lc"}, {"augmenter", std::string(TCPL_MOCK_AUGMENTER) + " --mode rename"}}},
                {"classifier", {{"epochs_per_fit", 10}}},
                {"output", "out"}};
    std::ofstream(dir / "full.json") << cfg.dump(2);
    const auto r = tcpl_run({"experiment", (dir / "full.json").string(), "--jobs", "2"});
    REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
    CHECK(std::regex_search(r.out, std::regex(R"(full\taccuracy \d+\.\d\d±\d+\.\d\d\tmacro-F1 \d+\.\d\d±\d+\.\d\d)")));
    for (const auto* f : {"report.json", "epochs.csv", "confusion.csv"}) CHECK(fs::exists(dir / "out" / f));
    const auto first = slurp(dir / "out" / "report.json");

    CHECK(tcpl_run({"experiment", (dir / "full.json").string()}).code == cli::kIo);
    REQUIRE(tcpl_run({"experiment", (dir / "full.json").string(), "--force"}).code == cli::kOk);
    CHECK(slurp(dir / "out" / "report.json") == first);

    const auto rep = tcpl_run({"report", (dir / "out").string(), "--format", "csv"});
    CHECK(rep.code == cli::kOk);
    CHECK(rep.out.find("full,co-train,true,bt+lc,") != std::string::npos);
    const auto rj = json::parse(tcpl_run({"report", (dir / "out" / "report.json").string()}).out);
    CHECK(rj[0]["per_seed_accuracy"].size() == 2);
    CHECK(tcpl_run({"report", (dir / "full.json").string()}).code == cli::kData);

    cfg["k_shot"] = 5;
    cfg["validation"] = nullptr;
    cfg.erase("validation");
    cfg["train"] = "valid.jsonl";  // three examples per class
    std::ofstream(dir / "small.json") << cfg.dump(2);
    const auto small = tcpl_run({"experiment", (dir / "small.json").string(), "--force"});
    CHECK(small.code == cli::kConfig);
    CHECK(small.err.find("InsufficientClassCount") != std::string::npos);

    std::ofstream(dir / "bad.json") << R"({"train": "train.jsonl", "test": "test.jsonl", "theta": 2})";
    CHECK(tcpl_run({"experiment", (dir / "bad.json").string()}).code == cli::kConfig);
}

TEST_CASE("usage errors and help") {
    CHECK(tcpl_run({}).code == cli::kUsage);
    CHECK(tcpl_run({"frobnicate"}).code == cli::kUsage);
    CHECK(tcpl_run({"analyze"}).code == cli::kUsage);
    CHECK(tcpl_run({"analyze", "x.py", "--format", "xml"}).code == cli::kUsage);
    const auto help = tcpl_run({"--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("gen-corpus") != std::string::npos);
}
