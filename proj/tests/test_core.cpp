#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tcpl/core/complexity_class.hpp"
#include "tcpl/core/dataset.hpp"
#include "tcpl/core/errors.hpp"
#include "tcpl/core/metrics.hpp"

using namespace tcpl;
using CC = ComplexityClass;

namespace {

Dataset synthetic(std::size_t per_class, const ClassSet& classes) {
    std::vector<DatasetEntry> entries;
    for (auto c : classes) {
        for (std::size_t i = 0; i < per_class; ++i) {
            DatasetEntry e;
            e.snippet.id = std::string(to_string(c)) + "-" + std::to_string(i);
            e.snippet.source = "x = " + std::to_string(i);
            e.label = c;
            entries.push_back(e);
        }
    }
    return Dataset(entries, classes);
}

}  // namespace

TEST_CASE("class names round trip") {
    const char* names[] = {"constant", "logn", "linear", "nlogn", "quadratic", "cubic", "exponential"};
    for (std::size_t i = 0; i < kAllClasses.size(); ++i) {
        CHECK(to_string(kAllClasses[i]) == names[i]);
        CHECK(parse_complexity_class(names[i]) == kAllClasses[i]);
    }
    CHECK_FALSE(parse_complexity_class("quadratik").has_value());
}

TEST_CASE("dominates examples") {
    CHECK(dominates(CC::Linear, CC::NLogN) == CC::NLogN);
    CHECK(dominates(CC::Constant, CC::Constant) == CC::Constant);
    CHECK(dominates(CC::Exponential, CC::Cubic) == CC::Exponential);
}

TEST_CASE("dominates is a join semilattice over all pairs") {
    for (auto a : kAllClasses) {
        CHECK(dominates(a, a) == a);
        for (auto b : kAllClasses) {
            CHECK(dominates(a, b) == dominates(b, a));
            const auto j = dominates(a, b);
            CHECK((j == a || j == b));
            CHECK(index_of(j) >= index_of(a));
            CHECK(index_of(j) >= index_of(b));
            for (auto c : kAllClasses) {
                CHECK(dominates(dominates(a, b), c) == dominates(a, dominates(b, c)));
            }
        }
    }
}

TEST_CASE("class set clamp maps to nearest dominated member") {
    ClassSet five({CC::Constant, CC::LogN, CC::Linear, CC::NLogN, CC::Quadratic});
    CHECK(five.clamp(CC::Cubic) == CC::Quadratic);
    CHECK(five.clamp(CC::Exponential) == CC::Quadratic);
    CHECK(five.clamp(CC::NLogN) == CC::NLogN);
    ClassSet upper({CC::Linear, CC::Cubic});
    CHECK(upper.clamp(CC::Constant) == CC::Linear);
    CHECK(upper.clamp(CC::Quadratic) == CC::Linear);
}

TEST_CASE("few-shot split sizes") {
    auto train = synthetic(10, ClassSet::all());
    auto split = few_shot_split(train, 5, 42);
    CHECK(split.labeled.size() == 35);
    CHECK(split.unlabeled.size() == 35);

    auto empty = few_shot_split(train, 0, 42);
    CHECK(empty.labeled.empty());
    CHECK(empty.unlabeled.size() == train.size());
}

TEST_CASE("few-shot split is a deterministic partition") {
    auto train = synthetic(9, ClassSet::all());
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        auto a = few_shot_split(train, 4, seed);
        auto b = few_shot_split(train, 4, seed);
        REQUIRE(a.labeled.size() == b.labeled.size());
        for (std::size_t i = 0; i < a.labeled.size(); ++i) CHECK(a.labeled[i].snippet.id == b.labeled[i].snippet.id);

        std::set<std::string> ids;
        std::map<CC, int> per_class;
        for (const auto& l : a.labeled) {
            ids.insert(l.snippet.id);
            ++per_class[l.label];
        }
        for (const auto& u : a.unlabeled) {
            CHECK(ids.insert(u.snippet.id).second);
            CHECK(u.hidden_label.has_value());
        }
        CHECK(ids.size() == train.size());
        for (auto c : kAllClasses) CHECK(per_class[c] == 4);
    }
    auto x = few_shot_split(train, 4, 1);
    auto y = few_shot_split(train, 4, 2);
    bool differs = false;
    for (std::size_t i = 0; i < x.labeled.size(); ++i) differs |= x.labeled[i].snippet.id != y.labeled[i].snippet.id;
    CHECK(differs);
}

TEST_CASE("few-shot split rejects small classes") {
    std::vector<DatasetEntry> entries;
    for (int i = 0; i < 3; ++i) entries.push_back({{"a" + std::to_string(i), "x", Language::Python}, CC::Linear});
    for (int i = 0; i < 6; ++i) entries.push_back({{"b" + std::to_string(i), "x", Language::Python}, CC::Constant});
    Dataset d(entries, ClassSet({CC::Constant, CC::Linear}));
    try {
        few_shot_split(d, 5, 1);
        FAIL("expected InsufficientClassCount");
    } catch (const InsufficientClassCount& e) {
        CHECK(e.cls() == CC::Linear);
        CHECK(e.have() == 3);
        CHECK(e.need() == 5);
        CHECK(std::string(e.what()).find("InsufficientClassCount") != std::string::npos);
    }
}

TEST_CASE("few-shot split honours eligibility") {
    auto train = synthetic(10, ClassSet({CC::Constant, CC::Linear}));
    auto split = few_shot_split(train, 2, 3, [](const CodeSnippet& s) { return s.id.back() == '1' || s.id.back() == '2'; });
    for (const auto& l : split.labeled) CHECK((l.snippet.id.back() == '1' || l.snippet.id.back() == '2'));
}

TEST_CASE("metrics on a hand-computed confusion matrix") {
    ClassSet two({CC::Constant, CC::Linear});
    std::vector<LabeledExample> gold = {
        {{"1", "x", Language::Python}, CC::Constant},
        {{"2", "x", Language::Python}, CC::Constant},
        {{"3", "x", Language::Python}, CC::Linear},
        {{"4", "x", Language::Python}, CC::Linear},
    };
    std::map<std::string, CC> preds = {{"1", CC::Constant}, {"2", CC::Linear}, {"3", CC::Linear}, {"4", CC::Linear}};
    auto m = compute_metrics(preds, gold, two);
    CHECK(m.accuracy == doctest::Approx(0.75));
    CHECK(m.per_class_f1[CC::Constant] == doctest::Approx(2.0 / 3.0));
    CHECK(m.per_class_f1[CC::Linear] == doctest::Approx(0.8));
    CHECK(m.macro_f1 == doctest::Approx((2.0 / 3.0 + 0.8) / 2.0));
    CHECK(m.confusion[0][0] == 1);
    CHECK(m.confusion[0][1] == 1);
    CHECK(m.confusion[1][1] == 2);
}

TEST_CASE("metrics invariants") {
    auto data = synthetic(3, ClassSet::all());
    auto gold = data.labeled();
    std::map<std::string, CC> all_right;
    std::map<std::string, CC> one_class;
    for (const auto& g : gold) {
        all_right[g.snippet.id] = g.label;
        one_class[g.snippet.id] = CC::Linear;
    }
    auto perfect = compute_metrics(all_right, gold, data.class_set());
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.macro_f1 == 1.0);

    auto flat = compute_metrics(one_class, gold, data.class_set());
    CHECK(flat.accuracy == doctest::Approx(1.0 / 7.0));
    std::size_t trace = 0;
    std::size_t sum = 0;
    for (std::size_t i = 0; i < 7; ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < 7; ++j) {
            row += flat.confusion[i][j];
            sum += flat.confusion[i][j];
        }
        trace += flat.confusion[i][i];
        CHECK(row == 3);
    }
    CHECK(sum == gold.size());
    CHECK(flat.accuracy == doctest::Approx(static_cast<double>(trace) / static_cast<double>(sum)));
    double mean = 0;
    for (auto c : data.class_set()) mean += flat.per_class_f1[c];
    CHECK(flat.macro_f1 == doctest::Approx(mean / 7.0));

    one_class.erase(gold.front().snippet.id);
    CHECK_THROWS_AS(compute_metrics(one_class, gold, data.class_set()), MissingPrediction);
}

TEST_CASE("mean and sample std") {
    auto s = mean_std({0.5, 0.6, 0.7});
    CHECK(s.mean == doctest::Approx(0.6));
    CHECK(s.stddev == doctest::Approx(0.1));
    CHECK(mean_std({0.3, 0.3, 0.3}).stddev == 0.0);
    CHECK(format_percent_row({0.5464, 0.0377}) == "54.64±3.77");
}

TEST_CASE("jsonl round trip and header") {
    auto data = synthetic(2, ClassSet({CC::Constant, CC::Cubic}));
    std::stringstream ss;
    write_jsonl(ss, data);
    auto back = parse_jsonl(ss, "mem");
    CHECK(back.class_set() == data.class_set());
    REQUIRE(back.size() == data.size());
    CHECK(back.entries()[3].snippet.id == data.entries()[3].snippet.id);
    CHECK(back.entries()[3].label == CC::Cubic);
}

TEST_CASE("jsonl errors carry line numbers") {
    std::stringstream bad1(R"({"id":"a","code":"x","language":"python"}
{"id":"b","code":"y","language":"cobol"}
)");
    try {
        parse_jsonl(bad1, "f.jsonl");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("f.jsonl:2:") != std::string::npos);
    }
    std::stringstream dup(R"({"id":"a","code":"x","language":"python"}
{"id":"a","code":"y","language":"python"}
)");
    CHECK_THROWS_AS(parse_jsonl(dup, "d"), DataError);
    std::stringstream outside(R"({"classes":["constant"]}
{"id":"a","code":"x","language":"python","label":"linear"}
)");
    CHECK_THROWS_AS(parse_jsonl(outside, "o"), DataError);
    std::stringstream notjson("{oops\n");
    CHECK_THROWS_AS(parse_jsonl(notjson, "n"), DataError);
    CHECK_THROWS_AS(load_jsonl("/nonexistent/path.jsonl"), IoError);
}
