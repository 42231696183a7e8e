#include "tcpl/core/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "tcpl/core/errors.hpp"

namespace tcpl {

Metrics compute_metrics(const std::map<std::string, ComplexityClass>& predictions,
                        const std::vector<LabeledExample>& gold, const ClassSet& class_set) {
    Metrics m;
    m.class_set = class_set;
    const std::size_t n = class_set.size();
    m.confusion.assign(n, std::vector<std::size_t>(n, 0));

    for (const auto& ex : gold) {
        auto it = predictions.find(ex.snippet.id);
        if (it == predictions.end()) throw MissingPrediction(ex.snippet.id);
        if (!class_set.contains(ex.label)) {
            throw DataError("gold label of '" + ex.snippet.id + "' is outside the class set");
        }
        if (!class_set.contains(it->second)) {
            throw DataError("prediction for '" + ex.snippet.id + "' is outside the class set");
        }
        ++m.confusion[class_set.position(ex.label)][class_set.position(it->second)];
        ++m.total;
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) correct += m.confusion[i][i];
    m.accuracy = m.total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(m.total);

    double f1_sum = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t tp = m.confusion[c][c];
        std::size_t gold_count = 0;
        std::size_t pred_count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            gold_count += m.confusion[c][j];
            pred_count += m.confusion[j][c];
        }
        // F1 = 2tp / (|gold| + |pred|); zero when there is no true positive.
        double f1 = tp == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(gold_count + pred_count);
        m.per_class_f1[class_set[c]] = f1;
        f1_sum += f1;
    }
    m.macro_f1 = n == 0 ? 0.0 : f1_sum / static_cast<double>(n);
    return m;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return s;
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    return s;
}

std::string format_percent_row(const MeanStd& s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f±%.2f", s.mean * 100.0, s.stddev * 100.0);
    return buf;
}

}  // namespace tcpl
