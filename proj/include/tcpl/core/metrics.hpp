#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcpl/core/complexity_class.hpp"
#include "tcpl/core/dataset.hpp"

namespace tcpl {

struct Metrics {
    ClassSet class_set;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::map<ComplexityClass, double> per_class_f1;
    /// confusion[gold][predicted], indexed by position in class_set.
    std::vector<std::vector<std::size_t>> confusion;
    std::size_t total = 0;
};

/// Scores predictions against gold labels. Every gold id needs a prediction
/// (MissingPrediction otherwise). Classes with no true positives score F1 = 0,
/// including classes absent from both gold and predictions.
Metrics compute_metrics(const std::map<std::string, ComplexityClass>& predictions,
                        const std::vector<LabeledExample>& gold, const ClassSet& class_set);

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for fewer than two values
};

MeanStd mean_std(const std::vector<double>& values);

/// Percent with two decimals, e.g. 0.5464, 0.0377 -> "54.64±3.77".
std::string format_percent_row(const MeanStd& s);

}  // namespace tcpl
