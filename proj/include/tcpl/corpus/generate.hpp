#pragma once

#include <cstdint>

#include "tcpl/core/dataset.hpp"

namespace tcpl::corpus {

/// Template-based programs, `per_class` for each class of `classes`, in Python and
/// Java. Identifier names, constants and filler statements vary with `seed`.
/// Ids look like "syn-quadratic-017". Every record carries its label.
Dataset generate(std::size_t per_class, std::uint64_t seed, const ClassSet& classes = ClassSet::all());

/// One instance of every template, labelled with its class.
std::vector<LabeledExample> samples(std::uint64_t seed);

struct Splits {
    Dataset train;
    Dataset validation;
    Dataset test;
};

/// Stratified split; each class contributes round(share * count) to validation and
/// to test, the rest to train. Order inside each part follows the input.
Splits split(const Dataset& data, double validation_share, double test_share, std::uint64_t seed);

}  // namespace tcpl::corpus
