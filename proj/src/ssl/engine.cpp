#include <set>

#include "tcpl/ssl/ssl.hpp"
#include "tcpl/symbolic/analyzer.hpp"
#include "tcpl/util/random.hpp"

namespace tcpl::ssl {

std::string_view to_string(PseudoSource s) { return s == PseudoSource::Model ? "model" : "symbolic"; }

std::string_view to_string(Mode m) { return m == Mode::SelfTrain ? "self-train" : "co-train"; }

std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "self-train") return Mode::SelfTrain;
    if (s == "co-train") return Mode::CoTrain;
    return std::nullopt;
}

SymbolicFn symbolic_labeler(const ClassSet& classes) {
    auto memo = std::make_shared<std::map<std::string, std::pair<std::string, std::optional<ComplexityClass>>>>();
    return [classes, memo](const CodeSnippet& s) -> std::optional<ComplexityClass> {
        if (auto it = memo->find(s.id); it != memo->end() && it->second.first == s.source) return it->second.second;
        std::optional<ComplexityClass> cls;
        try {
            cls = classes.clamp(symbolic::analyze(s).cls);
        } catch (const Error&) {
        }
        (*memo)[s.id] = {s.source, cls};
        return cls;
    };
}

std::vector<PseudoLabel> pseudo_label(classifier::Classifier& model, const SymbolicFn& sym,
                                      const std::vector<UnlabeledExample>& unlabeled, double theta, int epoch) {
    std::vector<CodeSnippet> batch;
    batch.reserve(unlabeled.size());
    for (const auto& u : unlabeled) batch.push_back(u.snippet);
    const auto dists = model.predict(batch);

    std::vector<PseudoLabel> out;
    for (std::size_t i = 0; i < unlabeled.size(); ++i) {
        const auto& d = dists[i];
        const double top = d.max_prob();
        if (top >= theta) {
            out.push_back({batch[i].id, d.argmax(), PseudoSource::Model, top, epoch});
        } else if (sym) {
            if (auto c = sym(batch[i])) out.push_back({batch[i].id, *c, PseudoSource::Symbolic, std::nullopt, epoch});
        }
    }
    return out;
}

// ------------------------------------------------------------------- pool

void LabeledPool::add_original(const LabeledExample& ex) {
    if (auto it = index_.find(ex.snippet.id); it != index_.end()) {
        if (original_[it->second]) throw DataError("duplicate labeled id '" + ex.snippet.id + "'");
        examples_[it->second] = ex;
        original_[it->second] = true;
        return;
    }
    index_.emplace(ex.snippet.id, examples_.size());
    examples_.push_back(ex);
    original_.push_back(true);
}

std::size_t LabeledPool::merge(const std::vector<PseudoLabel>& labels,
                               const std::map<std::string, const CodeSnippet*>& snippets) {
    std::size_t changed = 0;
    for (const auto& pl : labels) {
        if (auto it = index_.find(pl.id); it != index_.end()) {
            if (original_[it->second] || examples_[it->second].label == pl.label) continue;
            examples_[it->second].label = pl.label;
            ++changed;
            continue;
        }
        const auto s = snippets.find(pl.id);
        if (s == snippets.end()) throw Error("pseudo-label for unknown id '" + pl.id + "'");
        index_.emplace(pl.id, examples_.size());
        examples_.push_back({*s->second, pl.label});
        original_.push_back(false);
        ++changed;
    }
    return changed;
}

void LabeledPool::merge_originals(const LabeledPool& other) {
    for (std::size_t i = 0; i < other.examples_.size(); ++i) {
        if (!other.original_[i] || is_original(other.examples_[i].snippet.id)) continue;
        add_original(other.examples_[i]);
    }
}

bool LabeledPool::is_original(const std::string& id) const {
    const auto it = index_.find(id);
    return it != index_.end() && original_[it->second];
}

std::optional<ComplexityClass> LabeledPool::label_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return examples_[it->second].label;
}

// ------------------------------------------------------------------- epochs

namespace {

std::map<std::string, const CodeSnippet*> snippet_index(const std::vector<UnlabeledExample>& u) {
    std::map<std::string, const CodeSnippet*> out;
    for (const auto& x : u) out.emplace(x.snippet.id, &x.snippet);
    return out;
}

void tally(EpochStats& stats, const std::vector<PseudoLabel>& labels) {
    for (const auto& pl : labels) {
        if (pl.source == PseudoSource::Model) ++stats.model_labels;
        else ++stats.symbolic_labels;
    }
}

std::uint64_t fit_seed(const SSLState& s, std::string_view which) {
    return derive_seed(s.seed, std::string(which) + "/epoch-" + std::to_string(s.epoch));
}

}  // namespace

EpochStats self_train_epoch(SSLState& state, const SymbolicFn& sym) {
    if (!state.model) throw ConfigError("self-training needs a model");
    ++state.epoch;
    state.labeled.merge_originals(state.augmented);
    state.model->fit(state.labeled.examples(), fit_seed(state, "B"));
    const auto labels = pseudo_label(*state.model, sym, state.unlabeled, state.theta, state.epoch);
    state.labeled.merge(labels, snippet_index(state.unlabeled));
    state.log.insert(state.log.end(), labels.begin(), labels.end());

    EpochStats stats;
    stats.epoch = state.epoch;
    tally(stats, labels);
    stats.covered = labels.size();
    stats.labeled_size = state.labeled.size();
    stats.augmented_size = state.augmented.size();
    return stats;
}

EpochStats co_train_epoch(SSLState& state, const SymbolicFn& sym) {
    if (!state.model || !state.aug_model) throw ConfigError("co-training needs two models, B and B_aug");
    if (state.augmented.size() == 0) throw ConfigError("co-training needs augmented data for B_aug");
    ++state.epoch;
    state.model->fit(state.labeled.examples(), fit_seed(state, "B"));
    state.aug_model->fit(state.augmented.examples(), fit_seed(state, "B_aug"));
    const auto from_b = pseudo_label(*state.model, sym, state.unlabeled, state.theta, state.epoch);
    const auto from_aug = pseudo_label(*state.aug_model, sym, state.unlabeled, state.theta, state.epoch);
    const auto index = snippet_index(state.unlabeled);
    state.labeled.merge(from_aug, index);
    state.augmented.merge(from_b, index);
    state.log.insert(state.log.end(), from_b.begin(), from_b.end());
    state.log.insert(state.log.end(), from_aug.begin(), from_aug.end());

    EpochStats stats;
    stats.epoch = state.epoch;
    tally(stats, from_b);
    tally(stats, from_aug);
    std::set<std::string> covered;
    for (const auto& pl : from_b) covered.insert(pl.id);
    for (const auto& pl : from_aug) covered.insert(pl.id);
    stats.covered = covered.size();
    stats.labeled_size = state.labeled.size();
    stats.augmented_size = state.augmented.size();
    return stats;
}

std::map<std::string, ComplexityClass> predict_classes(SSLState& state, const std::vector<LabeledExample>& data) {
    std::vector<CodeSnippet> batch;
    batch.reserve(data.size());
    for (const auto& ex : data) batch.push_back(ex.snippet);
    auto dists = state.model->predict(batch);
    if (state.mode == Mode::CoTrain && state.aug_model) {
        const auto other = state.aug_model->predict(batch);
        for (std::size_t i = 0; i < dists.size(); ++i) {
            for (std::size_t c = 0; c < dists[i].probs.size(); ++c) {
                dists[i].probs[c] = 0.5 * (dists[i].probs[c] + other[i].probs[c]);
            }
        }
    }
    std::map<std::string, ComplexityClass> out;
    for (std::size_t i = 0; i < batch.size(); ++i) out.emplace(batch[i].id, dists[i].argmax());
    return out;
}

}  // namespace tcpl::ssl
