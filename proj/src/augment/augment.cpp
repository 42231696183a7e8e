#include <set>

#include "tcpl/augment/augment.hpp"

namespace tcpl::augment {

std::string_view to_string(AugMethod m) { return m == AugMethod::BT ? "bt" : "lc"; }

std::optional<AugKind> parse_aug_kind(std::string_view s) {
    if (s == "none") return AugKind::None;
    if (s == "bt") return AugKind::BT;
    if (s == "lc") return AugKind::LC;
    if (s == "bt+lc" || s == "bt_plus_lc") return AugKind::BTPlusLC;
    return std::nullopt;
}

std::string_view to_string(AugKind k) {
    switch (k) {
        case AugKind::None: return "none";
        case AugKind::BT: return "bt";
        case AugKind::LC: return "lc";
        case AugKind::BTPlusLC: return "bt+lc";
    }
    return "none";
}

std::optional<Sampling> parse_sampling(std::string_view s) {
    if (s == "natural") return Sampling::Natural;
    if (s == "artificial") return Sampling::Artificial;
    return std::nullopt;
}

std::string_view to_string(Sampling s) { return s == Sampling::Natural ? "natural" : "artificial"; }

AugmentResult augment_dataset(const std::vector<LabeledExample>& labeled, const AugStrategy& strategy,
                              Backtranslator* bt) {
    if (strategy.uses_bt() && bt == nullptr) {
        throw AugmenterUnavailable("back-translation requested but no augmenter is configured");
    }
    std::set<std::string> taken;
    for (const auto& ex : labeled) taken.insert(ex.snippet.id);
    auto claim = [&](AugmentedExample& aug) {
        const std::string base = aug.snippet.id;
        for (int n = 2; taken.contains(aug.snippet.id); ++n) aug.snippet.id = base + "." + std::to_string(n);
        taken.insert(aug.snippet.id);
    };

    AugmentResult result;
    for (const auto& ex : labeled) {
        if (strategy.uses_bt()) {
            try {
                auto snippet = external_backtranslate(ex.snippet, *bt);
                AugmentedExample aug{ex.snippet.id, std::move(snippet), ex.label, AugMethod::BT};
                claim(aug);
                result.examples.push_back(std::move(aug));
            } catch (const InvalidAugmentation&) {
                ++result.bt_rejected;
            } catch (const AugmenterError&) {
                ++result.bt_rejected;
            }
        }
        if (strategy.uses_lc()) {
            if (auto aug = loop_convert(ex)) {
                claim(*aug);
                result.examples.push_back(std::move(*aug));
            } else {
                ++result.lc_skipped;
            }
        }
    }
    return result;
}

}  // namespace tcpl::augment
