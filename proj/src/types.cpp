#include "hrvf/types.hpp"

#include <numeric>

namespace hrvf {

double RRSeries::span_seconds() const {
    return std::accumulate(rr_ms.begin(), rr_ms.end(), 0.0) / 1000.0;
}

namespace {

constexpr std::array<std::string_view, kStateCount> kStateNames = {
    "pre_exercise", "vigorous_during", "moderate_during", "vigorous_post", "moderate_post"};

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "mean_hr", "mean_rr", "sd_hr",  "sdnn",       "rmssd",      "nn50", "pnn50",
    "tp",      "hf",      "lf",     "vlf",        "nhf",        "nlf",  "lf_hf",
    "dfa_alpha1", "dfa_alpha2", "apen", "sampen"};

}  // namespace

std::string_view state_name(ExerciseState s) {
    return kStateNames[static_cast<int>(s)];
}

std::optional<ExerciseState> state_from_code(int code) {
    if (code < 0 || code >= kStateCount) return std::nullopt;
    return static_cast<ExerciseState>(code);
}

std::optional<ExerciseState> state_from_name(std::string_view name) {
    for (int i = 0; i < kStateCount; ++i) {
        if (kStateNames[i] == name) return static_cast<ExerciseState>(i);
    }
    return std::nullopt;
}

std::string_view feature_name(FeatureId id) {
    return kFeatureNames[static_cast<int>(id)];
}

std::string_view feature_name(int id) {
    return kFeatureNames[id];
}

std::optional<FeatureId> feature_from_name(std::string_view name) {
    for (int i = 0; i < kFeatureCount; ++i) {
        if (kFeatureNames[i] == name) return static_cast<FeatureId>(i);
    }
    return std::nullopt;
}

std::vector<int> time_domain_feature_ids() {
    return {0, 1, 2, 3, 4, 5, 6};
}

std::vector<int> frequency_domain_feature_ids() {
    return {7, 8, 9, 10, 11, 12, 13};
}

std::vector<int> nonlinear_feature_ids() {
    return {14, 15, 16, 17};
}

std::array<int, kStateCount> LabeledDataset::class_histogram() const {
    std::array<int, kStateCount> hist{};
    for (const auto& row : rows) {
        if (row.label) ++hist[static_cast<int>(*row.label)];
    }
    return hist;
}

}  // namespace hrvf
