#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hrvf/classifiers.hpp"
#include "hrvf/feature_select.hpp"
#include "hrvf/types.hpp"

namespace hrvf {

struct ExperimentConfig {
    // 0: time-domain only (literature baseline shape)
    // 1: time-domain + nonlinear   2: frequency-domain + nonlinear
    // 3: all 18                    4: ranked top-K subset
    int experiment_case = 4;
    int cv_folds = 5;
    std::uint64_t seed = 7;
    NeuralNetOptions nn;
    SvmOptions svm;
    int dt_max_depth = 8;
    int dt_min_leaf = 2;
    int knn_small_k = 1;
    int knn_large_k = 5;
    SelectionOptions selection;  // used by case 4
};

inline constexpr std::array<const char*, 6> kClassifierNames = {
    "knn1", "knn5", "svm", "nn", "nb", "dt"};

struct ClassifierResult {
    std::string name;
    double accuracy_pct = 0.0;
    // confusion[actual][predicted]; rows sum to per-class counts.
    std::vector<std::vector<int>> confusion;
};

struct EvalReport {
    int experiment_case = 0;
    std::vector<int> feature_subset;  // global feature ids
    std::vector<ClassifierResult> results;
    double mean_accuracy_pct = 0.0;
    int rows_used = 0;
    int rows_dropped = 0;  // missing active features or no label
    int cv_folds = 0;
    std::uint64_t seed = 0;
};

/// Feature ids for a case (case 4 requires running rank_features).
std::vector<int> case_feature_ids(int experiment_case);

/// Disjoint, covering folds. cv_folds == n is a plain leave-one-out
/// partition; otherwise each class's rows are shuffled (seeded) and dealt
/// round-robin, so folds are stratified within one row per class. Throws
/// InsufficientClassMembers when a class has fewer rows than folds.
std::vector<std::vector<int>> stratified_folds(std::span<const int> labels, int cv_folds,
                                               std::uint64_t seed);

/// Builds the numeric matrix for a feature subset, dropping rows with an
/// invalid active feature or no label.
DataMatrix to_matrix(const LabeledDataset& dataset, std::span<const int> feature_ids,
                     int* dropped = nullptr);

/// Cross-validated accuracies of the six classifier columns
/// (knn1, knn5, svm, nn, nb, dt) for one experiment case.
EvalReport run_experiment(const LabeledDataset& dataset, const ExperimentConfig& config);

}  // namespace hrvf
