#include "hrvf/experiment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "hrvf/rng.hpp"

namespace hrvf {

std::vector<int> case_feature_ids(int experiment_case) {
    auto concat = [](std::vector<int> a, const std::vector<int>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    switch (experiment_case) {
        case 0:
            return time_domain_feature_ids();
        case 1:
            return concat(time_domain_feature_ids(), nonlinear_feature_ids());
        case 2:
            return concat(frequency_domain_feature_ids(), nonlinear_feature_ids());
        case 3: {
            std::vector<int> all(kFeatureCount);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        default:
            throw UsageError("unknown experiment case " + std::to_string(experiment_case) +
                             " (expected 0..4)");
    }
}

DataMatrix to_matrix(const LabeledDataset& dataset, std::span<const int> feature_ids,
                     int* dropped) {
    DataMatrix m;
    int skipped = 0;
    for (const auto& row : dataset.rows) {
        if (!row.label) {
            ++skipped;
            continue;
        }
        bool complete = true;
        std::vector<double> values;
        values.reserve(feature_ids.size());
        for (int f : feature_ids) {
            if (!row.features.valid[f]) {
                complete = false;
                break;
            }
            values.push_back(row.features.value[f]);
        }
        if (!complete) {
            ++skipped;
            continue;
        }
        m.rows.push_back(std::move(values));
        m.labels.push_back(static_cast<int>(*row.label));
    }
    if (dropped) *dropped = skipped;
    return m;
}

std::vector<std::vector<int>> stratified_folds(std::span<const int> labels, int cv_folds,
                                               std::uint64_t seed) {
    const int n = static_cast<int>(labels.size());
    if (cv_folds < 2) throw Error("cross-validation needs at least 2 folds");
    if (cv_folds > n) throw InsufficientClassMembers("more folds than rows");

    std::vector<std::vector<int>> folds(cv_folds);
    if (cv_folds == n) {
        // leave-one-out: stratification is vacuous
        for (int i = 0; i < n; ++i) folds[i].push_back(i);
        return folds;
    }

    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
    for (const auto& [cls, rows] : by_class) {
        if (static_cast<int>(rows.size()) < cv_folds) {
            throw InsufficientClassMembers("class " + std::to_string(cls) + " has " +
                                           std::to_string(rows.size()) + " rows for " +
                                           std::to_string(cv_folds) + " folds");
        }
    }

    Rng rng(seed);
    for (auto& [cls, rows] : by_class) {
        rng.shuffle(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            folds[i % cv_folds].push_back(rows[i]);
        }
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

namespace {

DataMatrix take_rows(const DataMatrix& data, const std::vector<int>& idx) {
    DataMatrix out;
    out.n_classes = data.n_classes;
    out.rows.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (int i : idx) {
        out.rows.push_back(data.rows[i]);
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

}  // namespace

EvalReport run_experiment(const LabeledDataset& dataset, const ExperimentConfig& config) {
    EvalReport report;
    report.experiment_case = config.experiment_case;
    report.cv_folds = config.cv_folds;
    report.seed = config.seed;

    if (config.experiment_case == 4) {
        SelectionOptions sel = config.selection;
        const SelectionReport selection = rank_features(dataset, sel);
        report.feature_subset = selection.selected_feature_ids();
    } else {
        report.feature_subset = case_feature_ids(config.experiment_case);
    }

    const DataMatrix data = to_matrix(dataset, report.feature_subset, &report.rows_dropped);
    report.rows_used = static_cast<int>(data.size());
    if (data.size() < 2) throw EmptyTrainingSet("not enough complete labeled rows");

    const auto folds = stratified_folds(data.labels, config.cv_folds, config.seed);

    const int kinds = static_cast<int>(kClassifierNames.size());
    std::vector<std::vector<std::vector<int>>> confusion(
        kinds, std::vector<std::vector<int>>(data.n_classes, std::vector<int>(data.n_classes, 0)));
    std::vector<int> correct(kinds, 0);

    std::vector<char> in_test(data.size(), 0);
    for (const auto& test_idx : folds) {
        std::fill(in_test.begin(), in_test.end(), 0);
        for (int i : test_idx) in_test[i] = 1;
        std::vector<int> train_idx;
        train_idx.reserve(data.size() - test_idx.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (!in_test[i]) train_idx.push_back(static_cast<int>(i));
        }
        const DataMatrix train = take_rows(data, train_idx);

        NeuralNetOptions nn_opts = config.nn;
        nn_opts.seed = config.seed;
        SvmOptions svm_opts = config.svm;
        svm_opts.seed = config.seed;

        const auto knn1 = KnnClassifier::train(train, config.knn_small_k);
        const auto knn5 = KnnClassifier::train(
            train, std::min<int>(config.knn_large_k, static_cast<int>(train.size())));
        const auto svm = LinearSvmClassifier::train(train, svm_opts);
        const auto nn = NeuralNetClassifier::train(train, nn_opts);
        const auto nb = NaiveBayesClassifier::train(train);
        const auto dt = DecisionTreeClassifier::train(train, config.dt_max_depth,
                                                      config.dt_min_leaf);

        for (int i : test_idx) {
            const auto& x = data.rows[i];
            const int truth = data.labels[i];
            const int preds[6] = {knn1.predict(x), knn5.predict(x), svm.predict(x),
                                  nn.predict(x),   nb.predict(x),   dt.predict(x)};
            for (int c = 0; c < kinds; ++c) {
                ++confusion[c][truth][preds[c]];
                if (preds[c] == truth) ++correct[c];
            }
        }
    }

    double mean = 0.0;
    for (int c = 0; c < kinds; ++c) {
        ClassifierResult r;
        r.name = kClassifierNames[c];
        r.accuracy_pct = 100.0 * correct[c] / static_cast<double>(data.size());
        r.confusion = confusion[c];
        mean += r.accuracy_pct;
        report.results.push_back(std::move(r));
    }
    report.mean_accuracy_pct = mean / kinds;
    return report;
}

}  // namespace hrvf
