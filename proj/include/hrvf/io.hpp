#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hrvf/classifiers.hpp"
#include "hrvf/experiment.hpp"
#include "hrvf/feature_select.hpp"
#include "hrvf/freq_domain.hpp"
#include "hrvf/trend.hpp"
#include "hrvf/types.hpp"

namespace hrvf {

// CSV conventions throughout: UTF-8, LF line endings on output, CRLF
// tolerated on input, header row required, empty cell = missing value.

/// Reads `t_ms,rr_ms` (or a single `rr_ms` column; times are then the
/// cumulative interval sums). Throws ParseError with the offending line.
RRSeries read_rr_csv(const std::string& path);
void write_rr_csv(const std::string& path, const RRSeries& series);

/// `window_id,label,<18 feature columns in serialization order>`;
/// label is the state code, empty when unlabeled.
LabeledDataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const LabeledDataset& dataset);

/// Array of {window_id, label, features: {name: value|null}}.
LabeledDataset read_dataset_json(const std::string& path);
void write_dataset_json(const std::string& path, const LabeledDataset& dataset);

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

/// `file,label` rows naming per-window RR recordings.
struct ManifestEntry {
    std::string file;
    std::optional<ExerciseState> label;
};
std::vector<ManifestEntry> read_manifest_csv(const std::string& path);
void write_manifest_csv(const std::string& path, const std::vector<ManifestEntry>& entries);

/// Per-feature {feature, omega, rank, selected, per_pair_areas[]} plus the
/// run parameters; excluded features carry omega = null.
void write_weights_json(const std::string& path, const SelectionReport& report,
                        const SelectionOptions& opts);

/// `feature,class,chi2,df,alpha,critical,is_normal`.
void write_normality_csv(const std::string& path, const SelectionReport& report);

void write_eval_report_json(const std::string& path, const EvalReport& report);

/// One `case,knn1,knn5,svm,nn,nb,dt,mean` row per report.
void write_eval_reports_csv(const std::string& path, const std::vector<EvalReport>& reports);

void write_trend_json(const std::string& path, const TrendModel& model);
void write_trend_curve_csv(const std::string& path, const TrendModel& model, double step_s);

/// `t_s,hr_bpm` point pairs for trend fitting.
std::vector<std::pair<double, double>> read_hr_points_csv(const std::string& path);

/// Versioned JSON model files (weights, thresholds, standardization).
struct ModelJson {
    static void save_knn(const std::string& path, const KnnClassifier& m);
    static KnnClassifier load_knn(const std::string& path);
    static void save_naive_bayes(const std::string& path, const NaiveBayesClassifier& m);
    static NaiveBayesClassifier load_naive_bayes(const std::string& path);
    static void save_decision_tree(const std::string& path, const DecisionTreeClassifier& m);
    static DecisionTreeClassifier load_decision_tree(const std::string& path);
    static void save_neural_net(const std::string& path, const NeuralNetClassifier& m);
    static NeuralNetClassifier load_neural_net(const std::string& path);
    static void save_svm(const std::string& path, const LinearSvmClassifier& m);
    static LinearSvmClassifier load_svm(const std::string& path);
};

}  // namespace hrvf
