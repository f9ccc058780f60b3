#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrvf/experiment.hpp"
#include "hrvf/features.hpp"
#include "hrvf/synth.hpp"

namespace hrvf {

/// Every knob a pipeline run can set; round-trips losslessly through its
/// JSON form. The seed is always explicit so persisted runs reproduce.
struct PipelineConfig {
    double window_seconds = 300.0;
    bool include_partial = false;
    bool outlier_gate = false;
    bool nn50_signed = false;       // literal signed >= 50 variant
    bool pnn50_total_denominator = false;  // literal n denominator
    double resample_hz = 4.0;
    std::size_t welch_segment = 256;
    double welch_overlap = 0.5;
    bool tp_includes_sub_vlf = false;
    int dfa_short_min = 4, dfa_short_max = 16;
    int dfa_long_min = 16, dfa_long_max = 64;
    int entropy_m = 2;
    double entropy_r_factor = 0.2;
    double alpha = 0.05;
    int top_k = 3;
    bool no_normality_gate = false;
    int experiment_case = 4;
    int cv_folds = 5;
    std::uint64_t seed = 7;
    int nn_hidden = 16;
    int nn_epochs = 2000;
    double nn_lr = 0.05;
    int svm_epochs = 200;
    double svm_lr = 0.1;
    double svm_lambda = 1e-3;
    int dt_max_depth = 8;
    int dt_min_leaf = 2;
    int trend_degree = 4;

    ExtractOptions extract_options() const;
    ExperimentConfig experiment_config() const;
    SelectionOptions selection_options() const;

    std::string to_json_string() const;
    static PipelineConfig from_json_string(const std::string& text);
    static PipelineConfig from_json_file(const std::string& path);
};

/// Entry point behind the binary: argv-style arguments, exit code out
/// (0 success, 1 data/domain error, 2 usage error).
int run_cli(const std::vector<std::string>& args);

}  // namespace hrvf
