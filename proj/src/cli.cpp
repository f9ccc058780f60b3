#include "hrvf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hrvf/core.hpp"
#include "hrvf/io.hpp"
#include "hrvf/trend.hpp"

namespace hrvf {

using nlohmann::json;
namespace fs = std::filesystem;

ExtractOptions PipelineConfig::extract_options() const {
    ExtractOptions o;
    o.window_seconds = window_seconds;
    o.include_partial = include_partial;
    o.time_domain.outlier_gate = outlier_gate;
    o.time_domain.nn50_absolute = !nn50_signed;
    o.time_domain.pnn50_per_pair = !pnn50_total_denominator;
    o.welch.resample_hz = resample_hz;
    o.welch.segment_samples = welch_segment;
    o.welch.overlap = welch_overlap;
    o.welch.total_includes_sub_vlf = tp_includes_sub_vlf;
    o.welch.min_span_s = 0.9 * window_seconds;
    o.dfa = {dfa_short_min, dfa_short_max, dfa_long_min, dfa_long_max};
    o.entropy_m = entropy_m;
    o.entropy_r_factor = entropy_r_factor;
    return o;
}

SelectionOptions PipelineConfig::selection_options() const {
    SelectionOptions s;
    s.alpha = alpha;
    s.top_k = top_k;
    s.gate_excludes = !no_normality_gate;
    return s;
}

ExperimentConfig PipelineConfig::experiment_config() const {
    ExperimentConfig c;
    c.experiment_case = experiment_case;
    c.cv_folds = cv_folds;
    c.seed = seed;
    c.nn = {nn_hidden, nn_epochs, nn_lr, seed};
    c.svm = {svm_epochs, svm_lr, svm_lambda, seed};
    c.dt_max_depth = dt_max_depth;
    c.dt_min_leaf = dt_min_leaf;
    c.selection = selection_options();
    return c;
}

namespace {

json config_to_json(const PipelineConfig& c) {
    return json{{"window_seconds", c.window_seconds},
                {"include_partial", c.include_partial},
                {"outlier_gate", c.outlier_gate},
                {"nn50_signed", c.nn50_signed},
                {"pnn50_total_denominator", c.pnn50_total_denominator},
                {"resample_hz", c.resample_hz},
                {"welch_segment", c.welch_segment},
                {"welch_overlap", c.welch_overlap},
                {"tp_includes_sub_vlf", c.tp_includes_sub_vlf},
                {"dfa_short_min", c.dfa_short_min},
                {"dfa_short_max", c.dfa_short_max},
                {"dfa_long_min", c.dfa_long_min},
                {"dfa_long_max", c.dfa_long_max},
                {"entropy_m", c.entropy_m},
                {"entropy_r_factor", c.entropy_r_factor},
                {"alpha", c.alpha},
                {"top_k", c.top_k},
                {"no_normality_gate", c.no_normality_gate},
                {"experiment_case", c.experiment_case},
                {"cv_folds", c.cv_folds},
                {"seed", c.seed},
                {"nn_hidden", c.nn_hidden},
                {"nn_epochs", c.nn_epochs},
                {"nn_lr", c.nn_lr},
                {"svm_epochs", c.svm_epochs},
                {"svm_lr", c.svm_lr},
                {"svm_lambda", c.svm_lambda},
                {"dt_max_depth", c.dt_max_depth},
                {"dt_min_leaf", c.dt_min_leaf},
                {"trend_degree", c.trend_degree}};
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig c;
    c.window_seconds = j.value("window_seconds", c.window_seconds);
    c.include_partial = j.value("include_partial", c.include_partial);
    c.outlier_gate = j.value("outlier_gate", c.outlier_gate);
    c.nn50_signed = j.value("nn50_signed", c.nn50_signed);
    c.pnn50_total_denominator = j.value("pnn50_total_denominator", c.pnn50_total_denominator);
    c.resample_hz = j.value("resample_hz", c.resample_hz);
    c.welch_segment = j.value("welch_segment", c.welch_segment);
    c.welch_overlap = j.value("welch_overlap", c.welch_overlap);
    c.tp_includes_sub_vlf = j.value("tp_includes_sub_vlf", c.tp_includes_sub_vlf);
    c.dfa_short_min = j.value("dfa_short_min", c.dfa_short_min);
    c.dfa_short_max = j.value("dfa_short_max", c.dfa_short_max);
    c.dfa_long_min = j.value("dfa_long_min", c.dfa_long_min);
    c.dfa_long_max = j.value("dfa_long_max", c.dfa_long_max);
    c.entropy_m = j.value("entropy_m", c.entropy_m);
    c.entropy_r_factor = j.value("entropy_r_factor", c.entropy_r_factor);
    c.alpha = j.value("alpha", c.alpha);
    c.top_k = j.value("top_k", c.top_k);
    c.no_normality_gate = j.value("no_normality_gate", c.no_normality_gate);
    c.experiment_case = j.value("experiment_case", c.experiment_case);
    c.cv_folds = j.value("cv_folds", c.cv_folds);
    c.seed = j.value("seed", c.seed);
    c.nn_hidden = j.value("nn_hidden", c.nn_hidden);
    c.nn_epochs = j.value("nn_epochs", c.nn_epochs);
    c.nn_lr = j.value("nn_lr", c.nn_lr);
    c.svm_epochs = j.value("svm_epochs", c.svm_epochs);
    c.svm_lr = j.value("svm_lr", c.svm_lr);
    c.svm_lambda = j.value("svm_lambda", c.svm_lambda);
    c.dt_max_depth = j.value("dt_max_depth", c.dt_max_depth);
    c.dt_min_leaf = j.value("dt_min_leaf", c.dt_min_leaf);
    c.trend_degree = j.value("trend_degree", c.trend_degree);
    return c;
}

}  // namespace

std::string PipelineConfig::to_json_string() const {
    return config_to_json(*this).dump(2);
}

PipelineConfig PipelineConfig::from_json_string(const std::string& text) {
    return config_from_json(json::parse(text));
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid config JSON in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

namespace {

SynthSpec synth_spec_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open synth spec " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid synth spec JSON in " + path + ": " + e.what());
    }
    SynthSpec spec = default_synth_spec();
    spec.window_seconds = j.value("window_seconds", spec.window_seconds);
    if (j.contains("classes")) {
        for (const auto& [name, cj] : j.at("classes").items()) {
            const auto st = state_from_name(name);
            if (!st) throw Error("unknown class name '" + name + "' in synth spec");
            auto& cs = spec.classes[static_cast<int>(*st)];
            cs.count = cj.value("count", cs.count);
            cs.rr_mean_ms = cj.value("rr_mean_ms", cs.rr_mean_ms);
            cs.rr_sd_ms = cj.value("rr_sd_ms", cs.rr_sd_ms);
            cs.lf_amp_ms = cj.value("lf_amp_ms", cs.lf_amp_ms);
            cs.hf_amp_ms = cj.value("hf_amp_ms", cs.hf_amp_ms);
            cs.lf_freq_hz = cj.value("lf_freq_hz", cs.lf_freq_hz);
            cs.hf_freq_hz = cj.value("hf_freq_hz", cs.hf_freq_hz);
        }
    }
    return spec;
}

void save_effective_config(const std::string& path, const PipelineConfig& config) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << config.to_json_string() << "\n";
}

int cmd_extract(const PipelineConfig& config, const std::string& input,
                const std::string& manifest, const std::string& out_csv,
                const std::string& out_json, const std::string& spectrum_dir) {
    const ExtractOptions opts = config.extract_options();
    std::vector<Window> windows;

    if (!manifest.empty()) {
        const auto entries = read_manifest_csv(manifest);
        const fs::path base = fs::path(manifest).parent_path();
        for (const auto& e : entries) {
            const fs::path p = fs::path(e.file).is_absolute() ? fs::path(e.file) : base / e.file;
            RRSeries series = read_rr_csv(p.string());
            for (auto& w : segment_windows(series, config.window_seconds)) {
                w.label = e.label;
                windows.push_back(std::move(w));
            }
        }
    } else {
        RRSeries series = read_rr_csv(input);
        windows = segment_windows(series, config.window_seconds);
    }

    const LabeledDataset dataset = extract_dataset(windows, opts);
    if (!out_csv.empty()) write_dataset_csv(out_csv, dataset);
    if (!out_json.empty()) write_dataset_json(out_json, dataset);

    if (!spectrum_dir.empty()) {
        fs::create_directories(spectrum_dir);
        int id = 0;
        for (const auto& w : windows) {
            if (w.partial && !opts.include_partial) continue;
            Spectrum spectrum;
            try {
                band_powers(w.series, opts.welch, spectrum);
            } catch (const Error&) {
                ++id;
                continue;
            }
            write_spectrum_csv((fs::path(spectrum_dir) /
                                ("window_" + std::to_string(id++) + ".csv")).string(),
                               spectrum);
        }
    }
    std::cout << "extracted " << dataset.rows.size() << " windows\n";
    return 0;
}

int cmd_select(const PipelineConfig& config, const std::string& features_path,
               const std::string& out_json, const std::string& normality_csv) {
    const LabeledDataset dataset = read_dataset_csv(features_path);
    const SelectionOptions opts = config.selection_options();
    const SelectionReport report = rank_features(dataset, opts);
    write_weights_json(out_json, report, opts);
    if (!normality_csv.empty()) write_normality_csv(normality_csv, report);

    const auto selected = report.selected_feature_ids();
    std::cout << "selected:";
    for (int f : selected) std::cout << " " << feature_name(f);
    std::cout << "\n";
    return 0;
}

int cmd_eval(const PipelineConfig& config, const std::string& features_path,
             const std::string& out_json, const std::string& out_csv,
             const std::string& models_dir) {
    const LabeledDataset dataset = read_dataset_csv(features_path);
    const ExperimentConfig exp = config.experiment_config();
    const EvalReport report = run_experiment(dataset, exp);
    if (!out_json.empty()) write_eval_report_json(out_json, report);
    if (!out_csv.empty()) write_eval_reports_csv(out_csv, {report});

    if (!models_dir.empty()) {
        // final models fit on the full dataset, for reuse/inspection
        fs::create_directories(models_dir);
        const DataMatrix all = to_matrix(dataset, report.feature_subset, nullptr);
        NeuralNetOptions nn_opts = exp.nn;
        SvmOptions svm_opts = exp.svm;
        const fs::path dir(models_dir);
        ModelJson::save_knn((dir / "knn1.json").string(),
                            KnnClassifier::train(all, exp.knn_small_k));
        ModelJson::save_knn((dir / "knn5.json").string(),
                            KnnClassifier::train(all, exp.knn_large_k));
        ModelJson::save_svm((dir / "svm.json").string(),
                            LinearSvmClassifier::train(all, svm_opts));
        ModelJson::save_neural_net((dir / "nn.json").string(),
                                   NeuralNetClassifier::train(all, nn_opts));
        ModelJson::save_naive_bayes((dir / "nb.json").string(),
                                    NaiveBayesClassifier::train(all));
        ModelJson::save_decision_tree(
            (dir / "dt.json").string(),
            DecisionTreeClassifier::train(all, exp.dt_max_depth, exp.dt_min_leaf));
    }

    std::cout << "case " << report.experiment_case << " mean accuracy "
              << report.mean_accuracy_pct << "%\n";
    return 0;
}

int cmd_trend(const PipelineConfig& config, const std::string& input,
              const std::string& out_json, const std::string& curve_csv, double curve_step,
              const std::vector<double>& eval_at, int age) {
    const auto points = read_hr_points_csv(input);
    std::vector<double> t, hr;
    t.reserve(points.size());
    hr.reserve(points.size());
    for (const auto& [tp, hp] : points) {
        t.push_back(tp);
        hr.push_back(hp);
    }
    const TrendModel model = fit_trend(t, hr, config.trend_degree);
    if (!out_json.empty()) write_trend_json(out_json, model);
    if (!curve_csv.empty()) write_trend_curve_csv(curve_csv, model, curve_step);

    std::cout << "degree " << model.degree << ", residual rms " << model.residual_rms
              << " BPM, t in [" << model.t_min << ", " << model.t_max << "] s\n";
    for (double at : eval_at) {
        const TrendEval e = eval_trend(model, at);
        const char* zone = "below_moderate";
        if (e.hr_bpm > 0.0) {
            switch (intensity_zone(e.hr_bpm, age)) {
                case IntensityZone::Moderate: zone = "moderate"; break;
                case IntensityZone::Vigorous: zone = "vigorous"; break;
                default: break;
            }
        }
        std::cout << "t=" << at << " s -> " << e.hr_bpm << " BPM (" << zone << ")"
                  << (e.extrapolated ? " [extrapolated]" : "") << "\n";
    }
    return 0;
}

int cmd_synth(const PipelineConfig& config, const std::string& spec_path,
              const std::string& out_dir) {
    const SynthSpec spec =
        spec_path.empty() ? default_synth_spec() : synth_spec_from_json_file(spec_path);
    const auto windows = synthesize_dataset(spec, config.seed);

    fs::create_directories(out_dir);
    std::vector<ManifestEntry> manifest;
    int id = 0;
    for (const auto& w : windows) {
        const std::string name = "window_" + std::to_string(id++) + ".csv";
        write_rr_csv((fs::path(out_dir) / name).string(), w.series);
        manifest.push_back({name, w.label});
    }
    write_manifest_csv((fs::path(out_dir) / "manifest.csv").string(), manifest);
    save_effective_config((fs::path(out_dir) / "run_config.json").string(), config);
    std::cout << "wrote " << windows.size() << " windows to " << out_dir << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"HRV exercise-fatigue toolkit: feature extraction, overlap-area feature "
                 "ranking, classifier evaluation, and heart-rate trend fitting"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    PipelineConfig config;
    // a --config file provides defaults; explicit flags override it
    try {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") config = PipelineConfig::from_json_file(args[i + 1]);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::string config_path;
    app.add_option("--config", config_path, "pipeline config JSON (defaults for all flags)");

    std::string save_config;
    app.add_option("--save-config", save_config, "write the effective config JSON here");

    app.add_option("--seed", config.seed, "RNG seed recorded with every run");

    auto* extract = app.add_subcommand("extract", "RR recording(s) -> per-window feature rows");
    std::string ex_input, ex_manifest, ex_out_csv, ex_out_json, ex_spectrum_dir;
    extract->add_option("--input", ex_input, "RR CSV (t_ms,rr_ms) for one recording");
    extract->add_option("--manifest", ex_manifest, "file,label CSV of labeled recordings");
    extract->add_option("--out", ex_out_csv, "features CSV output")->required();
    extract->add_option("--out-json", ex_out_json, "features JSON output");
    extract->add_option("--spectrum-dir", ex_spectrum_dir, "dump per-window PSD CSVs here");
    extract->add_option("--window-seconds", config.window_seconds, "analysis window length");
    extract->add_flag("--include-partial", config.include_partial,
                      "extract trailing partial windows too");
    extract->add_flag("--outlier-gate", config.outlier_gate,
                      "drop RR outside [300, 2000] ms before time-domain analysis");
    extract->add_flag("--nn50-signed", config.nn50_signed,
                      "count signed successive differences >= 50 ms (default: |diff| > 50)");
    extract->add_flag("--pnn50-total-denominator", config.pnn50_total_denominator,
                      "divide NN50 by n instead of the n-1 successive pairs");
    extract->add_option("--resample-hz", config.resample_hz, "tachogram resampling rate");
    extract->add_option("--welch-segment", config.welch_segment, "Welch segment length, samples");
    extract->add_option("--welch-overlap", config.welch_overlap, "Welch segment overlap fraction");
    extract->add_flag("--tp-includes-sub-vlf", config.tp_includes_sub_vlf,
                      "integrate total power over (0, 0.4] instead of vlf+lf+hf");
    extract->add_option("--entropy-m", config.entropy_m, "entropy embedding dimension");
    extract->add_option("--entropy-r-factor", config.entropy_r_factor,
                        "entropy tolerance as a multiple of SDNN");

    auto* select = app.add_subcommand("select", "features CSV -> ranked feature weights");
    std::string se_features, se_out = "weights.json", se_normality;
    select->add_option("--features", se_features, "features CSV from extract")->required();
    select->add_option("--out", se_out, "weights report JSON");
    select->add_option("--normality-csv", se_normality, "per-(feature,class) chi-square report");
    select->add_option("--alpha", config.alpha, "normality significance level");
    select->add_option("--top-k", config.top_k, "selected subset size");
    select->add_flag("--no-normality-gate", config.no_normality_gate,
                     "rank features even when a class distribution fails the test");

    auto* eval = app.add_subcommand("eval", "features CSV -> cross-validated accuracy report");
    std::string ev_features, ev_out_json = "report.json", ev_out_csv, ev_models_dir;
    eval->add_option("--features", ev_features, "features CSV from extract")->required();
    eval->add_option("--case", config.experiment_case,
                     "0: time-domain only, 1: time+nonlinear, 2: freq+nonlinear, "
                     "3: all 18, 4: ranked top-K");
    eval->add_option("--folds", config.cv_folds, "stratified CV folds (= rows for leave-one-out)");
    eval->add_option("--out", ev_out_json, "report JSON");
    eval->add_option("--csv", ev_out_csv, "one-line accuracy CSV (case,knn1,...,mean)");
    eval->add_option("--models-dir", ev_models_dir, "save full-data models here");
    eval->add_option("--top-k", config.top_k, "selected subset size for case 4");
    eval->add_flag("--no-normality-gate", config.no_normality_gate,
                   "case 4: rank features even when normality fails");
    eval->add_option("--nn-hidden", config.nn_hidden, "neural net hidden units");
    eval->add_option("--nn-epochs", config.nn_epochs, "neural net epochs");
    eval->add_option("--nn-lr", config.nn_lr, "neural net learning rate");
    eval->add_option("--svm-epochs", config.svm_epochs, "SVM epochs");
    eval->add_option("--svm-lr", config.svm_lr, "SVM learning rate");
    eval->add_option("--svm-lambda", config.svm_lambda, "SVM regularization");
    eval->add_option("--dt-max-depth", config.dt_max_depth, "decision tree depth limit");
    eval->add_option("--dt-min-leaf", config.dt_min_leaf, "decision tree min rows per leaf");
    eval->add_option("--alpha", config.alpha, "normality significance level (case 4)");

    auto* trend = app.add_subcommand("trend", "t_s,hr_bpm points -> polynomial fatigue trend");
    std::string tr_input, tr_out = "trend.json", tr_curve;
    double tr_step = 10.0;
    std::vector<double> tr_at;
    int tr_age = kDefaultSubjectAge;
    trend->add_option("--input", tr_input, "heart-rate points CSV (t_s,hr_bpm)")->required();
    trend->add_option("--degree", config.trend_degree, "polynomial degree");
    trend->add_option("--out", tr_out, "trend report JSON");
    trend->add_option("--curve", tr_curve, "fitted curve CSV (t_s,hr_bpm)");
    trend->add_option("--curve-step", tr_step, "curve sampling step, seconds");
    trend->add_option("--at", tr_at, "evaluate the trend at these times (seconds)");
    trend->add_option("--age", tr_age, "age for the intensity-zone readout");

    auto* synth = app.add_subcommand("synth", "synthetic labeled RR windows -> rr files");
    std::string sy_spec, sy_out = "synth_out";
    synth->add_option("--spec", sy_spec, "per-class generation spec JSON (default: built-in)");
    synth->add_option("--out", sy_out, "output directory");
    synth->add_option("--window-seconds", config.window_seconds, "window length");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hrvfatigue");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (config.experiment_case < 0 || config.experiment_case > 4) {
            throw UsageError("unknown experiment case " +
                             std::to_string(config.experiment_case) + " (expected 0..4)");
        }
        if (!save_config.empty()) save_effective_config(save_config, config);
        if (extract->parsed()) {
            if (ex_input.empty() == ex_manifest.empty()) {
                throw UsageError("extract needs exactly one of --input or --manifest");
            }
            return cmd_extract(config, ex_input, ex_manifest, ex_out_csv, ex_out_json,
                               ex_spectrum_dir);
        }
        if (select->parsed()) return cmd_select(config, se_features, se_out, se_normality);
        if (eval->parsed()) {
            return cmd_eval(config, ev_features, ev_out_json, ev_out_csv, ev_models_dir);
        }
        if (trend->parsed()) {
            return cmd_trend(config, tr_input, tr_out, tr_curve, tr_step, tr_at, tr_age);
        }
        if (synth->parsed()) return cmd_synth(config, sy_spec, sy_out);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hrvf
