#include "hrvf/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hrvf {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    return out;
}

// splits one CSV line; no quoting support (none of our formats need it)
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& cell, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " value '" + cell + "'", line_no);
    }
}

int parse_int(const std::string& cell, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " value '" + cell + "'", line_no);
    }
}

json json_from_file(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void json_to_file(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace

RRSeries read_rr_csv(const std::string& path) {
    auto in = open_in(path);
    RRSeries series;
    std::string line;
    int line_no = 0;
    int rr_col = -1, t_col = -1;
    bool first_time = true;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (line_no == 1) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] == "rr_ms") rr_col = static_cast<int>(c);
                if (cells[c] == "t_ms") t_col = static_cast<int>(c);
            }
            if (rr_col < 0) throw ParseError("missing rr_ms column in header", line_no);
            continue;
        }
        if (cells.size() <= static_cast<std::size_t>(rr_col)) {
            throw ParseError("too few columns", line_no);
        }
        const double rr = parse_double(cells[rr_col], line_no, "rr_ms");
        if (rr <= 0.0) throw ParseError("rr_ms must be positive", line_no);
        if (t_col >= 0 && first_time) {
            if (cells.size() > static_cast<std::size_t>(t_col) && !cells[t_col].empty()) {
                series.start_time_ms = parse_double(cells[t_col], line_no, "t_ms");
            }
            first_time = false;
        }
        series.rr_ms.push_back(rr);
    }
    if (series.empty()) throw ParseError("no data rows", line_no == 0 ? 1 : line_no);
    return series;
}

void write_rr_csv(const std::string& path, const RRSeries& series) {
    auto out = open_out(path);
    out << "t_ms,rr_ms\n";
    double t = series.start_time_ms.value_or(0.0);
    for (double rr : series.rr_ms) {
        t += rr;
        out << format_double(t) << "," << format_double(rr) << "\n";
    }
}

LabeledDataset read_dataset_csv(const std::string& path) {
    auto in = open_in(path);
    LabeledDataset dataset;
    std::string line;
    int line_no = 0;
    std::vector<int> feature_cols(kFeatureCount, -1);
    int id_col = -1, label_col = -1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (line_no == 1) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] == "window_id") id_col = static_cast<int>(c);
                if (cells[c] == "label") label_col = static_cast<int>(c);
                if (auto f = feature_from_name(cells[c])) {
                    feature_cols[static_cast<int>(*f)] = static_cast<int>(c);
                }
            }
            if (id_col < 0) throw ParseError("missing window_id column", line_no);
            if (label_col < 0) throw ParseError("missing label column", line_no);
            for (int f = 0; f < kFeatureCount; ++f) {
                if (feature_cols[f] < 0) {
                    throw ParseError("missing feature column " + std::string(feature_name(f)),
                                     line_no);
                }
            }
            continue;
        }
        DatasetRow row;
        if (cells.size() <= static_cast<std::size_t>(id_col)) {
            throw ParseError("too few columns", line_no);
        }
        row.window_id = parse_int(cells[id_col], line_no, "window_id");
        const std::string& label = cells[label_col];
        if (!label.empty()) {
            const auto st = state_from_code(parse_int(label, line_no, "label"));
            if (!st) throw ParseError("label code out of range", line_no);
            row.label = *st;
        }
        for (int f = 0; f < kFeatureCount; ++f) {
            const std::size_t c = static_cast<std::size_t>(feature_cols[f]);
            if (c >= cells.size() || cells[c].empty()) continue;  // missing -> invalid
            row.features.valid[f] = true;
            row.features.value[f] = parse_double(cells[c], line_no, feature_name(f).data());
        }
        dataset.rows.push_back(std::move(row));
    }
    return dataset;
}

void write_dataset_csv(const std::string& path, const LabeledDataset& dataset) {
    auto out = open_out(path);
    out << "window_id,label";
    for (int f = 0; f < kFeatureCount; ++f) out << "," << feature_name(f);
    out << "\n";
    for (const auto& row : dataset.rows) {
        out << row.window_id << ",";
        if (row.label) out << static_cast<int>(*row.label);
        for (int f = 0; f < kFeatureCount; ++f) {
            out << ",";
            if (row.features.valid[f]) out << format_double(row.features.value[f]);
        }
        out << "\n";
    }
}

LabeledDataset read_dataset_json(const std::string& path) {
    const json j = json_from_file(path);
    if (!j.is_array()) throw Error(path + ": expected a JSON array of windows");
    LabeledDataset dataset;
    for (const auto& item : j) {
        DatasetRow row;
        row.window_id = item.at("window_id").get<int>();
        if (item.contains("label") && !item.at("label").is_null()) {
            const auto st = state_from_code(item.at("label").get<int>());
            if (!st) throw Error(path + ": label code out of range");
            row.label = *st;
        }
        const auto& features = item.at("features");
        for (int f = 0; f < kFeatureCount; ++f) {
            const std::string name(feature_name(f));
            if (features.contains(name) && !features.at(name).is_null()) {
                row.features.set(static_cast<FeatureId>(f), features.at(name).get<double>());
            }
        }
        dataset.rows.push_back(std::move(row));
    }
    return dataset;
}

void write_dataset_json(const std::string& path, const LabeledDataset& dataset) {
    json arr = json::array();
    for (const auto& row : dataset.rows) {
        json features;
        for (int f = 0; f < kFeatureCount; ++f) {
            const std::string name(feature_name(f));
            if (row.features.valid[f]) {
                features[name] = row.features.value[f];
            } else {
                features[name] = nullptr;
            }
        }
        json item;
        item["window_id"] = row.window_id;
        if (row.label) {
            item["label"] = static_cast<int>(*row.label);
        } else {
            item["label"] = nullptr;
        }
        item["features"] = std::move(features);
        arr.push_back(std::move(item));
    }
    json_to_file(path, arr);
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
    auto out = open_out(path);
    out << "freq_hz,psd_ms2_per_hz\n";
    for (std::size_t k = 0; k < spectrum.freq_hz.size(); ++k) {
        out << format_double(spectrum.freq_hz[k]) << ","
            << format_double(spectrum.psd_ms2_per_hz[k]) << "\n";
    }
}

std::vector<ManifestEntry> read_manifest_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    int file_col = -1, label_col = -1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (line_no == 1) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] == "file") file_col = static_cast<int>(c);
                if (cells[c] == "label") label_col = static_cast<int>(c);
            }
            if (file_col < 0) throw ParseError("missing file column", line_no);
            continue;
        }
        ManifestEntry e;
        e.file = cells[static_cast<std::size_t>(file_col)];
        if (label_col >= 0 && cells.size() > static_cast<std::size_t>(label_col) &&
            !cells[label_col].empty()) {
            const auto st = state_from_code(parse_int(cells[label_col], line_no, "label"));
            if (!st) throw ParseError("label code out of range", line_no);
            e.label = *st;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

void write_manifest_csv(const std::string& path, const std::vector<ManifestEntry>& entries) {
    auto out = open_out(path);
    out << "file,label\n";
    for (const auto& e : entries) {
        out << e.file << ",";
        if (e.label) out << static_cast<int>(*e.label);
        out << "\n";
    }
}

void write_weights_json(const std::string& path, const SelectionReport& report,
                        const SelectionOptions& opts) {
    json j;
    j["alpha"] = opts.alpha;
    j["top_k"] = opts.top_k;
    j["normality_gate"] = opts.gate_excludes;
    j["classes_present"] = report.classes_present;
    json pairs = json::array();
    for (const auto& [a, b] : report.pairs) pairs.push_back(json::array({a, b}));
    j["class_pairs"] = std::move(pairs);
    json pw = json::array();
    for (double w : report.pair_weights) pw.push_back(w);
    j["pair_weights"] = std::move(pw);

    const auto selected = report.selected_feature_ids();
    json features = json::array();
    for (int f = 0; f < kFeatureCount; ++f) {
        json item;
        item["feature"] = std::string(feature_name(f));
        int local = -1;
        for (std::size_t i = 0; i < report.ranked_features.size(); ++i) {
            if (report.ranked_features[i] == f) local = static_cast<int>(i);
        }
        if (local < 0) {
            item["omega"] = nullptr;
            item["rank"] = nullptr;
            item["selected"] = false;
            item["per_pair_areas"] = json::array();
        } else {
            item["omega"] = report.weights.omega[local];
            int rank = 0;
            for (std::size_t r = 0; r < report.weights.ranking.size(); ++r) {
                if (report.weights.ranking[r] == local) rank = static_cast<int>(r) + 1;
            }
            item["rank"] = rank;
            item["selected"] =
                std::find(selected.begin(), selected.end(), f) != selected.end();
            json areas = json::array();
            for (const auto& pair_areas : report.areas) areas.push_back(pair_areas[local]);
            item["per_pair_areas"] = std::move(areas);
        }
        features.push_back(std::move(item));
    }
    j["features"] = std::move(features);
    json_to_file(path, j);
}

void write_normality_csv(const std::string& path, const SelectionReport& report) {
    auto out = open_out(path);
    out << "feature,class,chi2,df,alpha,critical,is_normal\n";
    for (const auto& fn : report.normality) {
        out << feature_name(fn.feature_id) << "," << fn.class_id << ","
            << format_double(fn.report.chi2_stat) << "," << fn.report.df << ","
            << format_double(fn.report.alpha) << "," << format_double(fn.report.critical) << ","
            << (fn.report.is_normal ? 1 : 0) << "\n";
    }
}

namespace {

json report_to_json(const EvalReport& report) {
    json j;
    j["case"] = report.experiment_case;
    j["cv_folds"] = report.cv_folds;
    j["seed"] = report.seed;
    j["rows_used"] = report.rows_used;
    j["rows_dropped"] = report.rows_dropped;
    json subset = json::array();
    for (int f : report.feature_subset) subset.push_back(std::string(feature_name(f)));
    j["features"] = std::move(subset);
    json results;
    for (const auto& r : report.results) {
        json item;
        item["accuracy_pct"] = r.accuracy_pct;
        item["confusion"] = r.confusion;
        results[r.name] = std::move(item);
    }
    j["classifiers"] = std::move(results);
    j["mean_accuracy_pct"] = report.mean_accuracy_pct;
    return j;
}

}  // namespace

void write_eval_report_json(const std::string& path, const EvalReport& report) {
    json_to_file(path, report_to_json(report));
}

void write_eval_reports_csv(const std::string& path, const std::vector<EvalReport>& reports) {
    auto out = open_out(path);
    out << "case,knn1,knn5,svm,nn,nb,dt,mean\n";
    for (const auto& report : reports) {
        out << report.experiment_case;
        for (const auto& r : report.results) out << "," << format_double(r.accuracy_pct);
        out << "," << format_double(report.mean_accuracy_pct) << "\n";
    }
}

void write_trend_json(const std::string& path, const TrendModel& model) {
    json j;
    j["degree"] = model.degree;
    j["coefficients"] = model.coefficients;
    j["residual_rms"] = model.residual_rms;
    j["t_range"] = json::array({model.t_min, model.t_max});
    json_to_file(path, j);
}

void write_trend_curve_csv(const std::string& path, const TrendModel& model, double step_s) {
    auto out = open_out(path);
    out << "t_s,hr_bpm\n";
    if (step_s <= 0.0) throw Error("curve step must be positive");
    for (double t = model.t_min; t <= model.t_max + 0.5 * step_s; t += step_s) {
        out << format_double(t) << "," << format_double(eval_trend(model, t).hr_bpm) << "\n";
    }
}

std::vector<std::pair<double, double>> read_hr_points_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::pair<double, double>> points;
    std::string line;
    int line_no = 0;
    int t_col = -1, hr_col = -1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (line_no == 1) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] == "t_s") t_col = static_cast<int>(c);
                if (cells[c] == "hr_bpm") hr_col = static_cast<int>(c);
            }
            if (t_col < 0 || hr_col < 0) {
                throw ParseError("expected t_s,hr_bpm header", line_no);
            }
            continue;
        }
        if (cells.size() <= static_cast<std::size_t>(std::max(t_col, hr_col))) {
            throw ParseError("too few columns", line_no);
        }
        points.emplace_back(parse_double(cells[t_col], line_no, "t_s"),
                            parse_double(cells[hr_col], line_no, "hr_bpm"));
    }
    if (points.empty()) throw ParseError("no data rows", line_no == 0 ? 1 : line_no);
    return points;
}

// ------------------------------------------------------- model files

namespace {

constexpr int kModelFormatVersion = 1;

json scaler_to_json(const Standardizer& s) {
    return json{{"mean", s.mean}, {"scale", s.scale}};
}

Standardizer scaler_from_json(const json& j) {
    Standardizer s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.scale = j.at("scale").get<std::vector<double>>();
    return s;
}

json model_header(const char* type) {
    return json{{"format_version", kModelFormatVersion}, {"type", type}};
}

void check_header(const json& j, const char* type, const std::string& path) {
    if (j.value("format_version", -1) != kModelFormatVersion) {
        throw Error(path + ": unsupported model format version");
    }
    if (j.value("type", "") != type) {
        throw Error(path + ": expected model type '" + type + "'");
    }
}

}  // namespace

void ModelJson::save_knn(const std::string& path, const KnnClassifier& m) {
    json j = model_header("knn");
    j["k"] = m.k_;
    j["n_classes"] = m.n_classes_;
    j["scaler"] = scaler_to_json(m.scaler_);
    j["points"] = m.points_;
    j["labels"] = m.labels_;
    json_to_file(path, j);
}

KnnClassifier ModelJson::load_knn(const std::string& path) {
    const json j = json_from_file(path);
    check_header(j, "knn", path);
    KnnClassifier m;
    m.k_ = j.at("k").get<int>();
    m.n_classes_ = j.at("n_classes").get<int>();
    m.scaler_ = scaler_from_json(j.at("scaler"));
    m.points_ = j.at("points").get<std::vector<std::vector<double>>>();
    m.labels_ = j.at("labels").get<std::vector<int>>();
    return m;
}

void ModelJson::save_naive_bayes(const std::string& path, const NaiveBayesClassifier& m) {
    json j = model_header("naive_bayes");
    j["n_classes"] = m.n_classes_;
    j["scaler"] = scaler_to_json(m.scaler_);
    j["log_prior"] = m.log_prior_;
    j["mean"] = m.mean_;
    j["variance"] = m.variance_;
    json_to_file(path, j);
}

NaiveBayesClassifier ModelJson::load_naive_bayes(const std::string& path) {
    const json j = json_from_file(path);
    check_header(j, "naive_bayes", path);
    NaiveBayesClassifier m;
    m.n_classes_ = j.at("n_classes").get<int>();
    m.scaler_ = scaler_from_json(j.at("scaler"));
    m.log_prior_ = j.at("log_prior").get<std::vector<double>>();
    m.mean_ = j.at("mean").get<std::vector<std::vector<double>>>();
    m.variance_ = j.at("variance").get<std::vector<std::vector<double>>>();
    return m;
}

void ModelJson::save_decision_tree(const std::string& path, const DecisionTreeClassifier& m) {
    json j = model_header("decision_tree");
    j["scaler"] = scaler_to_json(m.scaler_);
    j["root"] = m.root_;
    json nodes = json::array();
    for (const auto& n : m.nodes_) {
        nodes.push_back(json{{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"leaf_class", n.leaf_class}});
    }
    j["nodes"] = std::move(nodes);
    json_to_file(path, j);
}

DecisionTreeClassifier ModelJson::load_decision_tree(const std::string& path) {
    const json j = json_from_file(path);
    check_header(j, "decision_tree", path);
    DecisionTreeClassifier m;
    m.scaler_ = scaler_from_json(j.at("scaler"));
    m.root_ = j.at("root").get<int>();
    for (const auto& n : j.at("nodes")) {
        DecisionTreeClassifier::Node node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.leaf_class = n.at("leaf_class").get<int>();
        m.nodes_.push_back(node);
    }
    return m;
}

void ModelJson::save_neural_net(const std::string& path, const NeuralNetClassifier& m) {
    json j = model_header("neural_net");
    j["input_dim"] = m.input_dim;
    j["hidden"] = m.hidden;
    j["n_classes"] = m.n_classes;
    j["scaler"] = scaler_to_json(m.scaler_);
    j["w1"] = m.w1;
    j["b1"] = m.b1;
    j["w2"] = m.w2;
    j["b2"] = m.b2;
    j["final_loss"] = m.final_loss_;
    json_to_file(path, j);
}

NeuralNetClassifier ModelJson::load_neural_net(const std::string& path) {
    const json j = json_from_file(path);
    check_header(j, "neural_net", path);
    NeuralNetClassifier m;
    m.input_dim = j.at("input_dim").get<int>();
    m.hidden = j.at("hidden").get<int>();
    m.n_classes = j.at("n_classes").get<int>();
    m.scaler_ = scaler_from_json(j.at("scaler"));
    m.w1 = j.at("w1").get<std::vector<double>>();
    m.b1 = j.at("b1").get<std::vector<double>>();
    m.w2 = j.at("w2").get<std::vector<double>>();
    m.b2 = j.at("b2").get<std::vector<double>>();
    m.final_loss_ = j.at("final_loss").get<double>();
    return m;
}

void ModelJson::save_svm(const std::string& path, const LinearSvmClassifier& m) {
    json j = model_header("linear_svm");
    j["n_classes"] = m.n_classes_;
    j["scaler"] = scaler_to_json(m.scaler_);
    j["weights"] = m.weights_;
    j["bias"] = m.bias_;
    json_to_file(path, j);
}

LinearSvmClassifier ModelJson::load_svm(const std::string& path) {
    const json j = json_from_file(path);
    check_header(j, "linear_svm", path);
    LinearSvmClassifier m;
    m.n_classes_ = j.at("n_classes").get<int>();
    m.scaler_ = scaler_from_json(j.at("scaler"));
    m.weights_ = j.at("weights").get<std::vector<std::vector<double>>>();
    m.bias_ = j.at("bias").get<std::vector<double>>();
    return m;
}

}  // namespace hrvf
