#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hrvf/cli.hpp"
#include "hrvf/io.hpp"
#include "hrvf/rng.hpp"
#include "hrvf/synth.hpp"

using namespace hrvf;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("hrvf_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

LabeledDataset sample_dataset(std::uint64_t seed, int per_class) {
    Rng rng(seed);
    LabeledDataset d;
    int id = 0;
    for (int c = 0; c < kStateCount; ++c) {
        for (int i = 0; i < per_class; ++i) {
            DatasetRow row;
            row.window_id = id++;
            row.label = static_cast<ExerciseState>(c);
            for (int f = 0; f < kFeatureCount; ++f) {
                row.features.set(static_cast<FeatureId>(f), rng.gaussian(4.0 * c, 1.0));
            }
            if (i == 0) row.features.set_invalid(FeatureId::SampEn);  // exercise nulls
            d.rows.push_back(row);
        }
    }
    return d;
}

}  // namespace

TEST_CASE("rr csv round-trips, with and without t_ms") {
    const auto dir = temp_dir("rr");
    RRSeries s;
    s.rr_ms = {812.5, 790.0, 1001.25};
    s.start_time_ms = 1700000000000.0;
    write_rr_csv((dir / "a.csv").string(), s);
    const auto back = read_rr_csv((dir / "a.csv").string());
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.rr_ms[i] == s.rr_ms[i]);

    spit(dir / "bare.csv", "rr_ms\n800\n900\n1000\n");
    const auto bare = read_rr_csv((dir / "bare.csv").string());
    CHECK(bare.size() == 3);
    CHECK_FALSE(bare.start_time_ms.has_value());
}

TEST_CASE("rr csv parse errors carry the line number") {
    const auto dir = temp_dir("rr_err");
    spit(dir / "bad.csv", "t_ms,rr_ms\n1000,800\n2000,oops\n");
    try {
        read_rr_csv((dir / "bad.csv").string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    spit(dir / "neg.csv", "t_ms,rr_ms\n1000,-5\n");
    CHECK_THROWS_AS(read_rr_csv((dir / "neg.csv").string()), ParseError);
    spit(dir / "nohdr.csv", "a,b\n1,2\n");
    CHECK_THROWS_AS(read_rr_csv((dir / "nohdr.csv").string()), ParseError);
}

TEST_CASE("dataset csv and json round-trip including invalid cells") {
    const auto dir = temp_dir("dataset");
    const auto d = sample_dataset(5, 3);

    write_dataset_csv((dir / "d.csv").string(), d);
    const auto from_csv = read_dataset_csv((dir / "d.csv").string());
    write_dataset_json((dir / "d.json").string(), d);
    const auto from_json = read_dataset_json((dir / "d.json").string());

    for (const auto* back : {&from_csv, &from_json}) {
        REQUIRE(back->rows.size() == d.rows.size());
        for (std::size_t i = 0; i < d.rows.size(); ++i) {
            CHECK(back->rows[i].window_id == d.rows[i].window_id);
            CHECK(back->rows[i].label == d.rows[i].label);
            for (int f = 0; f < kFeatureCount; ++f) {
                REQUIRE(back->rows[i].features.valid[f] == d.rows[i].features.valid[f]);
                if (d.rows[i].features.valid[f]) {
                    CHECK(back->rows[i].features.value[f] == d.rows[i].features.value[f]);
                }
            }
        }
    }
}

TEST_CASE("dataset csv requires the full header") {
    const auto dir = temp_dir("dataset_err");
    spit(dir / "short.csv", "window_id,label,mean_hr\n0,1,60\n");
    CHECK_THROWS_AS(read_dataset_csv((dir / "short.csv").string()), ParseError);

    // missing label column specifically
    std::string no_label = "window_id";
    for (int f = 0; f < kFeatureCount; ++f) no_label += "," + std::string(feature_name(f));
    spit(dir / "nolabel.csv", no_label + "\n");
    CHECK_THROWS_AS(read_dataset_csv((dir / "nolabel.csv").string()), ParseError);
}

TEST_CASE("classifier model files round-trip predictions") {
    const auto dir = temp_dir("models");
    Rng rng(8);
    DataMatrix data;
    data.n_classes = 3;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 15; ++i) {
            data.rows.push_back({rng.gaussian(3.0 * c, 1.0), rng.gaussian(-2.0 * c, 1.0)});
            data.labels.push_back(c);
        }
    }
    const auto knn = KnnClassifier::train(data, 3);
    const auto nb = NaiveBayesClassifier::train(data);
    const auto dt = DecisionTreeClassifier::train(data, 6, 1);
    NeuralNetOptions nn_opts;
    nn_opts.epochs = 150;
    nn_opts.seed = 4;
    const auto nn = NeuralNetClassifier::train(data, nn_opts);
    SvmOptions svm_opts;
    svm_opts.seed = 4;
    const auto svm = LinearSvmClassifier::train(data, svm_opts);

    ModelJson::save_knn((dir / "knn.json").string(), knn);
    ModelJson::save_naive_bayes((dir / "nb.json").string(), nb);
    ModelJson::save_decision_tree((dir / "dt.json").string(), dt);
    ModelJson::save_neural_net((dir / "nn.json").string(), nn);
    ModelJson::save_svm((dir / "svm.json").string(), svm);

    const auto knn2 = ModelJson::load_knn((dir / "knn.json").string());
    const auto nb2 = ModelJson::load_naive_bayes((dir / "nb.json").string());
    const auto dt2 = ModelJson::load_decision_tree((dir / "dt.json").string());
    const auto nn2 = ModelJson::load_neural_net((dir / "nn.json").string());
    const auto svm2 = ModelJson::load_svm((dir / "svm.json").string());

    for (int i = 0; i < 40; ++i) {
        const std::vector<double> q = {rng.uniform(-4.0, 10.0), rng.uniform(-8.0, 4.0)};
        CHECK(knn.predict(q) == knn2.predict(q));
        CHECK(nb.predict(q) == nb2.predict(q));
        CHECK(dt.predict(q) == dt2.predict(q));
        CHECK(nn.predict(q) == nn2.predict(q));
        CHECK(svm.predict(q) == svm2.predict(q));
    }

    CHECK_THROWS_AS(ModelJson::load_svm((dir / "knn.json").string()), Error);
}

TEST_CASE("pipeline config round-trips losslessly through JSON") {
    PipelineConfig c;
    c.window_seconds = 123.5;
    c.seed = 0xDEADBEEF;
    c.nn_lr = 0.037;
    c.svm_lambda = 3e-4;
    c.top_k = 5;
    c.no_normality_gate = true;
    c.welch_segment = 128;
    const auto back = PipelineConfig::from_json_string(c.to_json_string());
    CHECK(back.to_json_string() == c.to_json_string());
    CHECK(back.window_seconds == c.window_seconds);
    CHECK(back.seed == c.seed);
    CHECK(back.nn_lr == c.nn_lr);
    CHECK(back.svm_lambda == c.svm_lambda);
}

TEST_CASE("cli synth -> extract -> select -> eval pipeline") {
    const auto dir = temp_dir("pipeline");
    const auto synth_dir = (dir / "synth").string();

    CHECK(run_cli({"--seed", "7", "synth", "--out", synth_dir}) == 0);
    CHECK(fs::exists(fs::path(synth_dir) / "manifest.csv"));
    CHECK(fs::exists(fs::path(synth_dir) / "window_147.csv"));
    CHECK(fs::exists(fs::path(synth_dir) / "run_config.json"));

    const auto features = (dir / "features.csv").string();
    CHECK(run_cli({"extract", "--manifest", synth_dir + "/manifest.csv", "--out", features}) == 0);
    const auto dataset = read_dataset_csv(features);
    CHECK(dataset.rows.size() == 148);
    const auto hist = dataset.class_histogram();
    CHECK(hist[0] == 42);
    CHECK(hist[2] == 12);

    const auto weights = (dir / "weights.json").string();
    CHECK(run_cli({"select", "--features", features, "--out", weights, "--normality-csv",
                   (dir / "normality.csv").string()}) == 0);
    CHECK(fs::exists(weights));
    const auto normality_text = slurp(dir / "normality.csv");
    CHECK(normality_text.find("feature,class,chi2,df,alpha,critical,is_normal") == 0);

    const auto report_json = (dir / "report.json").string();
    const auto report_csv = (dir / "report.csv").string();
    CHECK(run_cli({"--seed", "7", "eval", "--features", features, "--case", "4", "--out",
                   report_json, "--csv", report_csv, "--nn-epochs", "300"}) == 0);
    const auto csv_text = slurp(report_csv);
    CHECK(csv_text.find("case,knn1,knn5,svm,nn,nb,dt,mean") == 0);
    CHECK(csv_text.find("\n4,") != std::string::npos);
}

TEST_CASE("cli extract honors include-partial and model saving works") {
    const auto dir = temp_dir("partial");
    std::ostringstream csv;
    csv << "rr_ms\n";
    for (int i = 0; i < 450; ++i) csv << (900.0 + (i % 7) * 30.0) << "\n";  // ~7 min
    spit(dir / "rec.csv", csv.str());

    CHECK(run_cli({"extract", "--input", (dir / "rec.csv").string(), "--out",
                   (dir / "full.csv").string()}) == 0);
    CHECK(run_cli({"extract", "--input", (dir / "rec.csv").string(), "--out",
                   (dir / "all.csv").string(), "--include-partial"}) == 0);
    const auto full = read_dataset_csv((dir / "full.csv").string());
    const auto all = read_dataset_csv((dir / "all.csv").string());
    CHECK(all.rows.size() == full.rows.size() + 1);  // the trailing partial

    // models-dir writes the six model files through the CLI
    const auto synth_dir = (dir / "synth").string();
    CHECK(run_cli({"--seed", "3", "synth", "--out", synth_dir}) == 0);
    CHECK(run_cli({"extract", "--manifest", synth_dir + "/manifest.csv", "--out",
                   (dir / "features.csv").string()}) == 0);
    CHECK(run_cli({"--seed", "3", "eval", "--features", (dir / "features.csv").string(),
                   "--case", "0", "--nn-epochs", "50", "--models-dir",
                   (dir / "models").string(), "--out", (dir / "r.json").string()}) == 0);
    for (const char* name : {"knn1", "knn5", "svm", "nn", "nb", "dt"}) {
        CHECK(fs::exists(dir / "models" / (std::string(name) + ".json")));
    }
    const auto knn = ModelJson::load_knn((dir / "models" / "knn1.json").string());
    CHECK(knn.k() == 1);
}

TEST_CASE("cli trend fits points and writes reports") {
    const auto dir = temp_dir("trend");
    std::ostringstream csv;
    csv << "t_s,hr_bpm\n";
    for (double t = 0.0; t <= 3000.0; t += 30.0) {
        csv << t << "," << 100.0 + 0.02 * t - 0.000004 * t * t << "\n";
    }
    spit(dir / "hr.csv", csv.str());
    CHECK(run_cli({"trend", "--input", (dir / "hr.csv").string(), "--degree", "2", "--out",
                   (dir / "trend.json").string(), "--curve", (dir / "curve.csv").string(),
                   "--at", "1500"}) == 0);
    CHECK(slurp(dir / "trend.json").find("\"degree\": 2") != std::string::npos);
    CHECK(slurp(dir / "curve.csv").find("t_s,hr_bpm") == 0);
}

TEST_CASE("cli error surfaces use the documented exit codes") {
    const auto dir = temp_dir("cli_err");
    // usage: unknown case id
    spit(dir / "f.csv", "window_id,label,x\n");
    CHECK(run_cli({"eval", "--features", (dir / "f.csv").string(), "--case", "9"}) == 2);
    // usage: bad flag
    CHECK(run_cli({"eval", "--no-such-flag"}) == 2);
    // data: missing file
    CHECK(run_cli({"select", "--features", (dir / "missing.csv").string()}) == 1);
    // data: malformed row -> ParseError -> exit 1
    spit(dir / "bad_rr.csv", "t_ms,rr_ms\n0,800\n1,not_a_number\n");
    CHECK(run_cli({"extract", "--input", (dir / "bad_rr.csv").string(), "--out",
                   (dir / "out.csv").string()}) == 1);
    // data: unreadable --config -> exit 1, not a crash
    spit(dir / "broken.json", "{not json");
    CHECK(run_cli({"--config", (dir / "broken.json").string(), "synth", "--out",
                   (dir / "s").string()}) == 1);
}

TEST_CASE("cli select rejects identically-distributed features with a message") {
    const auto dir = temp_dir("cli_ident");
    LabeledDataset d;
    int id = 0;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < 12; ++i) {
            DatasetRow row;
            row.window_id = id++;
            row.label = static_cast<ExerciseState>(c);
            for (int f = 0; f < kFeatureCount; ++f) {
                row.features.set(static_cast<FeatureId>(f), static_cast<double>(i));
            }
            d.rows.push_back(row);
        }
    }
    write_dataset_csv((dir / "ident.csv").string(), d);
    CHECK(run_cli({"select", "--features", (dir / "ident.csv").string(), "--out",
                   (dir / "w.json").string(), "--no-normality-gate"}) == 1);
}

TEST_CASE("constant recording extracts zeros with invalid nonlinear flags") {
    const auto dir = temp_dir("const_extract");
    std::ostringstream csv;
    csv << "rr_ms\n";
    for (int i = 0; i < 320; ++i) csv << "1000\n";
    spit(dir / "flat.csv", csv.str());
    CHECK(run_cli({"extract", "--input", (dir / "flat.csv").string(), "--out",
                   (dir / "flat_features.csv").string()}) == 0);
    const auto d = read_dataset_csv((dir / "flat_features.csv").string());
    REQUIRE(d.rows.size() == 1);
    const auto& fv = d.rows[0].features;
    CHECK(fv[FeatureId::Sdnn] == 0.0);
    CHECK(fv[FeatureId::Rmssd] == 0.0);
    CHECK(fv[FeatureId::Tp] == 0.0);
    CHECK_FALSE(fv.is_valid(FeatureId::LfHf));
    CHECK_FALSE(fv.is_valid(FeatureId::DfaAlpha1));
    CHECK_FALSE(fv.is_valid(FeatureId::ApEn));
    CHECK_FALSE(fv.is_valid(FeatureId::SampEn));
}
