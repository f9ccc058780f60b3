#include <doctest.h>

#include <cmath>

#include "hrvf/classifiers.hpp"
#include "hrvf/rng.hpp"

using namespace hrvf;

namespace {

DataMatrix one_dim(std::vector<double> xs, std::vector<int> ys, int classes = 5) {
    DataMatrix d;
    d.n_classes = classes;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d.rows.push_back({xs[i]});
        d.labels.push_back(ys[i]);
    }
    return d;
}

DataMatrix blobs_2d(Rng& rng, int per_class, double separation) {
    DataMatrix d;
    d.n_classes = 2;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < per_class; ++i) {
            d.rows.push_back({rng.gaussian(c * separation, 1.0), rng.gaussian(c * separation, 1.0)});
            d.labels.push_back(c);
        }
    }
    return d;
}

double training_accuracy(const DataMatrix& d, auto&& predict) {
    int correct = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (predict(d.rows[i]) == d.labels[i]) ++correct;
    }
    return 100.0 * correct / static_cast<double>(d.size());
}

}  // namespace

TEST_CASE("knn-1 hand-checked distances") {
    const auto d = one_dim({0.0, 1.0, 10.0}, {0, 0, 1});
    const auto m = KnnClassifier::train(d, 1);
    CHECK(m.predict(std::vector<double>{0.4}) == 0);
    CHECK(m.predict(std::vector<double>{10.0}) == 1);  // exact training row
}

TEST_CASE("knn-3 majority vote") {
    const auto d = one_dim({0.0, 1.0, 10.0}, {0, 0, 1});
    const auto m = KnnClassifier::train(d, 3);
    CHECK(m.predict(std::vector<double>{0.4}) == 0);  // 2-of-3
}

TEST_CASE("knn vote ties go to the nearest neighbor's class") {
    const auto d = one_dim({0.0, 1.0, 10.0, 11.0}, {0, 0, 1, 1});
    const auto m = KnnClassifier::train(d, 4);  // 2-2 tie
    CHECK(m.predict(std::vector<double>{0.4}) == 0);
    CHECK(m.predict(std::vector<double>{10.4}) == 1);
}

TEST_CASE("knn guards") {
    CHECK_THROWS_AS(KnnClassifier::train(DataMatrix{}, 1), EmptyTrainingSet);
    const auto d = one_dim({0.0, 1.0}, {0, 1});
    CHECK_THROWS_AS(KnnClassifier::train(d, 3), Error);
}

TEST_CASE("naive Bayes picks the closer class mean") {
    Rng rng(41);
    DataMatrix d;
    d.n_classes = 2;
    for (int i = 0; i < 200; ++i) {
        d.rows.push_back({rng.gaussian(0.0, 1.0)});
        d.labels.push_back(0);
        d.rows.push_back({rng.gaussian(10.0, 1.0)});
        d.labels.push_back(1);
    }
    const auto m = NaiveBayesClassifier::train(d);
    CHECK(m.predict(std::vector<double>{1.0}) == 0);
    CHECK(m.predict(std::vector<double>{9.0}) == 1);
}

TEST_CASE("naive Bayes midpoint tie goes to the lower class code") {
    // symmetric two-point classes; the query at the exact midpoint scores
    // identically under both classes
    const auto d = one_dim({-1.0, 1.0, 3.0, 5.0}, {0, 0, 1, 1}, 2);
    const auto m = NaiveBayesClassifier::train(d);
    CHECK(m.predict(std::vector<double>{2.0}) == 0);
}

TEST_CASE("naive Bayes floors zero variances instead of crashing") {
    const auto d = one_dim({1.0, 1.0, 2.0, 2.0}, {0, 0, 1, 1}, 2);
    const auto m = NaiveBayesClassifier::train(d);
    CHECK(m.predict(std::vector<double>{1.0}) == 0);
    CHECK(m.predict(std::vector<double>{2.0}) == 1);
}

TEST_CASE("decision tree separates 1-D classes with one split") {
    const auto d = one_dim({0.0, 1.0, 2.0, 10.0, 11.0, 12.0}, {0, 0, 0, 1, 1, 1}, 2);
    const auto m = DecisionTreeClassifier::train(d, 8, 1);
    CHECK(m.depth() == 1);
    CHECK(training_accuracy(d, [&](const auto& x) { return m.predict(x); }) == 100.0);
}

TEST_CASE("decision tree on a pure dataset is a single leaf") {
    const auto d = one_dim({1.0, 2.0, 3.0}, {2, 2, 2});
    const auto m = DecisionTreeClassifier::train(d, 8, 1);
    CHECK(m.depth() == 0);
    CHECK(m.predict(std::vector<double>{99.0}) == 2);
}

TEST_CASE("decision tree needs depth 2 for XOR") {
    DataMatrix d;
    d.n_classes = 2;
    d.rows = {{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}};
    d.labels = {0, 0, 1, 1};

    const auto deep = DecisionTreeClassifier::train(d, 2, 1);
    CHECK(training_accuracy(d, [&](const auto& x) { return deep.predict(x); }) == 100.0);

    const auto shallow = DecisionTreeClassifier::train(d, 1, 1);
    CHECK(training_accuracy(d, [&](const auto& x) { return shallow.predict(x); }) <= 75.0);
}

TEST_CASE("neural net gradient matches central finite differences") {
    Rng rng(43);
    const int dim = 4, hidden = 5, classes = 3, rows = 12;
    std::vector<std::vector<double>> x(rows, std::vector<double>(dim));
    std::vector<int> y(rows);
    for (int i = 0; i < rows; ++i) {
        for (auto& v : x[i]) v = rng.gaussian();
        y[i] = static_cast<int>(rng.below(classes));
    }

    for (int point = 0; point < 20; ++point) {
        auto net = NeuralNetClassifier::initialize(dim, hidden, classes, 500 + point);
        NeuralNetClassifier::Gradients g;
        net.loss_and_gradient(x, y, &g);

        auto check_block = [&](std::vector<double>& params, const std::vector<double>& grads) {
            // probe a few entries of each block
            for (std::size_t idx = 0; idx < params.size(); idx += std::max<std::size_t>(1, params.size() / 5)) {
                const double eps = 1e-5;
                const double saved = params[idx];
                params[idx] = saved + eps;
                const double up = net.loss_and_gradient(x, y, nullptr);
                params[idx] = saved - eps;
                const double down = net.loss_and_gradient(x, y, nullptr);
                params[idx] = saved;
                const double fd = (up - down) / (2.0 * eps);
                const double denom = std::max({1.0, std::abs(fd), std::abs(grads[idx])});
                CHECK(std::abs(fd - grads[idx]) / denom <= 1e-4);
            }
        };
        check_block(net.w1, g.w1);
        check_block(net.b1, g.b1);
        check_block(net.w2, g.w2);
        check_block(net.b2, g.b2);
    }
}

TEST_CASE("neural net learns separable blobs") {
    int good = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(600 + seed);
        const auto d = blobs_2d(rng, 40, 6.0);
        NeuralNetOptions opts;
        opts.hidden_units = 8;
        opts.epochs = 2000;
        opts.learning_rate = 0.5;
        opts.seed = seed;
        DataMatrix d2 = d;
        d2.n_classes = 2;
        const auto m = NeuralNetClassifier::train(d2, opts);
        if (training_accuracy(d2, [&](const auto& x) { return m.predict(x); }) >= 95.0) ++good;
    }
    CHECK(good == 10);
}

TEST_CASE("zero training epochs means predictions from the initial weights") {
    Rng rng(44);
    auto d = blobs_2d(rng, 10, 4.0);
    NeuralNetOptions opts;
    opts.epochs = 0;
    opts.seed = 9;
    const auto trained = NeuralNetClassifier::train(d, opts);
    auto init = NeuralNetClassifier::initialize(2, opts.hidden_units, d.n_classes, 9);
    // same parameters as a fresh initialization
    for (std::size_t i = 0; i < trained.w1.size(); ++i) CHECK(trained.w1[i] == init.w1[i]);
    for (std::size_t i = 0; i < trained.w2.size(); ++i) CHECK(trained.w2[i] == init.w2[i]);
}

TEST_CASE("neural net training is deterministic for a fixed seed") {
    Rng rng(45);
    auto d = blobs_2d(rng, 20, 3.0);
    NeuralNetOptions opts;
    opts.epochs = 50;
    opts.seed = 77;
    const auto a = NeuralNetClassifier::train(d, opts);
    const auto b = NeuralNetClassifier::train(d, opts);
    CHECK(a.final_loss() == b.final_loss());
    for (std::size_t i = 0; i < a.w1.size(); ++i) CHECK(a.w1[i] == b.w1[i]);
}

TEST_CASE("svm separates well-separated blobs") {
    int good = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(700 + seed);
        const auto d = blobs_2d(rng, 40, 8.0);
        SvmOptions opts;
        opts.seed = seed;
        const auto m = LinearSvmClassifier::train(d, opts);
        if (training_accuracy(d, [&](const auto& x) { return m.predict(x); }) == 100.0) ++good;
    }
    CHECK(good == 10);
}

TEST_CASE("svm with one point per class separates them") {
    DataMatrix d;
    d.n_classes = 2;
    d.rows = {{0.0, 0.0}, {4.0, 4.0}};
    d.labels = {0, 1};
    const auto m = LinearSvmClassifier::train(d, {});
    CHECK(m.predict(std::vector<double>{-0.5, -0.5}) == 0);
    CHECK(m.predict(std::vector<double>{4.5, 4.5}) == 1);
}

TEST_CASE("standardization absorbs feature rescaling") {
    Rng rng(46);
    auto d = blobs_2d(rng, 30, 5.0);
    auto scaled = d;
    for (auto& row : scaled.rows) {
        row[0] *= 10.0;
        row[1] *= 0.1;
    }
    SvmOptions svm_opts;
    svm_opts.seed = 3;
    const auto svm_a = LinearSvmClassifier::train(d, svm_opts);
    const auto svm_b = LinearSvmClassifier::train(scaled, svm_opts);
    const auto knn_a = KnnClassifier::train(d, 3);
    const auto knn_b = KnnClassifier::train(scaled, 3);
    const auto nb_a = NaiveBayesClassifier::train(d);
    const auto nb_b = NaiveBayesClassifier::train(scaled);
    Rng probe_rng(47);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> q = {probe_rng.gaussian(2.5, 3.0), probe_rng.gaussian(2.5, 3.0)};
        const std::vector<double> q_scaled = {q[0] * 10.0, q[1] * 0.1};
        CHECK(svm_a.predict(q) == svm_b.predict(q_scaled));
        CHECK(knn_a.predict(q) == knn_b.predict(q_scaled));
        CHECK(nb_a.predict(q) == nb_b.predict(q_scaled));
    }
}
