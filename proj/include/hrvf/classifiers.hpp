#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hrvf/types.hpp"

namespace hrvf {

/// Dense numeric view used by the classifiers: one row per window,
/// restricted to the active feature subset, no missing values.
struct DataMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // class codes
    int n_classes = kStateCount;

    std::size_t size() const { return rows.size(); }
    std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// Per-feature z-score parameters, fit on training data only.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;  // sd floored at 1e-12 -> 1.0

    static Standardizer fit(const std::vector<std::vector<double>>& rows);
    std::vector<double> transform(std::span<const double> row) const;
    std::vector<std::vector<double>> transform_all(const std::vector<std::vector<double>>& rows) const;
};

/// k-nearest-neighbors on z-scored features under Euclidean distance.
/// Majority vote; a vote tie goes to the tied class with the nearest
/// single neighbor (then the lower row index).
class KnnClassifier {
public:
    static KnnClassifier train(const DataMatrix& data, int k);
    int predict(std::span<const double> raw) const;

    int k() const { return k_; }
    const Standardizer& scaler() const { return scaler_; }

private:
    int k_ = 1;
    int n_classes_ = 0;
    Standardizer scaler_;
    std::vector<std::vector<double>> points_;  // standardized
    std::vector<int> labels_;

    friend struct ModelJson;
};

/// Gaussian naive Bayes: class priors from frequencies, per-class
/// per-feature normal likelihoods with variances floored at 1e-9.
/// Posterior ties break toward the lower class code.
class NaiveBayesClassifier {
public:
    static NaiveBayesClassifier train(const DataMatrix& data);
    int predict(std::span<const double> raw) const;

private:
    int n_classes_ = 0;
    Standardizer scaler_;
    std::vector<double> log_prior_;
    std::vector<std::vector<double>> mean_;      // [class][feature]
    std::vector<std::vector<double>> variance_;  // floored

    friend struct ModelJson;
};

/// CART decision tree: binary axis-aligned splits minimizing weighted
/// Gini impurity, deterministic tie-breaks (lowest feature index, then
/// lowest threshold), leaves predict the majority class.
class DecisionTreeClassifier {
public:
    struct Node {
        int feature = -1;       // -1: leaf
        double threshold = 0.0; // go left when x[feature] <= threshold
        int left = -1;
        int right = -1;
        int leaf_class = -1;
    };

    static DecisionTreeClassifier train(const DataMatrix& data, int max_depth = 8, int min_leaf = 2);
    int predict(std::span<const double> raw) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    int depth() const;

private:
    Standardizer scaler_;
    std::vector<Node> nodes_;
    int root_ = -1;

    friend struct ModelJson;
};

struct NeuralNetOptions {
    int hidden_units = 16;
    int epochs = 2000;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
};

/// One hidden layer (logistic), softmax output, mean cross-entropy loss,
/// full-batch gradient descent. Deterministic for a fixed seed.
class NeuralNetClassifier {
public:
    struct Gradients {
        std::vector<double> w1, b1, w2, b2;
    };

    static NeuralNetClassifier train(const DataMatrix& data, const NeuralNetOptions& opts);
    int predict(std::span<const double> raw) const;

    /// Mean cross-entropy over (rows, labels) and, when grad != nullptr,
    /// its analytic gradient. Rows must already be standardized. Public so
    /// the gradients can be checked against finite differences.
    double loss_and_gradient(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels, Gradients* grad) const;

    double final_loss() const { return final_loss_; }

    // Parameters are exposed for gradient verification.
    int input_dim = 0;
    int hidden = 0;
    int n_classes = 0;
    std::vector<double> w1;  // [hidden][input]
    std::vector<double> b1;  // [hidden]
    std::vector<double> w2;  // [classes][hidden]
    std::vector<double> b2;  // [classes]

    /// Fresh random-initialized network (the state training starts from).
    static NeuralNetClassifier initialize(int input_dim, int hidden, int n_classes, std::uint64_t seed);

    const Standardizer& scaler() const { return scaler_; }

private:
    Standardizer scaler_;
    double final_loss_ = 0.0;

    friend struct ModelJson;
};

struct SvmOptions {
    int epochs = 200;
    double learning_rate = 0.1;
    double regularization = 1e-3;
    std::uint64_t seed = 0;
};

/// Linear one-vs-rest hinge-loss classifiers trained by subgradient
/// descent over a seeded per-epoch shuffle; prediction takes the largest
/// margin. Bias terms are unregularized.
class LinearSvmClassifier {
public:
    static LinearSvmClassifier train(const DataMatrix& data, const SvmOptions& opts);
    int predict(std::span<const double> raw) const;

    double margin(std::span<const double> raw, int cls) const;

private:
    int n_classes_ = 0;
    Standardizer scaler_;
    std::vector<std::vector<double>> weights_;  // [class][feature]
    std::vector<double> bias_;

    friend struct ModelJson;
};

}  // namespace hrvf
