#include "hrvf/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hrvf/rng.hpp"

namespace hrvf {

namespace {

void require_rows(const DataMatrix& data) {
    if (data.rows.empty()) throw EmptyTrainingSet("training set is empty");
    if (data.labels.size() != data.rows.size()) {
        throw DimensionMismatch("row/label count mismatch");
    }
}

}  // namespace

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
    Standardizer s;
    if (rows.empty()) return s;
    const std::size_t d = rows.front().size();
    s.mean.assign(d, 0.0);
    s.scale.assign(d, 1.0);
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
    }
    for (double& m : s.mean) m /= static_cast<double>(rows.size());
    std::vector<double> ss(d, 0.0);
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < d; ++j) {
            const double dv = row[j] - s.mean[j];
            ss[j] += dv * dv;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(ss[j] / static_cast<double>(rows.size()));
        s.scale[j] = sd < 1e-12 ? 1.0 : sd;
    }
    return s;
}

std::vector<double> Standardizer::transform(std::span<const double> row) const {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / scale[j];
    return out;
}

std::vector<std::vector<double>> Standardizer::transform_all(
    const std::vector<std::vector<double>>& rows) const {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(transform(row));
    return out;
}

// ---------------------------------------------------------------- kNN

KnnClassifier KnnClassifier::train(const DataMatrix& data, int k) {
    require_rows(data);
    if (k < 1 || static_cast<std::size_t>(k) > data.rows.size()) {
        throw Error("k must be in [1, training size]");
    }
    KnnClassifier m;
    m.k_ = k;
    m.n_classes_ = data.n_classes;
    m.scaler_ = Standardizer::fit(data.rows);
    m.points_ = m.scaler_.transform_all(data.rows);
    m.labels_ = data.labels;
    return m;
}

int KnnClassifier::predict(std::span<const double> raw) const {
    const std::vector<double> q = scaler_.transform(raw);
    std::vector<std::pair<double, std::size_t>> dist(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double d = points_[i][j] - q[j];
            d2 += d * d;
        }
        dist[i] = {d2, i};
    }
    std::sort(dist.begin(), dist.end());  // distance, then row index

    std::vector<int> votes(n_classes_, 0);
    for (int i = 0; i < k_; ++i) ++votes[labels_[dist[i].second]];
    const int top = *std::max_element(votes.begin(), votes.end());

    // tie: the tied class owning the nearest single neighbor wins
    for (int i = 0; i < k_; ++i) {
        const int cls = labels_[dist[i].second];
        if (votes[cls] == top) return cls;
    }
    return labels_[dist[0].second];
}

// ------------------------------------------------------- naive Bayes

NaiveBayesClassifier NaiveBayesClassifier::train(const DataMatrix& data) {
    require_rows(data);
    NaiveBayesClassifier m;
    m.n_classes_ = data.n_classes;
    m.scaler_ = Standardizer::fit(data.rows);
    const auto rows = m.scaler_.transform_all(data.rows);
    const std::size_t d = rows.front().size();

    std::vector<int> count(m.n_classes_, 0);
    m.mean_.assign(m.n_classes_, std::vector<double>(d, 0.0));
    m.variance_.assign(m.n_classes_, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int c = data.labels[i];
        ++count[c];
        for (std::size_t j = 0; j < d; ++j) m.mean_[c][j] += rows[i][j];
    }
    for (int c = 0; c < m.n_classes_; ++c) {
        if (count[c] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) m.mean_[c][j] /= count[c];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int c = data.labels[i];
        for (std::size_t j = 0; j < d; ++j) {
            const double dv = rows[i][j] - m.mean_[c][j];
            m.variance_[c][j] += dv * dv;
        }
    }
    m.log_prior_.assign(m.n_classes_, -std::numeric_limits<double>::infinity());
    for (int c = 0; c < m.n_classes_; ++c) {
        if (count[c] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            m.variance_[c][j] = std::max(m.variance_[c][j] / count[c], 1e-9);
        }
        m.log_prior_[c] =
            std::log(static_cast<double>(count[c]) / static_cast<double>(rows.size()));
    }
    return m;
}

int NaiveBayesClassifier::predict(std::span<const double> raw) const {
    const std::vector<double> x = scaler_.transform(raw);
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_classes_; ++c) {
        if (!std::isfinite(log_prior_[c])) continue;
        double score = log_prior_[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = variance_[c][j];
            const double dv = x[j] - mean_[c][j];
            score -= 0.5 * (std::log(2.0 * 3.141592653589793 * v) + dv * dv / v);
        }
        if (score > best_score) {  // strict: ties keep the lower class code
            best_score = score;
            best = c;
        }
    }
    return best;
}

// ----------------------------------------------------- decision tree

namespace {

double gini(const std::vector<int>& counts, int total) {
    if (total == 0) return 0.0;
    double g = 1.0;
    for (int c : counts) {
        const double p = static_cast<double>(c) / total;
        g -= p * p;
    }
    return g;
}

int majority(const std::vector<int>& counts) {
    int best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[best]) best = static_cast<int>(c);  // tie: lower code
    }
    return best;
}

}  // namespace

DecisionTreeClassifier DecisionTreeClassifier::train(const DataMatrix& data, int max_depth,
                                                     int min_leaf) {
    require_rows(data);
    DecisionTreeClassifier m;
    m.scaler_ = Standardizer::fit(data.rows);
    const auto rows = m.scaler_.transform_all(data.rows);
    const std::size_t d = rows.front().size();
    const int n_classes = data.n_classes;

    std::vector<int> all(rows.size());
    std::iota(all.begin(), all.end(), 0);

    // returns the node index in m.nodes_
    auto build = [&](auto&& self, std::vector<int> idx, int depth) -> int {
        std::vector<int> counts(n_classes, 0);
        for (int i : idx) ++counts[data.labels[i]];
        const int total = static_cast<int>(idx.size());
        const double node_gini = gini(counts, total);

        auto make_leaf = [&]() {
            Node leaf;
            leaf.leaf_class = majority(counts);
            m.nodes_.push_back(leaf);
            return static_cast<int>(m.nodes_.size()) - 1;
        };
        if (node_gini == 0.0 || depth >= max_depth || total < 2 * min_leaf) return make_leaf();

        int best_feature = -1;
        double best_threshold = 0.0;
        // zero-gain splits are allowed (the XOR pattern needs one at the
        // root); recursion still terminates because children shrink
        double best_score = std::numeric_limits<double>::infinity();

        std::vector<int> order(idx);
        for (std::size_t f = 0; f < d; ++f) {
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (rows[a][f] != rows[b][f]) return rows[a][f] < rows[b][f];
                return a < b;
            });
            std::vector<int> left_counts(n_classes, 0);
            for (int split = 1; split < total; ++split) {
                ++left_counts[data.labels[order[split - 1]]];
                if (rows[order[split - 1]][f] == rows[order[split]][f]) continue;
                const int nl = split, nr = total - split;
                if (nl < min_leaf || nr < min_leaf) continue;
                std::vector<int> right_counts(n_classes, 0);
                for (int c = 0; c < n_classes; ++c) right_counts[c] = counts[c] - left_counts[c];
                const double score = (nl * gini(left_counts, nl) + nr * gini(right_counts, nr)) /
                                     static_cast<double>(total);
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold =
                        0.5 * (rows[order[split - 1]][f] + rows[order[split]][f]);
                }
            }
        }
        if (best_feature < 0) return make_leaf();

        std::vector<int> left_idx, right_idx;
        for (int i : idx) {
            (rows[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
        }
        const int left = self(self, std::move(left_idx), depth + 1);
        const int right = self(self, std::move(right_idx), depth + 1);
        Node node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        m.nodes_.push_back(node);
        return static_cast<int>(m.nodes_.size()) - 1;
    };
    m.root_ = build(build, std::move(all), 0);
    return m;
}

int DecisionTreeClassifier::predict(std::span<const double> raw) const {
    const std::vector<double> x = scaler_.transform(raw);
    int at = root_;
    while (nodes_[at].feature >= 0) {
        at = x[nodes_[at].feature] <= nodes_[at].threshold ? nodes_[at].left : nodes_[at].right;
    }
    return nodes_[at].leaf_class;
}

int DecisionTreeClassifier::depth() const {
    // recompute by walking; trees are small
    auto walk = [&](auto&& self, int at) -> int {
        if (nodes_[at].feature < 0) return 0;
        return 1 + std::max(self(self, nodes_[at].left), self(self, nodes_[at].right));
    };
    return root_ < 0 ? 0 : walk(walk, root_);
}

// ----------------------------------------------------- neural network

NeuralNetClassifier NeuralNetClassifier::initialize(int input_dim, int hidden, int n_classes,
                                                    std::uint64_t seed) {
    NeuralNetClassifier m;
    m.input_dim = input_dim;
    m.hidden = hidden;
    m.n_classes = n_classes;
    Rng rng(seed);
    const double s1 = 1.0 / std::sqrt(static_cast<double>(std::max(input_dim, 1)));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(std::max(hidden, 1)));
    m.w1.resize(static_cast<std::size_t>(hidden) * input_dim);
    m.b1.assign(hidden, 0.0);
    m.w2.resize(static_cast<std::size_t>(n_classes) * hidden);
    m.b2.assign(n_classes, 0.0);
    for (double& w : m.w1) w = rng.uniform(-s1, s1);
    for (double& w : m.w2) w = rng.uniform(-s2, s2);
    return m;
}

double NeuralNetClassifier::loss_and_gradient(const std::vector<std::vector<double>>& rows,
                                              const std::vector<int>& labels,
                                              Gradients* grad) const {
    const std::size_t n = rows.size();
    if (grad) {
        grad->w1.assign(w1.size(), 0.0);
        grad->b1.assign(b1.size(), 0.0);
        grad->w2.assign(w2.size(), 0.0);
        grad->b2.assign(b2.size(), 0.0);
    }
    double loss = 0.0;
    std::vector<double> h(hidden), logits(n_classes), prob(n_classes), dh(hidden);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = rows[i];
        for (int u = 0; u < hidden; ++u) {
            double z = b1[u];
            const double* wrow = &w1[static_cast<std::size_t>(u) * input_dim];
            for (int j = 0; j < input_dim; ++j) z += wrow[j] * x[j];
            h[u] = 1.0 / (1.0 + std::exp(-z));
        }
        double zmax = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < n_classes; ++c) {
            double z = b2[c];
            const double* wrow = &w2[static_cast<std::size_t>(c) * hidden];
            for (int u = 0; u < hidden; ++u) z += wrow[u] * h[u];
            logits[c] = z;
            zmax = std::max(zmax, z);
        }
        double denom = 0.0;
        for (int c = 0; c < n_classes; ++c) {
            prob[c] = std::exp(logits[c] - zmax);
            denom += prob[c];
        }
        for (int c = 0; c < n_classes; ++c) prob[c] /= denom;
        loss += -std::log(std::max(prob[labels[i]], 1e-300));

        if (!grad) continue;
        std::fill(dh.begin(), dh.end(), 0.0);
        for (int c = 0; c < n_classes; ++c) {
            const double delta = prob[c] - (c == labels[i] ? 1.0 : 0.0);
            double* gw = &grad->w2[static_cast<std::size_t>(c) * hidden];
            const double* wrow = &w2[static_cast<std::size_t>(c) * hidden];
            for (int u = 0; u < hidden; ++u) {
                gw[u] += delta * h[u];
                dh[u] += delta * wrow[u];
            }
            grad->b2[c] += delta;
        }
        for (int u = 0; u < hidden; ++u) {
            const double dz = dh[u] * h[u] * (1.0 - h[u]);
            double* gw = &grad->w1[static_cast<std::size_t>(u) * input_dim];
            for (int j = 0; j < input_dim; ++j) gw[j] += dz * x[j];
            grad->b1[u] += dz;
        }
    }
    const double inv = 1.0 / static_cast<double>(n);
    if (grad) {
        for (double& g : grad->w1) g *= inv;
        for (double& g : grad->b1) g *= inv;
        for (double& g : grad->w2) g *= inv;
        for (double& g : grad->b2) g *= inv;
    }
    return loss * inv;
}

NeuralNetClassifier NeuralNetClassifier::train(const DataMatrix& data,
                                               const NeuralNetOptions& opts) {
    require_rows(data);
    if (opts.hidden_units < 1) throw Error("hidden_units must be >= 1");
    NeuralNetClassifier m = initialize(static_cast<int>(data.dim()), opts.hidden_units,
                                       data.n_classes, opts.seed);
    m.scaler_ = Standardizer::fit(data.rows);
    const auto rows = m.scaler_.transform_all(data.rows);

    Gradients g;
    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        m.final_loss_ = m.loss_and_gradient(rows, data.labels, &g);
        for (std::size_t i = 0; i < m.w1.size(); ++i) m.w1[i] -= opts.learning_rate * g.w1[i];
        for (std::size_t i = 0; i < m.b1.size(); ++i) m.b1[i] -= opts.learning_rate * g.b1[i];
        for (std::size_t i = 0; i < m.w2.size(); ++i) m.w2[i] -= opts.learning_rate * g.w2[i];
        for (std::size_t i = 0; i < m.b2.size(); ++i) m.b2[i] -= opts.learning_rate * g.b2[i];
    }
    if (opts.epochs == 0) m.final_loss_ = m.loss_and_gradient(rows, data.labels, nullptr);
    return m;
}

int NeuralNetClassifier::predict(std::span<const double> raw) const {
    std::vector<double> x = scaler_.mean.empty() ? std::vector<double>(raw.begin(), raw.end())
                                                 : scaler_.transform(raw);
    std::vector<double> h(hidden);
    for (int u = 0; u < hidden; ++u) {
        double z = b1[u];
        const double* wrow = &w1[static_cast<std::size_t>(u) * input_dim];
        for (int j = 0; j < input_dim; ++j) z += wrow[j] * x[j];
        h[u] = 1.0 / (1.0 + std::exp(-z));
    }
    int best = 0;
    double best_z = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_classes; ++c) {
        double z = b2[c];
        const double* wrow = &w2[static_cast<std::size_t>(c) * hidden];
        for (int u = 0; u < hidden; ++u) z += wrow[u] * h[u];
        if (z > best_z) {
            best_z = z;
            best = c;
        }
    }
    return best;
}

// -------------------------------------------------------- linear SVM

LinearSvmClassifier LinearSvmClassifier::train(const DataMatrix& data, const SvmOptions& opts) {
    require_rows(data);
    bool two_classes = false;
    for (std::size_t i = 1; i < data.labels.size(); ++i) {
        if (data.labels[i] != data.labels[0]) {
            two_classes = true;
            break;
        }
    }
    if (!two_classes) throw Error("SVM training needs at least two classes");

    LinearSvmClassifier m;
    m.n_classes_ = data.n_classes;
    m.scaler_ = Standardizer::fit(data.rows);
    const auto rows = m.scaler_.transform_all(data.rows);
    const std::size_t d = rows.front().size();
    m.weights_.assign(m.n_classes_, std::vector<double>(d, 0.0));
    m.bias_.assign(m.n_classes_, 0.0);

    Rng rng(opts.seed);
    std::vector<int> order(rows.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        rng.shuffle(order);
        for (int i : order) {
            for (int c = 0; c < m.n_classes_; ++c) {
                const double y = data.labels[i] == c ? 1.0 : -1.0;
                auto& w = m.weights_[c];
                double margin = m.bias_[c];
                for (std::size_t j = 0; j < d; ++j) margin += w[j] * rows[i][j];
                margin *= y;
                const double shrink = 1.0 - opts.learning_rate * opts.regularization;
                for (std::size_t j = 0; j < d; ++j) w[j] *= shrink;
                if (margin < 1.0) {
                    for (std::size_t j = 0; j < d; ++j) {
                        w[j] += opts.learning_rate * y * rows[i][j];
                    }
                    m.bias_[c] += opts.learning_rate * y;  // bias unregularized
                }
            }
        }
    }
    return m;
}

double LinearSvmClassifier::margin(std::span<const double> raw, int cls) const {
    const std::vector<double> x = scaler_.transform(raw);
    double z = bias_[cls];
    for (std::size_t j = 0; j < x.size(); ++j) z += weights_[cls][j] * x[j];
    return z;
}

int LinearSvmClassifier::predict(std::span<const double> raw) const {
    const std::vector<double> x = scaler_.transform(raw);
    int best = 0;
    double best_z = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n_classes_; ++c) {
        double z = bias_[c];
        for (std::size_t j = 0; j < x.size(); ++j) z += weights_[c][j] * x[j];
        if (z > best_z) {
            best_z = z;
            best = c;
        }
    }
    return best;
}

}  // namespace hrvf
