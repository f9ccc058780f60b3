#include "hrvf/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace hrvf {

double erf_approx(double z) {
    if (z < 0.0) return -erf_approx(-z);
    // 1 - 1/(a0 + a1 z + ... + a6 z^6)^16
    static constexpr double a1 = 0.0705230784;
    static constexpr double a2 = 0.0422820123;
    static constexpr double a3 = 0.0092705272;
    static constexpr double a4 = 0.0001520143;
    static constexpr double a5 = 0.0002765672;
    static constexpr double a6 = 0.0000430638;
    const double poly =
        1.0 + z * (a1 + z * (a2 + z * (a3 + z * (a4 + z * (a5 + z * a6)))));
    double q = 1.0 / poly;  // reciprocal first so huge polys underflow to erf = 1
    q *= q;
    q *= q;
    q *= q;
    q *= q;  // ^16
    return 1.0 - q;
}

double normal_cdf_approx(double x, double mu, double sigma) {
    return 0.5 * (1.0 + erf_approx((x - mu) / (sigma * std::sqrt(2.0))));
}

namespace {

constexpr double kSigmaEqualTol = 1e-9;

void check_sigmas(const GaussianSummary& g1, const GaussianSummary& g2) {
    if (g1.sigma <= 0.0 || g2.sigma <= 0.0) {
        throw Error("Gaussian sigma must be positive");
    }
}

double log_density(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -std::log(sigma) - 0.5 * z * z;
}

}  // namespace

Intersections gaussian_intersections(const GaussianSummary& g1, const GaussianSummary& g2) {
    check_sigmas(g1, g2);
    const double s1 = g1.sigma, s2 = g2.sigma;
    const double m1 = g1.mu, m2 = g2.mu;
    const double smax = std::max(s1, s2);

    Intersections out;
    if (std::abs(s1 - s2) < kSigmaEqualTol * smax) {
        if (std::abs(m1 - m2) <= 1e-12 * smax) {
            out.kind = Intersections::Kind::Identical;
            return out;
        }
        out.kind = Intersections::Kind::SinglePoint;
        out.p1 = out.p2 = 0.5 * (m1 + m2);
        return out;
    }

    // equal-density quadratic; the discriminant is nonnegative whenever
    // the sigmas differ, since (s1^2-s2^2) and ln(s1/s2) share a sign
    const double diff = m1 - m2;
    const double disc = diff * diff + 2.0 * (s1 * s1 - s2 * s2) * std::log(s1 / s2);
    const double root = s1 * s2 * std::sqrt(std::max(disc, 0.0));
    const double denom = s1 * s1 - s2 * s2;
    const double base = m2 * s1 * s1 - m1 * s2 * s2;
    const double x1 = (base - root) / denom;
    const double x2 = (base + root) / denom;
    out.kind = Intersections::Kind::TwoPoints;
    out.p1 = std::min(x1, x2);
    out.p2 = std::max(x1, x2);
    return out;
}

double overlap_area(const GaussianSummary& g1, const GaussianSummary& g2) {
    const Intersections isec = gaussian_intersections(g1, g2);
    switch (isec.kind) {
        case Intersections::Kind::Identical:
            return 1.0;
        case Intersections::Kind::SinglePoint: {
            const double sigma = 0.5 * (g1.sigma + g2.sigma);
            return 2.0 * normal_cdf_approx(-std::abs(g1.mu - g2.mu) / 2.0, 0.0, sigma);
        }
        case Intersections::Kind::TwoPoints:
            break;
    }
    const double p1 = isec.p1, p2 = isec.p2;
    const double pad = std::max(g1.sigma, g2.sigma);

    // on each of the three intervals one density is uniformly the smaller;
    // probe in the interior and accumulate that density's mass
    auto smaller_is_g1 = [&](double probe) {
        return log_density(probe, g1.mu, g1.sigma) <= log_density(probe, g2.mu, g2.sigma);
    };
    auto cdf = [&](const GaussianSummary& g, double x) {
        return normal_cdf_approx(x, g.mu, g.sigma);
    };

    double area = 0.0;
    {
        const GaussianSummary& g = smaller_is_g1(p1 - pad) ? g1 : g2;
        area += cdf(g, p1);
    }
    {
        const GaussianSummary& g = smaller_is_g1(0.5 * (p1 + p2)) ? g1 : g2;
        area += cdf(g, p2) - cdf(g, p1);
    }
    {
        const GaussianSummary& g = smaller_is_g1(p2 + pad) ? g1 : g2;
        area += 1.0 - cdf(g, p2);
    }
    return std::clamp(area, 0.0, 1.0);
}

double overlap_area_fixed_form(const GaussianSummary& g1, const GaussianSummary& g2) {
    const Intersections isec = gaussian_intersections(g1, g2);
    if (isec.kind == Intersections::Kind::Identical) return 1.0;
    if (isec.kind == Intersections::Kind::SinglePoint) {
        const double sigma = 0.5 * (g1.sigma + g2.sigma);
        return 2.0 * normal_cdf_approx(-std::abs(g1.mu - g2.mu) / 2.0, 0.0, sigma);
    }
    const double p1 = isec.p1, p2 = isec.p2;
    auto cdf = [&](const GaussianSummary& g, double x) {
        return normal_cdf_approx(x, g.mu, g.sigma);
    };
    if (g1.sigma < g2.sigma) {
        return cdf(g1, p2) + (cdf(g2, p1) - cdf(g2, p2)) + (1.0 - cdf(g1, p1));
    }
    return cdf(g2, p1) + (cdf(g1, p2) - cdf(g1, p1)) + (1.0 - cdf(g2, p2));
}

std::vector<double> ahp_weights(const std::vector<std::vector<double>>& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) throw DimensionMismatch("comparison matrix is empty");
    for (const auto& row : matrix) {
        if (row.size() != n) throw DimensionMismatch("comparison matrix must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!(matrix[i][j] > 0.0)) {
                throw NonPositiveEntry("comparison entries must be positive");
            }
            if (std::abs(matrix[i][j] * matrix[j][i] - 1.0) > 1e-9) {
                throw NonReciprocal("matrix is not reciprocal at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            }
        }
    }
    std::vector<double> col_sum(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col_sum[j] += matrix[i][j];
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i] += matrix[i][j] / col_sum[j];
    }
    return w;
}

std::vector<std::pair<int, int>> canonical_pairs(int n_classes) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_classes; ++i) {
        for (int j = i + 1; j < n_classes; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
}

namespace {

std::vector<std::vector<double>> ratio_matrix(const std::vector<double>& r) {
    const std::size_t n = r.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = r[i] / r[j];
    }
    return m;
}

}  // namespace

std::vector<double> group_pair_weights(std::span<const int> class_sizes) {
    if (class_sizes.size() < 2) throw EmptyClass("need at least two classes");
    for (int g : class_sizes) {
        if (g <= 0) throw EmptyClass("class sizes must be positive");
    }
    std::vector<double> pair_sums;
    for (std::size_t i = 0; i < class_sizes.size(); ++i) {
        for (std::size_t j = i + 1; j < class_sizes.size(); ++j) {
            pair_sums.push_back(static_cast<double>(class_sizes[i] + class_sizes[j]));
        }
    }
    return ahp_weights(ratio_matrix(pair_sums));
}

std::vector<double> feature_pair_weights(std::span<const double> overlap_areas) {
    if (overlap_areas.empty()) throw DimensionMismatch("no overlap areas given");
    bool any_separable = false;
    std::vector<double> sep(overlap_areas.size());
    for (std::size_t j = 0; j < overlap_areas.size(); ++j) {
        const double a = overlap_areas[j];
        if (!(a >= 0.0 && a <= 1.0)) throw Error("overlap area out of [0, 1]");
        sep[j] = std::max(1.0 - a, 1e-12);  // a == 1: no separability, ~zero weight
        if (a < 1.0 - 1e-12) any_separable = true;
    }
    if (!any_separable) {
        throw AllFullyOverlapping("every feature fully overlaps for this class pair");
    }
    return ahp_weights(ratio_matrix(sep));
}

FeatureWeights final_feature_values(const std::vector<double>& pair_weights,
                                    const std::vector<std::vector<double>>& per_pair_feature_weights,
                                    int top_k) {
    const std::size_t q = pair_weights.size();
    if (per_pair_feature_weights.size() != q) {
        throw DimensionMismatch("pair weight count does not match per-pair weight vectors");
    }
    if (q == 0) throw DimensionMismatch("no pairs");
    const std::size_t m = per_pair_feature_weights.front().size();
    for (const auto& wk : per_pair_feature_weights) {
        if (wk.size() != m) throw DimensionMismatch("inconsistent feature counts across pairs");
    }

    const double g_total = std::accumulate(pair_weights.begin(), pair_weights.end(), 0.0);
    FeatureWeights out;
    out.omega.assign(m, 0.0);
    for (std::size_t k = 0; k < q; ++k) {
        const auto& wk = per_pair_feature_weights[k];
        const double f_total = std::accumulate(wk.begin(), wk.end(), 0.0);
        const double mix = pair_weights[k] / g_total;
        for (std::size_t j = 0; j < m; ++j) out.omega[j] += mix * (wk[j] / f_total);
    }

    out.ranking.resize(m);
    std::iota(out.ranking.begin(), out.ranking.end(), 0);
    std::stable_sort(out.ranking.begin(), out.ranking.end(),
                     [&](int a, int b) { return out.omega[a] > out.omega[b]; });
    const int k = std::clamp<int>(top_k, 1, static_cast<int>(m));
    out.selected.assign(out.ranking.begin(), out.ranking.begin() + k);
    return out;
}

std::vector<int> SelectionReport::selected_feature_ids() const {
    std::vector<int> ids;
    ids.reserve(weights.selected.size());
    for (int local : weights.selected) ids.push_back(ranked_features[local]);
    return ids;
}

double SelectionReport::omega_for(int feature_id) const {
    for (std::size_t i = 0; i < ranked_features.size(); ++i) {
        if (ranked_features[i] == feature_id) return weights.omega[i];
    }
    return -1.0;
}

SelectionReport rank_features(const LabeledDataset& dataset, const SelectionOptions& opts) {
    // per-class sample values for each feature
    std::map<int, std::vector<std::vector<double>>> by_class;  // class -> [feature][values]
    for (const auto& row : dataset.rows) {
        if (!row.label) continue;
        auto& cols = by_class[static_cast<int>(*row.label)];
        if (cols.empty()) cols.resize(kFeatureCount);
        for (int f = 0; f < kFeatureCount; ++f) {
            if (row.features.valid[f]) cols[f].push_back(row.features.value[f]);
        }
    }
    if (by_class.size() < 2) throw EmptyClass("feature ranking needs at least two labeled classes");

    std::vector<int> class_codes;
    std::vector<int> class_sizes;
    for (const auto& [code, cols] : by_class) {
        class_codes.push_back(code);
        int size = 0;
        for (const auto& row : dataset.rows) {
            if (row.label && static_cast<int>(*row.label) == code) ++size;
        }
        class_sizes.push_back(size);
    }
    const int n_classes = static_cast<int>(class_codes.size());

    SelectionReport report;
    report.classes_present = n_classes;

    // Gaussian summaries; a feature is usable when every class has enough
    // valid samples. Degenerate (constant) cells get a tiny sigma floor so
    // identical constants read as identical distributions.
    std::vector<std::vector<GaussianSummary>> summaries(kFeatureCount);
    std::vector<bool> usable(kFeatureCount, true);
    std::vector<bool> gate_ok(kFeatureCount, true);

    for (int f = 0; f < kFeatureCount; ++f) {
        for (int c = 0; c < n_classes; ++c) {
            const auto& values = by_class[class_codes[c]][f];
            if (values.size() < static_cast<std::size_t>(std::max(opts.min_samples_per_class, 2))) {
                usable[f] = false;
                break;
            }
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            double sigma = std::sqrt(ss / static_cast<double>(values.size() - 1));
            sigma = std::max(sigma, 1e-12 * std::max(std::abs(mean), 1.0));

            GaussianSummary g;
            g.mu = mean;
            g.sigma = sigma;
            g.n = static_cast<int>(values.size());
            g.feature_id = f;
            g.class_id = class_codes[c];
            summaries[f].push_back(g);

            if (values.size() >= 8) {
                FeatureNormality fn;
                fn.feature_id = f;
                fn.class_id = class_codes[c];
                fn.report = normality_test(values, opts.alpha);
                report.normality.push_back(fn);
                if (!fn.report.is_normal) gate_ok[f] = false;
            }
        }
    }

    for (int f = 0; f < kFeatureCount; ++f) {
        const bool in = usable[f] && (!opts.gate_excludes || gate_ok[f]);
        if (in) {
            report.ranked_features.push_back(f);
        } else {
            report.excluded_features.push_back(f);
        }
    }
    if (report.ranked_features.empty()) {
        throw AllFullyOverlapping("no feature is available for ranking");
    }

    report.pairs.clear();
    for (int i = 0; i < n_classes; ++i) {
        for (int j = i + 1; j < n_classes; ++j) {
            report.pairs.emplace_back(class_codes[i], class_codes[j]);
        }
    }

    const auto local_pairs = canonical_pairs(n_classes);
    report.areas.assign(local_pairs.size(), {});
    for (std::size_t k = 0; k < local_pairs.size(); ++k) {
        auto [ci, cj] = local_pairs[k];
        for (int f : report.ranked_features) {
            report.areas[k].push_back(overlap_area(summaries[f][ci], summaries[f][cj]));
        }
    }

    report.pair_weights = group_pair_weights(class_sizes);

    std::vector<std::vector<double>> per_pair;
    per_pair.reserve(local_pairs.size());
    for (const auto& areas : report.areas) {
        per_pair.push_back(feature_pair_weights(areas));
    }
    report.weights = final_feature_values(report.pair_weights, per_pair, opts.top_k);
    return report;
}

}  // namespace hrvf
