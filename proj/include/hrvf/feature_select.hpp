#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hrvf/stats.hpp"
#include "hrvf/types.hpp"

namespace hrvf {

/// Rational error-function approximation: 1 - 1/(sum a_i z^i)^16 with the
/// fixed seven coefficients, odd-extended for negative z. Absolute error
/// is below 3.5e-7 everywhere.
double erf_approx(double z);

/// Normal CDF built on erf_approx (the production path for overlap areas).
double normal_cdf_approx(double x, double mu, double sigma);

/// Fitted Gaussian for one (feature, class) cell.
struct GaussianSummary {
    double mu = 0.0;
    double sigma = 1.0;  // > 0
    int n = 0;
    int feature_id = -1;
    int class_id = -1;
};

struct Intersections {
    enum class Kind { TwoPoints, SinglePoint, Identical };
    Kind kind = Kind::Identical;
    double p1 = 0.0;
    double p2 = 0.0;  // == p1 for SinglePoint
};

/// Points where the two Gaussian densities are equal: the two roots of the
/// density-equality quadratic for distinct sigmas, the midpoint of the
/// means for equal sigmas, or the Identical signal (overlap trivially 1).
Intersections gaussian_intersections(const GaussianSummary& g1, const GaussianSummary& g2);

/// Overlapping coefficient: the area under the pointwise minimum of the
/// two densities, assembled from CDF evaluations at the intersection
/// points (equal sigmas use the closed form 2*Phi(-|mu1-mu2|/(2*sigma))).
/// Always in [0, 1]; symmetric in its arguments.
double overlap_area(const GaussianSummary& g1, const GaussianSummary& g2);

/// Fixed-arrangement variant retained for cross-checks: evaluates the
/// three-segment CDF sum with the p1/p2 term placement keyed only on the
/// sigma ordering. Equals overlap_area when sigma1 > sigma2 and the
/// complementary max-envelope area (2 - overlap) when sigma1 < sigma2.
double overlap_area_fixed_form(const GaussianSummary& g1, const GaussianSummary& g2);

/// Importance weights from a positive reciprocal pairwise-comparison
/// matrix: column-normalize, then sum each row (weights sum to n).
/// Throws NonPositiveEntry / NonReciprocal / DimensionMismatch.
std::vector<double> ahp_weights(const std::vector<std::vector<double>>& matrix);

/// Canonical class-pair ordering (0,1),(0,2),...,(n-2,n-1).
std::vector<std::pair<int, int>> canonical_pairs(int n_classes);

/// Pair weights from class sizes: the comparison matrix of pair-sum ratios
/// (g_i+g_j)/(g_u+g_v) over the canonical ordering, run through
/// ahp_weights. Throws EmptyClass for a nonpositive size.
std::vector<double> group_pair_weights(std::span<const int> class_sizes);

/// Per-pair feature weights from that pair's overlap areas: separability
/// r_j = 1 - A_j (floored at 1e-12 when A_j = 1), ratio matrix, ahp_weights.
/// Throws AllFullyOverlapping when every area is 1.
std::vector<double> feature_pair_weights(std::span<const double> overlap_areas);

struct FeatureWeights {
    std::vector<double> omega;   // importance per feature, >= 0
    std::vector<int> ranking;    // feature indices, descending omega
    std::vector<int> selected;   // top-K prefix of ranking
};

/// Final importance: omega_j = sum_k wG_k * wF_{k,j} with both weight
/// families normalized to sum 1, so omega is a convex combination of the
/// per-pair feature weight vectors. Throws DimensionMismatch.
FeatureWeights final_feature_values(const std::vector<double>& pair_weights,
                                    const std::vector<std::vector<double>>& per_pair_feature_weights,
                                    int top_k = 3);

struct SelectionOptions {
    double alpha = 0.05;
    int top_k = 3;
    // Exclude features whose distribution fails the normality test in any
    // class (the overlap construction assumes normality). When false the
    // test still runs and is reported, but nothing is excluded.
    bool gate_excludes = true;
    int min_samples_per_class = 2;
};

struct FeatureNormality {
    int feature_id = -1;
    int class_id = -1;
    NormalityReport report;
};

struct SelectionReport {
    // Ranking over ranked_features; indices in weights.* refer into it.
    FeatureWeights weights;
    std::vector<int> ranked_features;    // global feature ids in the ranking universe
    std::vector<int> excluded_features;  // gate failures / insufficient data
    std::vector<std::pair<int, int>> pairs;  // canonical class-code pairs
    std::vector<double> pair_weights;
    // areas[pair][feature] over ranked_features (same column order).
    std::vector<std::vector<double>> areas;
    std::vector<FeatureNormality> normality;
    int classes_present = 0;

    /// Global feature ids of the selected subset, ranking order.
    std::vector<int> selected_feature_ids() const;
    /// omega for a global feature id, or -1 when not ranked.
    double omega_for(int feature_id) const;
};

/// The full ranking pipeline over a labeled dataset: per-(feature, class)
/// Gaussian fits, normality gating, pairwise overlap areas, and the
/// two-level weighting down to omega. Throws EmptyClass when fewer than
/// two classes are present; AllFullyOverlapping when no feature separates
/// anything.
SelectionReport rank_features(const LabeledDataset& dataset, const SelectionOptions& opts = {});

}  // namespace hrvf
