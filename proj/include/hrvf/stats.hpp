#pragma once

#include <span>

#include "hrvf/types.hpp"

namespace hrvf {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Upper-tail chi-square critical value: the c with P(X > c) = alpha.
/// Matches standard tables within 0.01 at alpha = 0.05. Supports
/// 1 <= df <= 100 (DfOutOfRange) and alpha in (0, 1) (UnsupportedAlpha).
double chi_square_critical(int df, double alpha);

/// Standard normal quantile (inverse CDF), p in (0, 1).
double normal_quantile(double p);

struct NormalityReport {
    double chi2_stat = 0.0;
    int df = 0;
    double alpha = 0.0;
    double critical = 0.0;
    bool is_normal = false;
};

/// Pearson chi-square goodness-of-fit against the fitted Normal(mean, sd),
/// with equal-probability bins: bin count = clamp(max(5, n/10), 5, 20) and
/// df = bins - 3 (two estimated parameters). Requires n >= 8
/// (TooFewSamples). A zero-variance sample is reported maximally
/// non-normal rather than an error.
NormalityReport normality_test(std::span<const double> samples, double alpha = 0.05);

}  // namespace hrvf
