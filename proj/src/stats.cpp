#include "hrvf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hrvf {

namespace {

// Regularized lower incomplete gamma by series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma by Lentz continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw Error("gamma_p: shape must be positive");
    if (x < 0.0) throw Error("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi_square_critical(int df, double alpha) {
    if (df < 1 || df > 100) throw DfOutOfRange("df must be in [1, 100], got " + std::to_string(df));
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UnsupportedAlpha("alpha must be in (0, 1), got " + std::to_string(alpha));
    }
    // solve P(X > c) = alpha, i.e. gamma_p(df/2, c/2) = 1 - alpha
    const double a = 0.5 * static_cast<double>(df);
    const double target = 1.0 - alpha;
    double lo = 0.0;
    double hi = static_cast<double>(df);
    while (gamma_p(a, 0.5 * hi) < target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_p(a, 0.5 * mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error("normal_quantile: p must be in (0, 1)");
    // bisection on the exact CDF; cold path, precision over speed
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
        if (cdf < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

NormalityReport normality_test(std::span<const double> samples, double alpha) {
    const std::size_t n = samples.size();
    if (n < 8) throw TooFewSamples("normality test needs >= 8 samples, got " + std::to_string(n));

    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    const int bins = std::clamp(static_cast<int>(n) / 10, 5, 20);
    NormalityReport rep;
    rep.df = bins - 3;  // two fitted parameters
    rep.alpha = alpha;
    rep.critical = chi_square_critical(rep.df, alpha);

    if (sd <= 0.0) {
        // all mass in one equal-probability bin: maximally non-normal
        rep.chi2_stat = static_cast<double>(n) * static_cast<double>(bins - 1);
        rep.is_normal = false;
        return rep;
    }

    std::vector<double> edges(bins - 1);
    for (int k = 1; k < bins; ++k) {
        edges[k - 1] = mean + sd * normal_quantile(static_cast<double>(k) / bins);
    }
    std::vector<int> observed(bins, 0);
    for (double v : samples) {
        const int bin = std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
        ++observed[bin];
    }
    const double expected = static_cast<double>(n) / bins;
    double chi2 = 0.0;
    for (int k = 0; k < bins; ++k) {
        const double d = observed[k] - expected;
        chi2 += d * d / expected;
    }
    rep.chi2_stat = chi2;
    rep.is_normal = chi2 < rep.critical;
    return rep;
}

}  // namespace hrvf
