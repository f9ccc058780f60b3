#include "hrvf/nonlinear.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace hrvf {

namespace {

// RMS fluctuation around per-box least-squares lines for one box size.
double dfa_fluctuation(const std::vector<double>& profile, int box) {
    const std::size_t n = profile.size();
    const std::size_t boxes = n / static_cast<std::size_t>(box);
    double ss = 0.0;
    for (std::size_t b = 0; b < boxes; ++b) {
        const std::size_t off = b * static_cast<std::size_t>(box);
        // closed-form line fit over x = 0..box-1
        double sy = 0.0, sxy = 0.0;
        for (int i = 0; i < box; ++i) {
            sy += profile[off + i];
            sxy += static_cast<double>(i) * profile[off + i];
        }
        const double m = static_cast<double>(box);
        const double sx = 0.5 * m * (m - 1.0);
        const double sxx = (m - 1.0) * m * (2.0 * m - 1.0) / 6.0;
        const double denom = m * sxx - sx * sx;
        const double slope = (m * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / m;
        for (int i = 0; i < box; ++i) {
            const double res = profile[off + i] - (intercept + slope * static_cast<double>(i));
            ss += res * res;
        }
    }
    return std::sqrt(ss / static_cast<double>(boxes * static_cast<std::size_t>(box)));
}

double loglog_slope(const std::vector<double>& sizes, const std::vector<double>& fluct) {
    const std::size_t k = sizes.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double lx = std::log(sizes[i]);
        const double ly = std::log(fluct[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(k);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

DfaResult dfa(std::span<const double> x, const DfaOptions& opts) {
    const std::size_t n = x.size();
    if (n < 100) throw TooShort("DFA needs at least 100 beats, got " + std::to_string(n));
    if (opts.short_min < 3 || opts.long_min < 3) {
        throw Error("DFA box sizes below 3 leave no residual after linear detrending");
    }
    if (opts.short_max < opts.short_min || opts.long_max < opts.long_min) {
        throw Error("DFA box ranges must be nondecreasing");
    }

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> profile(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cum += x[i] - mean;
        profile[i] = cum;
    }

    auto alpha_over = [&](int lo, int hi) {
        std::vector<double> sizes, fluct;
        for (int s = lo; s <= hi; ++s) {
            if (static_cast<std::size_t>(s) > n) break;
            double f = dfa_fluctuation(profile, s);
            if (f <= 0.0) {
                throw DegenerateSeries("zero fluctuation at box size " + std::to_string(s));
            }
            if (opts.small_scale_correction) {
                const double ss = static_cast<double>(s);
                f *= ss / std::sqrt(ss * ss - 4.0);
            }
            sizes.push_back(static_cast<double>(s));
            fluct.push_back(f);
        }
        if (sizes.size() < 2) throw TooShort("not enough box sizes for the DFA slope");
        return loglog_slope(sizes, fluct);
    };

    DfaResult r;
    r.alpha1 = alpha_over(opts.short_min, opts.short_max);
    r.alpha2 = alpha_over(opts.long_min, opts.long_max);
    return r;
}

namespace {

// Chebyshev match between templates starting at i and j.
inline bool templates_match(std::span<const double> x, std::size_t i, std::size_t j, int m,
                            double r) {
    for (int t = 0; t < m; ++t) {
        if (std::abs(x[i + t] - x[j + t]) > r) return false;
    }
    return true;
}

}  // namespace

double apen(std::span<const double> x, int m, double r) {
    const std::size_t n = x.size();
    if (m < 1) throw Error("embedding dimension must be >= 1");
    if (n < static_cast<std::size_t>(m) + 2) throw TooShort("ApEn needs n >= m + 2");
    if (r <= 0.0) throw NonPositiveTolerance("tolerance must be positive");

    auto phi = [&](int dim) {
        const std::size_t count = n - static_cast<std::size_t>(dim) + 1;
        double log_sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t matches = 0;  // self-match included
            for (std::size_t j = 0; j < count; ++j) {
                if (templates_match(x, i, j, dim, r)) ++matches;
            }
            log_sum += std::log(static_cast<double>(matches) / static_cast<double>(count));
        }
        return log_sum / static_cast<double>(count);
    };
    return phi(m) - phi(m + 1);
}

std::optional<double> sampen(std::span<const double> x, int m, double r) {
    const std::size_t n = x.size();
    if (m < 1) throw Error("embedding dimension must be >= 1");
    if (n < static_cast<std::size_t>(m) + 2) throw TooShort("SampEn needs n >= m + 2");
    if (r <= 0.0) throw NonPositiveTolerance("tolerance must be positive");

    // both template lengths range over the same n - m start offsets
    const std::size_t count = n - static_cast<std::size_t>(m);
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            if (templates_match(x, i, j, m, r)) {
                ++b;
                if (std::abs(x[i + m] - x[j + m]) <= r) ++a;
            }
        }
    }
    if (b == 0 || a == 0) return std::nullopt;  // the method's inapplicability case
    return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

}  // namespace hrvf
