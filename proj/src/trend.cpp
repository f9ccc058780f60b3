#include "hrvf/trend.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace hrvf {

TrendModel fit_trend(std::span<const double> t_s, std::span<const double> hr_bpm, int degree) {
    if (degree < 1) throw Error("trend degree must be >= 1");
    if (t_s.size() != hr_bpm.size()) throw DimensionMismatch("time/value length mismatch");
    const std::size_t n = t_s.size();

    std::set<double> distinct(t_s.begin(), t_s.end());
    if (distinct.size() < static_cast<std::size_t>(degree) + 1) {
        throw RankDeficient("need more than " + std::to_string(degree) + " distinct times, got " +
                            std::to_string(distinct.size()));
    }

    const double t_min = *distinct.begin();
    const double t_max = *distinct.rbegin();
    const double half_span = 0.5 * (t_max - t_min);
    const double center = 0.5 * (t_max + t_min);

    // solve in the scaled variable u = (t - center) / half_span in [-1, 1]
    Eigen::MatrixXd basis(n, degree + 1);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (t_s[i] - center) / half_span;
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            basis(i, k) = p;
            p *= u;
        }
        rhs(i) = hr_bpm[i];
    }
    const Eigen::VectorXd scaled = basis.householderQr().solve(rhs);

    const Eigen::VectorXd residual = basis * scaled - rhs;
    TrendModel model;
    model.degree = degree;
    model.t_min = t_min;
    model.t_max = t_max;
    model.residual_rms = std::sqrt(residual.squaredNorm() / static_cast<double>(n));

    // expand sum_k scaled_k * (a*t + b)^k back to raw powers of t by
    // Horner over polynomial coefficients
    const double a = 1.0 / half_span;
    const double b = -center / half_span;
    std::vector<double> raw{scaled(degree)};
    for (int k = degree - 1; k >= 0; --k) {
        std::vector<double> next(raw.size() + 1, 0.0);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            next[i + 1] += raw[i] * a;
            next[i] += raw[i] * b;
        }
        next[0] += scaled(k);
        raw = std::move(next);
    }
    model.coefficients = std::move(raw);
    return model;
}

TrendEval eval_trend(const TrendModel& model, double t_s) {
    TrendEval out;
    double acc = 0.0;
    for (auto it = model.coefficients.rbegin(); it != model.coefficients.rend(); ++it) {
        acc = acc * t_s + *it;
    }
    out.hr_bpm = acc;
    out.extrapolated = t_s < model.t_min || t_s > model.t_max;
    return out;
}

}  // namespace hrvf
