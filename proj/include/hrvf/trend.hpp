#pragma once

#include <span>
#include <vector>

#include "hrvf/types.hpp"

namespace hrvf {

/// Polynomial heart-rate trend over elapsed exercise time.
struct TrendModel {
    std::vector<double> coefficients;  // c0..cd, BPM per second^i
    int degree = 0;
    double residual_rms = 0.0;  // BPM
    double t_min = 0.0;         // validity window, seconds
    double t_max = 0.0;
};

/// Least-squares polynomial fit. Times are centered and scaled to [-1, 1]
/// internally (the raw monomial basis over thousands of seconds is
/// hopelessly ill-conditioned) and the coefficients mapped back to raw
/// units. Requires degree >= 1 and more distinct times than the degree
/// (RankDeficient otherwise).
TrendModel fit_trend(std::span<const double> t_s, std::span<const double> hr_bpm, int degree = 4);

struct TrendEval {
    double hr_bpm = 0.0;
    bool extrapolated = false;  // t outside [t_min, t_max]
};

/// Horner evaluation of the fitted polynomial at t seconds.
TrendEval eval_trend(const TrendModel& model, double t_s);

}  // namespace hrvf
