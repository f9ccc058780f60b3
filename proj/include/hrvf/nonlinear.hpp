#pragma once

#include <optional>
#include <span>

#include "hrvf/types.hpp"

namespace hrvf {

struct DfaOptions {
    int short_min = 4;
    int short_max = 16;
    int long_min = 16;
    int long_max = 64;
    // Multiply F(s) by s/sqrt(s^2-4), the exact unit correction for
    // uncorrelated input under linear detrending. Without it the
    // short-scale slope of white noise sits near 0.58 instead of 0.5;
    // the factor tends to 1 as s grows, so asymptotics are unchanged.
    bool small_scale_correction = true;
};

struct DfaResult {
    double alpha1 = 0.0;  // log-log slope over the short box range
    double alpha2 = 0.0;  // over the long box range
};

/// Detrended fluctuation analysis with linear detrending: integrate the
/// mean-centered series, compute the RMS fluctuation F(s) over
/// non-overlapping boxes for every box size s in each range, and fit the
/// slope of log F against log s. Requires n >= 100 (TooShort); throws
/// DegenerateSeries when F(s) = 0 for some box size (constant input).
DfaResult dfa(std::span<const double> x, const DfaOptions& opts = {});

/// Approximate entropy (self-matches included): Phi^m(r) - Phi^{m+1}(r)
/// with mean-log template-match ratios under Chebyshev distance.
/// Requires n >= m + 2 (TooShort) and r > 0 (NonPositiveTolerance).
double apen(std::span<const double> x, int m, double r);

/// Sample entropy (self-matches excluded): -ln(A/B) over the first n-m
/// templates. Returns nullopt when no m-templates match (B = 0) or when
/// only m-templates match (A = 0, entropy unbounded) -- the method's
/// stated inapplicability -- instead of failing.
std::optional<double> sampen(std::span<const double> x, int m, double r);

}  // namespace hrvf
