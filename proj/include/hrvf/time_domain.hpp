#pragma once

#include "hrvf/types.hpp"

namespace hrvf {

struct TimeDomainMetrics {
    double mean_hr = 0.0;  // BPM
    double mean_rr = 0.0;  // ms
    double sd_hr = 0.0;    // BPM, population (divide by n)
    double sdnn = 0.0;     // ms, population
    double rmssd = 0.0;    // ms, n-1 successive pairs under the root
    double nn50 = 0.0;     // count (integer-valued)
    double pnn50 = 0.0;    // percent in [0, 100]
};

struct TimeDomainOptions {
    // Default counts |RR_{i+1} - RR_i| > 50 ms. The signed variant
    // (difference >= 50, no absolute value) is kept selectable.
    bool nn50_absolute = true;
    // Default divides NN50 by the number of successive pairs (n-1);
    // the literal variant divides by n.
    bool pnn50_per_pair = true;
    // Off by default: drop intervals outside [300, 2000] ms first.
    bool outlier_gate = false;
};

/// The seven time-domain indices over one window. Requires n >= 2
/// (after the optional outlier gate); throws TooShort otherwise.
TimeDomainMetrics time_domain(const RRSeries& series, const TimeDomainOptions& opts = {});

}  // namespace hrvf
