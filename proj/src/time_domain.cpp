#include "hrvf/time_domain.hpp"

#include <cmath>
#include <vector>

#include "hrvf/core.hpp"

namespace hrvf {

TimeDomainMetrics time_domain(const RRSeries& series, const TimeDomainOptions& opts) {
    std::vector<double> rr;
    rr.reserve(series.size());
    for (double v : series.rr_ms) {
        if (v <= 0.0) throw NonPositiveInterval("RR interval must be positive");
        if (opts.outlier_gate && (v < 300.0 || v > 2000.0)) continue;
        rr.push_back(v);
    }
    const std::size_t n = rr.size();
    if (n < 2) throw TooShort("time-domain analysis needs at least 2 beats");

    std::vector<double> hr(n);
    for (std::size_t i = 0; i < n; ++i) hr[i] = 60000.0 / rr[i];

    double sum_rr = 0.0, sum_hr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_rr += rr[i];
        sum_hr += hr[i];
    }
    TimeDomainMetrics m;
    m.mean_rr = sum_rr / static_cast<double>(n);
    m.mean_hr = sum_hr / static_cast<double>(n);

    double ss_rr = 0.0, ss_hr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = rr[i] - m.mean_rr;
        const double dh = hr[i] - m.mean_hr;
        ss_rr += dr * dr;
        ss_hr += dh * dh;
    }
    m.sdnn = std::sqrt(ss_rr / static_cast<double>(n));  // population form
    m.sd_hr = std::sqrt(ss_hr / static_cast<double>(n));

    double ss_diff = 0.0;
    double nn50 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = rr[i + 1] - rr[i];
        ss_diff += d * d;
        const double exceed = opts.nn50_absolute ? std::abs(d) : d;
        if (opts.nn50_absolute ? (exceed > 50.0) : (exceed >= 50.0)) nn50 += 1.0;
    }
    m.rmssd = std::sqrt(ss_diff / static_cast<double>(n - 1));
    m.nn50 = nn50;
    const double denom = opts.pnn50_per_pair ? static_cast<double>(n - 1) : static_cast<double>(n);
    m.pnn50 = 100.0 * nn50 / denom;
    return m;
}

}  // namespace hrvf
