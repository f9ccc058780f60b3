#include "hrvf/core.hpp"

#include <string>

namespace hrvf {

double hr_from_rr(double rr_ms) {
    if (rr_ms <= 0.0) {
        throw NonPositiveInterval("RR interval must be positive, got " + std::to_string(rr_ms));
    }
    return 60000.0 / rr_ms;
}

double rr_from_hr(double hr_bpm) {
    if (hr_bpm <= 0.0) {
        throw NonPositiveInterval("heart rate must be positive, got " + std::to_string(hr_bpm));
    }
    return 60000.0 / hr_bpm;
}

IntensityZone intensity_zone(double hr_bpm, int age_years) {
    if (age_years <= 0 || age_years >= 130) {
        throw InvalidAge("age out of range (0, 130): " + std::to_string(age_years));
    }
    if (hr_bpm <= 0.0) {
        throw NonPositiveInterval("heart rate must be positive");
    }
    const double max_hr = 220.0 - age_years;
    const double lo = 0.5 * max_hr;
    const double hi = 0.7 * max_hr;
    if (hr_bpm > hi) return IntensityZone::Vigorous;
    if (hr_bpm >= lo) return IntensityZone::Moderate;  // closed on both ends
    return IntensityZone::BelowModerate;
}

std::vector<Window> segment_windows(const RRSeries& series, double window_seconds) {
    if (series.empty()) throw EmptySeries("cannot segment an empty series");
    if (window_seconds <= 0.0) throw Error("window length must be positive");

    const double window_ms = window_seconds * 1000.0;
    std::vector<Window> windows;
    double t = 0.0;

    Window current;
    current.window_seconds = window_seconds;
    current.series.subject_age = series.subject_age;
    double boundary = window_ms;
    double window_start_ms = 0.0;

    auto flush = [&](bool trailing) {
        if (current.series.empty()) return;
        double window_sum = 0.0;
        for (double rr : current.series.rr_ms) window_sum += rr;
        current.partial = trailing && window_sum < 0.9 * window_ms;
        if (series.start_time_ms) {
            current.series.start_time_ms = *series.start_time_ms + window_start_ms;
        }
        windows.push_back(std::move(current));
        current = Window{};
        current.window_seconds = window_seconds;
        current.series.subject_age = series.subject_age;
    };

    for (double rr : series.rr_ms) {
        if (rr <= 0.0) throw NonPositiveInterval("RR interval must be positive");
        t += rr;
        // the beat belongs to the window in which its interval ends
        if (t > boundary) {
            flush(false);
            while (t > boundary) boundary += window_ms;
            window_start_ms = boundary - window_ms;
        }
        current.series.rr_ms.push_back(rr);
    }
    flush(true);
    return windows;
}

}  // namespace hrvf
