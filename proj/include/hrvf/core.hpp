#pragma once

#include <cstdint>
#include <vector>

#include "hrvf/types.hpp"

namespace hrvf {

/// Heart rate in BPM for one interval: hr = 60000 / rr_ms.
/// Throws NonPositiveInterval for rr_ms <= 0.
double hr_from_rr(double rr_ms);

/// Inverse of hr_from_rr.
double rr_from_hr(double hr_bpm);

enum class IntensityZone : int {
    BelowModerate = 0,
    Moderate = 1,
    Vigorous = 2,
};

/// CDC intensity zones from the age-based maximum heart rate (220 - age):
/// Moderate covers [50%, 70%] of it (closed on both ends), Vigorous is
/// above 70%. Throws InvalidAge outside (0, 130).
IntensityZone intensity_zone(double hr_bpm, int age_years);

inline constexpr int kDefaultSubjectAge = 20;

/// Cuts a recording into consecutive non-overlapping windows by cumulative
/// RR time. A beat belongs to the window in which its interval ends, so the
/// windows partition the beats. The trailing window is flagged partial when
/// its cumulative time is under 0.9x the window length. Throws EmptySeries.
std::vector<Window> segment_windows(const RRSeries& series, double window_seconds = 300.0);

}  // namespace hrvf
