#pragma once

#include <cstddef>
#include <vector>

#include "hrvf/types.hpp"

namespace hrvf {

/// Uniformly resampled, mean-removed RR tachogram.
struct Tachogram {
    std::vector<double> t_s;   // tick times, seconds from the first beat
    std::vector<double> x_ms;  // RR deviation from the window mean
    double sample_hz = 0.0;
    double mean_ms = 0.0;
    bool linear_fallback = false;  // n < 4: linear interpolation was used
};

/// Resamples the beat series onto a uniform grid with a natural cubic
/// spline (linear for 2 or 3 beats, flagged). The tachogram value at each
/// beat time is that beat's interval. Throws TooShort for n < 2 and Error
/// for a resample rate at or below the 0.8 Hz Nyquist floor.
Tachogram rr_to_uniform(const RRSeries& series, double resample_hz = 4.0);

struct Spectrum {
    std::vector<double> freq_hz;         // ascending
    std::vector<double> psd_ms2_per_hz;  // one-sided density, >= 0
};

struct WelchOptions {
    double resample_hz = 4.0;
    std::size_t segment_samples = 256;  // 64 s at 4 Hz
    double overlap = 0.5;
    double min_span_s = 270.0;  // 0.9x the 5-minute analysis window
    // Default defines total power as vlf+lf+hf so the normalized powers
    // are self-consistent; true integrates the whole (0, 0.4] range.
    bool total_includes_sub_vlf = false;
};

/// Welch-averaged periodogram (Hann window, per-segment mean removal,
/// 50% overlap) of an already-uniform signal.
Spectrum welch_psd(const std::vector<double>& x, double sample_hz, const WelchOptions& opts = {});

/// Trapezoidal integral of the density over [f_lo, f_hi], with linear
/// interpolation at the band edges.
double integrate_band(const Spectrum& spectrum, double f_lo, double f_hi);

inline constexpr double kVlfLowHz = 0.003;
inline constexpr double kVlfHighHz = 0.04;
inline constexpr double kLfHighHz = 0.15;
inline constexpr double kHfHighHz = 0.4;

struct BandPowers {
    double tp = 0.0;   // ms^2
    double hf = 0.0;
    double lf = 0.0;
    double vlf = 0.0;
    double nhf = 0.0;  // 100 * hf / (tp - vlf)
    double nlf = 0.0;
    double lf_hf = 0.0;
    bool nhf_valid = false;
    bool nlf_valid = false;
    bool lf_hf_valid = false;  // false when hf < 1e-12 ms^2
};

/// The seven frequency-domain indices of one window. A constant window
/// yields all-zero powers with the ratio indices flagged invalid rather
/// than an error. Throws TooShort when the window spans under min_span_s.
BandPowers band_powers(const RRSeries& series, const WelchOptions& opts = {});

/// band_powers plus the spectrum it integrated (for dump/inspection).
BandPowers band_powers(const RRSeries& series, const WelchOptions& opts, Spectrum& out_spectrum);

}  // namespace hrvf
