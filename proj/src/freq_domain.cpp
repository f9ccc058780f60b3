#include "hrvf/freq_domain.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hrvf/fft.hpp"

namespace hrvf {

namespace {

// Natural cubic spline through (t, y); evaluates at query points.
// Standard tridiagonal solve for the second derivatives.
class CubicSpline {
public:
    CubicSpline(const std::vector<double>& t, const std::vector<double>& y) : t_(t), y_(y) {
        const std::size_t n = t.size();
        m_.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = t[i] - t[i - 1];
            const double h1 = t[i + 1] - t[i];
            a[i] = h0;
            b[i] = 2.0 * (h0 + h1);
            c[i] = h1;
            d[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        // Thomas algorithm on the interior rows; natural ends m_0 = m_{n-1} = 0
        const int last = static_cast<int>(n) - 2;
        for (int i = 2; i <= last; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        for (int i = last; i >= 1; --i) {
            m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
        }
    }

    double eval(double x) const {
        const auto& t = t_;
        std::size_t hi = std::upper_bound(t.begin(), t.end(), x) - t.begin();
        if (hi == 0) hi = 1;
        if (hi >= t.size()) hi = t.size() - 1;
        const std::size_t lo = hi - 1;
        const double h = t[hi] - t[lo];
        const double u = (x - t[lo]) / h;
        const double v = 1.0 - u;
        return v * y_[lo] + u * y_[hi] +
               h * h / 6.0 * ((v * v * v - v) * m_[lo] + (u * u * u - u) * m_[hi]);
    }

private:
    std::vector<double> t_, y_;
    std::vector<double> m_;  // second derivatives
};

double linear_interp(const std::vector<double>& t, const std::vector<double>& y, double x) {
    std::size_t hi = std::upper_bound(t.begin(), t.end(), x) - t.begin();
    if (hi == 0) hi = 1;
    if (hi >= t.size()) hi = t.size() - 1;
    const std::size_t lo = hi - 1;
    const double u = (x - t[lo]) / (t[hi] - t[lo]);
    return (1.0 - u) * y[lo] + u * y[hi];
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n <= 1) return w;
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return w;
}

}  // namespace

Tachogram rr_to_uniform(const RRSeries& series, double resample_hz) {
    const std::size_t n = series.size();
    if (n < 2) throw TooShort("resampling needs at least 2 beats");
    if (resample_hz <= 0.8) throw Error("resample rate must exceed 0.8 Hz (2x the 0.4 Hz band top)");

    std::vector<double> t(n), y(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (series.rr_ms[i] <= 0.0) throw NonPositiveInterval("RR interval must be positive");
        cum += series.rr_ms[i];
        t[i] = cum / 1000.0;  // beat time: the end of its interval
        y[i] = series.rr_ms[i];
    }

    Tachogram out;
    out.sample_hz = resample_hz;
    out.linear_fallback = n < 4;

    const double t0 = t.front();
    const double t1 = t.back();
    const std::size_t ticks = static_cast<std::size_t>(std::floor((t1 - t0) * resample_hz)) + 1;

    out.t_s.resize(ticks);
    out.x_ms.resize(ticks);
    if (out.linear_fallback) {
        for (std::size_t k = 0; k < ticks; ++k) {
            out.t_s[k] = t0 + static_cast<double>(k) / resample_hz;
            out.x_ms[k] = linear_interp(t, y, out.t_s[k]);
        }
    } else {
        CubicSpline spline(t, y);
        for (std::size_t k = 0; k < ticks; ++k) {
            out.t_s[k] = t0 + static_cast<double>(k) / resample_hz;
            out.x_ms[k] = spline.eval(out.t_s[k]);
        }
    }

    double mean = 0.0;
    for (double v : out.x_ms) mean += v;
    mean /= static_cast<double>(ticks);
    for (double& v : out.x_ms) v -= mean;
    out.mean_ms = mean;
    return out;
}

Spectrum welch_psd(const std::vector<double>& x, double sample_hz, const WelchOptions& opts) {
    if (x.empty()) throw TooShort("empty signal");
    if (sample_hz <= 0.0) throw Error("sample rate must be positive");

    std::size_t nperseg = std::min(opts.segment_samples, x.size());
    if (nperseg < 8) nperseg = std::min<std::size_t>(8, x.size());
    const std::size_t noverlap = static_cast<std::size_t>(
        std::floor(static_cast<double>(nperseg) * std::clamp(opts.overlap, 0.0, 0.95)));
    const std::size_t hop = nperseg > noverlap ? nperseg - noverlap : 1;

    const std::size_t nfft = next_power_of_two(nperseg);
    const std::size_t nfreq = nfft / 2 + 1;

    const std::vector<double> window = hann_window(nperseg);
    double norm = 0.0;
    for (double w : window) norm += w * w;

    std::vector<double> acc(nfreq, 0.0);
    std::size_t segments = 0;
    std::vector<std::complex<double>> buf(nfft);

    for (std::size_t start = 0; start + nperseg <= x.size(); start += hop) {
        double seg_mean = 0.0;
        for (std::size_t i = 0; i < nperseg; ++i) seg_mean += x[start + i];
        seg_mean /= static_cast<double>(nperseg);

        for (std::size_t i = 0; i < nperseg; ++i) {
            buf[i] = std::complex<double>((x[start + i] - seg_mean) * window[i], 0.0);
        }
        for (std::size_t i = nperseg; i < nfft; ++i) buf[i] = {0.0, 0.0};
        fft_inplace(buf, false);

        const double scale = 1.0 / (sample_hz * norm);
        for (std::size_t k = 0; k < nfreq; ++k) {
            double p = std::norm(buf[k]) * scale;
            if (k != 0 && k != nfft / 2) p *= 2.0;  // one-sided
            acc[k] += p;
        }
        ++segments;
    }
    if (segments == 0) throw TooShort("signal shorter than one Welch segment");

    Spectrum s;
    s.freq_hz.resize(nfreq);
    s.psd_ms2_per_hz.resize(nfreq);
    for (std::size_t k = 0; k < nfreq; ++k) {
        s.freq_hz[k] = static_cast<double>(k) * sample_hz / static_cast<double>(nfft);
        s.psd_ms2_per_hz[k] = acc[k] / static_cast<double>(segments);
    }
    return s;
}

double integrate_band(const Spectrum& spectrum, double f_lo, double f_hi) {
    const auto& f = spectrum.freq_hz;
    const auto& p = spectrum.psd_ms2_per_hz;
    if (f.size() < 2 || f_hi <= f_lo) return 0.0;
    const double lo = std::max(f_lo, f.front());
    const double hi = std::min(f_hi, f.back());
    if (hi <= lo) return 0.0;

    auto density_at = [&](double x) {
        std::size_t k = std::upper_bound(f.begin(), f.end(), x) - f.begin();
        if (k == 0) return p.front();
        if (k >= f.size()) return p.back();
        const double u = (x - f[k - 1]) / (f[k] - f[k - 1]);
        return (1.0 - u) * p[k - 1] + u * p[k];
    };

    double area = 0.0;
    double prev_f = lo;
    double prev_p = density_at(lo);
    std::size_t k = std::upper_bound(f.begin(), f.end(), lo) - f.begin();
    for (; k < f.size() && f[k] < hi; ++k) {
        area += 0.5 * (prev_p + p[k]) * (f[k] - prev_f);
        prev_f = f[k];
        prev_p = p[k];
    }
    area += 0.5 * (prev_p + density_at(hi)) * (hi - prev_f);
    return area;
}

BandPowers band_powers(const RRSeries& series, const WelchOptions& opts) {
    Spectrum unused;
    return band_powers(series, opts, unused);
}

BandPowers band_powers(const RRSeries& series, const WelchOptions& opts, Spectrum& out_spectrum) {
    if (series.span_seconds() < opts.min_span_s) {
        throw TooShort("window spans " + std::to_string(series.span_seconds()) +
                       " s; frequency analysis needs >= " + std::to_string(opts.min_span_s) + " s");
    }
    const Tachogram tach = rr_to_uniform(series, opts.resample_hz);
    out_spectrum = welch_psd(tach.x_ms, tach.sample_hz, opts);

    BandPowers bp;
    bp.vlf = integrate_band(out_spectrum, kVlfLowHz, kVlfHighHz);
    bp.lf = integrate_band(out_spectrum, kVlfHighHz, kLfHighHz);
    bp.hf = integrate_band(out_spectrum, kLfHighHz, kHfHighHz);
    bp.tp = opts.total_includes_sub_vlf ? integrate_band(out_spectrum, 0.0, kHfHighHz)
                                        : bp.vlf + bp.lf + bp.hf;

    const double above_vlf = bp.tp - bp.vlf;
    if (above_vlf > 0.0) {
        bp.nhf = 100.0 * bp.hf / above_vlf;
        bp.nlf = 100.0 * bp.lf / above_vlf;
        bp.nhf_valid = true;
        bp.nlf_valid = true;
    }
    if (bp.hf >= 1e-12) {
        bp.lf_hf = bp.lf / bp.hf;
        bp.lf_hf_valid = true;
    }
    return bp;
}

}  // namespace hrvf
