#include "hrvf/synth.hpp"

#include <cmath>
#include <string>

#include "hrvf/rng.hpp"

namespace hrvf {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

SynthSpec default_synth_spec() {
    SynthSpec spec;
    // counts mirror the reference dataset (42/40/12/42/12); RR means map to
    // resting ~60 BPM up to vigorous ~150 BPM, with vagal (HF) modulation
    // strongest at rest and sympathetic (LF) dominance during recovery.
    spec.classes[static_cast<int>(ExerciseState::PreExercise)] =
        {42, 1000.0, 50.0, 20.0, 30.0, 0.10, 0.25};
    spec.classes[static_cast<int>(ExerciseState::VigorousDuring)] =
        {40, 400.0, 15.0, 10.0, 5.0, 0.10, 0.25};
    spec.classes[static_cast<int>(ExerciseState::ModerateDuring)] =
        {12, 500.0, 20.0, 15.0, 8.0, 0.10, 0.25};
    spec.classes[static_cast<int>(ExerciseState::VigorousPost)] =
        {42, 600.0, 30.0, 25.0, 10.0, 0.10, 0.25};
    spec.classes[static_cast<int>(ExerciseState::ModeratePost)] =
        {12, 750.0, 40.0, 20.0, 25.0, 0.10, 0.25};
    return spec;
}

std::vector<Window> synthesize_dataset(const SynthSpec& spec, std::uint64_t seed) {
    for (int c = 0; c < kStateCount; ++c) {
        const auto& cs = spec.classes[c];
        if (cs.count <= 0) {
            throw DegenerateSpec("class " + std::string(state_name(static_cast<ExerciseState>(c))) +
                                 " has nonpositive count");
        }
        const double floor_ms =
            cs.rr_mean_ms - 3.0 * cs.rr_sd_ms - std::abs(cs.lf_amp_ms) - std::abs(cs.hf_amp_ms);
        if (floor_ms <= 0.0) {
            throw DegenerateSpec("intervals could go nonpositive for class " +
                                 std::string(state_name(static_cast<ExerciseState>(c))));
        }
    }
    if (spec.window_seconds <= 0.0) throw DegenerateSpec("window length must be positive");

    Rng rng(seed);
    std::vector<Window> out;
    const double window_ms = spec.window_seconds * 1000.0;
    const double two_pi = 2.0 * 3.141592653589793238462643383279502884;

    for (int c = 0; c < kStateCount; ++c) {
        const auto& cs = spec.classes[c];
        for (int w = 0; w < cs.count; ++w) {
            Window window;
            window.window_seconds = spec.window_seconds;
            window.label = static_cast<ExerciseState>(c);
            double t_ms = 0.0;
            while (t_ms < window_ms) {
                const double t_s = t_ms / 1000.0;
                double rr = cs.rr_mean_ms + cs.rr_sd_ms * rng.gaussian() +
                            cs.lf_amp_ms * std::sin(two_pi * cs.lf_freq_hz * t_s) +
                            cs.hf_amp_ms * std::sin(two_pi * cs.hf_freq_hz * t_s);
                while (rr <= 0.0) {
                    // ~impossible after the 3-sigma precheck; redraw keeps
                    // the positivity invariant without biasing the stream
                    rr = cs.rr_mean_ms + cs.rr_sd_ms * rng.gaussian();
                }
                window.series.rr_ms.push_back(rr);
                t_ms += rr;
            }
            out.push_back(std::move(window));
        }
    }
    return out;
}

}  // namespace hrvf
