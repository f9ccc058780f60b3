#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hrvf/types.hpp"

namespace hrvf {

/// Generation recipe for one exercise state: Gaussian RR noise around a
/// mean, plus optional sinusoidal modulation in the LF and HF bands.
struct ClassSynthSpec {
    int count = 0;             // windows to generate
    double rr_mean_ms = 1000.0;
    double rr_sd_ms = 50.0;
    double lf_amp_ms = 0.0;    // modulation amplitude at lf_freq_hz
    double hf_amp_ms = 0.0;
    double lf_freq_hz = 0.10;
    double hf_freq_hz = 0.25;
};

struct SynthSpec {
    std::array<ClassSynthSpec, kStateCount> classes{};
    double window_seconds = 300.0;
};

/// Per-class defaults with the reference dataset's 42/40/12/42/12 counts
/// and physiologically distinct parameters per state.
SynthSpec default_synth_spec();

/// Deterministically generates labeled RR windows: same (spec, seed) in,
/// bitwise-identical windows out. Throws DegenerateSpec when a class count
/// is nonpositive or when mean - 3*sd - amplitudes could reach zero.
std::vector<Window> synthesize_dataset(const SynthSpec& spec, std::uint64_t seed);

}  // namespace hrvf
