#pragma once

#include <vector>

#include "hrvf/freq_domain.hpp"
#include "hrvf/nonlinear.hpp"
#include "hrvf/time_domain.hpp"
#include "hrvf/types.hpp"

namespace hrvf {

struct ExtractOptions {
    double window_seconds = 300.0;
    TimeDomainOptions time_domain;
    WelchOptions welch;
    DfaOptions dfa;
    int entropy_m = 2;
    double entropy_r_factor = 0.2;  // tolerance r = factor * SDNN
    bool include_partial = false;
};

/// Assembles all 18 measures for one window. Measures whose preconditions
/// fail on this window (too few beats for DFA, zero SDNN for the entropy
/// tolerance, no template matches) come back flagged invalid instead of
/// raising.
FeatureVector extract_features(const Window& window, const ExtractOptions& opts = {});

/// Extracts every non-partial window (all windows when include_partial)
/// into dataset rows with sequential window ids.
LabeledDataset extract_dataset(const std::vector<Window>& windows, const ExtractOptions& opts = {});

}  // namespace hrvf
