#include "hrvf/features.hpp"

namespace hrvf {

FeatureVector extract_features(const Window& window, const ExtractOptions& opts) {
    FeatureVector fv;
    const RRSeries& series = window.series;

    TimeDomainMetrics td;
    bool have_td = false;
    try {
        td = time_domain(series, opts.time_domain);
        have_td = true;
        fv.set(FeatureId::MeanHr, td.mean_hr);
        fv.set(FeatureId::MeanRr, td.mean_rr);
        fv.set(FeatureId::SdHr, td.sd_hr);
        fv.set(FeatureId::Sdnn, td.sdnn);
        fv.set(FeatureId::Rmssd, td.rmssd);
        fv.set(FeatureId::Nn50, td.nn50);
        fv.set(FeatureId::Pnn50, td.pnn50);
    } catch (const Error&) {
        // leaves the time-domain block invalid
    }

    try {
        const BandPowers bp = band_powers(series, opts.welch);
        fv.set(FeatureId::Tp, bp.tp);
        fv.set(FeatureId::Hf, bp.hf);
        fv.set(FeatureId::Lf, bp.lf);
        fv.set(FeatureId::Vlf, bp.vlf);
        if (bp.nhf_valid) fv.set(FeatureId::Nhf, bp.nhf);
        if (bp.nlf_valid) fv.set(FeatureId::Nlf, bp.nlf);
        if (bp.lf_hf_valid) fv.set(FeatureId::LfHf, bp.lf_hf);
    } catch (const Error&) {
    }

    try {
        const DfaResult d = dfa(series.rr_ms, opts.dfa);
        fv.set(FeatureId::DfaAlpha1, d.alpha1);
        fv.set(FeatureId::DfaAlpha2, d.alpha2);
    } catch (const Error&) {
    }

    if (have_td && td.sdnn > 0.0) {
        const double r = opts.entropy_r_factor * td.sdnn;
        try {
            fv.set(FeatureId::ApEn, apen(series.rr_ms, opts.entropy_m, r));
        } catch (const Error&) {
        }
        try {
            if (const auto se = sampen(series.rr_ms, opts.entropy_m, r)) {
                fv.set(FeatureId::SampEn, *se);
            }
        } catch (const Error&) {
        }
    }
    return fv;
}

LabeledDataset extract_dataset(const std::vector<Window>& windows, const ExtractOptions& opts) {
    LabeledDataset dataset;
    int id = 0;
    for (const auto& window : windows) {
        if (window.partial && !opts.include_partial) continue;
        DatasetRow row;
        row.window_id = id++;
        row.label = window.label;
        row.features = extract_features(window, opts);
        dataset.rows.push_back(std::move(row));
    }
    return dataset;
}

}  // namespace hrvf
