#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hrvf {

// Base for all domain errors. CLI maps these to exit code 1; usage
// problems (bad flags, unknown case ids) map to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveInterval : public Error { public: using Error::Error; };
class InvalidAge : public Error { public: using Error::Error; };
class EmptySeries : public Error { public: using Error::Error; };
class DegenerateSpec : public Error { public: using Error::Error; };
class TooShort : public Error { public: using Error::Error; };
class NonPositiveTolerance : public Error { public: using Error::Error; };
class DegenerateSeries : public Error { public: using Error::Error; };
class UnsupportedAlpha : public Error { public: using Error::Error; };
class DfOutOfRange : public Error { public: using Error::Error; };
class TooFewSamples : public Error { public: using Error::Error; };
class NonReciprocal : public Error { public: using Error::Error; };
class NonPositiveEntry : public Error { public: using Error::Error; };
class EmptyClass : public Error { public: using Error::Error; };
class AllFullyOverlapping : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class EmptyTrainingSet : public Error { public: using Error::Error; };
class InsufficientClassMembers : public Error { public: using Error::Error; };
class RankDeficient : public Error { public: using Error::Error; };

class UsageError : public Error { public: using Error::Error; };

// Parse failure in an input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A beat-to-beat interval recording. Intervals are in milliseconds and
/// must be positive; analyses generally require at least two beats.
struct RRSeries {
    std::vector<double> rr_ms;
    std::optional<double> start_time_ms;  // epoch ms of the first beat
    std::optional<int> subject_age;       // years

    std::size_t size() const { return rr_ms.size(); }
    bool empty() const { return rr_ms.empty(); }

    /// Total duration in seconds (sum of intervals).
    double span_seconds() const;
};

/// The five exercise-fatigue states. Codes 0-4 are the stable
/// serialization values and must not be reordered.
enum class ExerciseState : int {
    PreExercise = 0,
    VigorousDuring = 1,
    ModerateDuring = 2,
    VigorousPost = 3,
    ModeratePost = 4,
};

inline constexpr int kStateCount = 5;

std::string_view state_name(ExerciseState s);
std::optional<ExerciseState> state_from_code(int code);
std::optional<ExerciseState> state_from_name(std::string_view name);

/// One analysis window cut from a recording. A window is "partial" when
/// its cumulative time is below 0.9x the nominal window length; partial
/// windows are excluded from feature extraction by default.
struct Window {
    RRSeries series;
    std::optional<ExerciseState> label;
    double window_seconds = 300.0;
    bool partial = false;
};

/// The 18 HRV measures, in the fixed serialization order used by every
/// file format. Indices are stable.
enum class FeatureId : int {
    MeanHr = 0,
    MeanRr = 1,
    SdHr = 2,
    Sdnn = 3,
    Rmssd = 4,
    Nn50 = 5,
    Pnn50 = 6,
    Tp = 7,
    Hf = 8,
    Lf = 9,
    Vlf = 10,
    Nhf = 11,
    Nlf = 12,
    LfHf = 13,
    DfaAlpha1 = 14,
    DfaAlpha2 = 15,
    ApEn = 16,
    SampEn = 17,
};

inline constexpr int kFeatureCount = 18;

std::string_view feature_name(FeatureId id);
std::string_view feature_name(int id);
std::optional<FeatureId> feature_from_name(std::string_view name);

/// Feature ids for the named analysis families.
std::vector<int> time_domain_feature_ids();      // mean_hr .. pnn50
std::vector<int> frequency_domain_feature_ids(); // tp .. lf_hf
std::vector<int> nonlinear_feature_ids();        // dfa_alpha1 .. sampen

/// One window's 18 measures. A measure can be undefined (constant input,
/// too few beats, no entropy template matches); `valid` tracks that.
struct FeatureVector {
    std::array<double, kFeatureCount> value{};
    std::array<bool, kFeatureCount> valid{};

    double& operator[](FeatureId id) { return value[static_cast<int>(id)]; }
    double operator[](FeatureId id) const { return value[static_cast<int>(id)]; }
    bool is_valid(FeatureId id) const { return valid[static_cast<int>(id)]; }
    void set(FeatureId id, double v) {
        value[static_cast<int>(id)] = v;
        valid[static_cast<int>(id)] = true;
    }
    void set_invalid(FeatureId id) {
        value[static_cast<int>(id)] = 0.0;
        valid[static_cast<int>(id)] = false;
    }
};

/// A labeled feature row; window_id is unique within a dataset.
struct DatasetRow {
    int window_id = 0;
    std::optional<ExerciseState> label;
    FeatureVector features;
};

struct LabeledDataset {
    std::vector<DatasetRow> rows;

    std::size_t size() const { return rows.size(); }
    /// Rows per state code (size kStateCount).
    std::array<int, kStateCount> class_histogram() const;
};

}  // namespace hrvf
