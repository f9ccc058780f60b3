#include <doctest.h>

#include <algorithm>

#include "hrvf/time_domain.hpp"
#include "oracles.hpp"

using namespace hrvf;

namespace {

RRSeries make(std::vector<double> rr) {
    RRSeries s;
    s.rr_ms = std::move(rr);
    return s;
}

}  // namespace

TEST_CASE("constant series zeroes every variability index") {
    const auto m = time_domain(make(std::vector<double>(300, 1000.0)));
    CHECK(m.mean_hr == doctest::Approx(60.0));
    CHECK(m.mean_rr == doctest::Approx(1000.0));
    CHECK(m.sd_hr == 0.0);
    CHECK(m.sdnn == 0.0);
    CHECK(m.rmssd == 0.0);
    CHECK(m.nn50 == 0.0);
    CHECK(m.pnn50 == 0.0);
}

TEST_CASE("two-beat series, hand-computed") {
    const auto m = time_domain(make({1000.0, 940.0}));
    CHECK(m.mean_rr == doctest::Approx(970.0));
    CHECK(m.rmssd == doctest::Approx(60.0));
    CHECK(m.nn50 == 1.0);
    CHECK(m.pnn50 == doctest::Approx(100.0));
}

TEST_CASE("successive 40 ms gaps stay below the NN50 bound") {
    const auto m = time_domain(make({1000.0, 960.0, 1000.0}));
    CHECK(m.nn50 == 0.0);
    CHECK(m.pnn50 == 0.0);
}

TEST_CASE("a 50 ms gap is not counted, just above is") {
    CHECK(time_domain(make({1000.0, 950.0})).nn50 == 0.0);  // exactly 50: not >
    CHECK(time_domain(make({1000.0, 949.0})).nn50 == 1.0);
}

TEST_CASE("signed variant counts only positive >= 50 ms jumps") {
    TimeDomainOptions opts;
    opts.nn50_absolute = false;
    CHECK(time_domain(make({1000.0, 940.0}), opts).nn50 == 0.0);  // -60: signed misses it
    CHECK(time_domain(make({940.0, 1000.0}), opts).nn50 == 1.0);  // +60
    CHECK(time_domain(make({940.0, 990.0}), opts).nn50 == 1.0);   // +50: >= counts
}

TEST_CASE("literal pNN50 denominator divides by n") {
    TimeDomainOptions opts;
    opts.pnn50_per_pair = false;
    const auto m = time_domain(make({1000.0, 940.0}), opts);
    CHECK(m.pnn50 == doctest::Approx(50.0));  // 1 of n=2
}

TEST_CASE("outlier gate drops implausible intervals") {
    TimeDomainOptions opts;
    opts.outlier_gate = true;
    const auto gated = time_domain(make({1000.0, 2500.0, 1000.0, 100.0, 1000.0}), opts);
    CHECK(gated.mean_rr == doctest::Approx(1000.0));
    CHECK(gated.sdnn == 0.0);
    CHECK_THROWS_AS(time_domain(make({2500.0, 2600.0}), opts), TooShort);
}

TEST_CASE("too short and nonpositive inputs raise") {
    CHECK_THROWS_AS(time_domain(make({1000.0})), TooShort);
    CHECK_THROWS_AS(time_domain(make({1000.0, -5.0})), NonPositiveInterval);
}

TEST_CASE("agrees with the literal brute-force evaluation") {
    Rng rng(101);
    for (int rep = 0; rep < 200; ++rep) {
        const auto rr = oracle::random_rr(rng, 50 + rng.below(951));
        const auto got = time_domain(make(rr));
        const auto ref = oracle::time_domain_literal(rr);
        CHECK(got.mean_hr == doctest::Approx(ref.mean_hr).epsilon(1e-12));
        CHECK(got.mean_rr == doctest::Approx(ref.mean_rr).epsilon(1e-12));
        CHECK(got.sd_hr == doctest::Approx(ref.sd_hr).epsilon(1e-12));
        CHECK(got.sdnn == doctest::Approx(ref.sdnn).epsilon(1e-12));
        CHECK(got.rmssd == doctest::Approx(ref.rmssd).epsilon(1e-12));
        CHECK(got.nn50 == ref.nn50);
        CHECK(got.pnn50 == doctest::Approx(ref.pnn50).epsilon(1e-12));
    }
}

TEST_CASE("scale equivariance") {
    Rng rng(7);
    const auto rr = oracle::random_rr(rng, 400);
    const auto base = time_domain(make(rr));
    const double c = 1.75;
    auto scaled_rr = rr;
    for (auto& v : scaled_rr) v *= c;
    const auto scaled = time_domain(make(scaled_rr));
    CHECK(scaled.mean_rr == doctest::Approx(c * base.mean_rr).epsilon(1e-12));
    CHECK(scaled.sdnn == doctest::Approx(c * base.sdnn).epsilon(1e-12));
    CHECK(scaled.rmssd == doctest::Approx(c * base.rmssd).epsilon(1e-12));
    CHECK(scaled.mean_hr == doctest::Approx(base.mean_hr / c).epsilon(1e-12));
}

TEST_CASE("shuffling preserves the order-free indices") {
    Rng rng(13);
    const auto rr = oracle::random_rr(rng, 300);
    auto shuffled = rr;
    rng.shuffle(shuffled);
    const auto a = time_domain(make(rr));
    const auto b = time_domain(make(shuffled));
    CHECK(a.mean_rr == doctest::Approx(b.mean_rr).epsilon(1e-12));
    CHECK(a.mean_hr == doctest::Approx(b.mean_hr).epsilon(1e-12));
    CHECK(a.sdnn == doctest::Approx(b.sdnn).epsilon(1e-12));
    CHECK(a.sd_hr == doctest::Approx(b.sd_hr).epsilon(1e-12));
}
