#pragma once

#include <cstdint>
#include <random>

namespace hrvf {

// Deterministic random source. All sampling goes through explicit
// formulas on top of the raw mt19937_64 stream, so a given seed yields
// the same values on every platform (std::normal_distribution and
// friends are implementation-defined and would not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is irrelevant at our n << 2^64
        return engine_() % n;
    }

    /// Standard normal via Box-Muller; spare value cached.
    double gaussian();

    double gaussian(double mu, double sigma) {
        return mu + sigma * gaussian();
    }

    /// Deterministic Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hrvf
