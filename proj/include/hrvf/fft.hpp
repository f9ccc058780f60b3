#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hrvf {

/// In-place iterative radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse = false);

std::size_t next_power_of_two(std::size_t n);

}  // namespace hrvf
