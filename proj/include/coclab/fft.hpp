#pragma once

#include <complex>
#include <vector>

namespace coclab {

// In-place radix-2 FFT; data.size() must be a power of two.
// inverse=true applies the 1/N-normalized inverse transform.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace coclab
