#pragma once

#include <complex>
#include <span>
#include <vector>

namespace unwindr::detail {

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2 pi i j k / M}.
std::vector<std::complex<double>> fft_forward(std::span<const std::complex<double>> x);

/// Unnormalized inverse DFT, x_j = sum_k X_k e^{+2 pi i j k / M}.
std::vector<std::complex<double>> fft_inverse(std::span<const std::complex<double>> x);

}  // namespace unwindr::detail
