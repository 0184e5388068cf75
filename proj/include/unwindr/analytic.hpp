#pragma once

#include <span>
#include <vector>

#include "unwindr/spectral.hpp"

namespace unwindr {

/// Complexification u + iHu of a real periodic signal sampled on a power of
/// two grid. With u = a_0/2 + sum a_k cos k t + b_k sin k t the result has
/// spectrum a_0/2 + sum (a_k - i b_k) e^{ikt}, so its 0-th coefficient is
/// mean(u). The Nyquist component of u is dropped.
BoundarySamples analytic_signal(std::span<const double> u);

/// Circle Hilbert transform: cos k t -> sin k t, sin k t -> -cos k t.
/// The output has zero mean.
std::vector<double> hilbert_transform(std::span<const double> u);

/// Keeps the nonnegative frequencies 0..M/2-1 of the two-sided transform
/// (Nyquist is zeroed) and returns them as a one-sided spectrum.
SpectralSignal holomorphic_project(const BoundarySamples& s);

/// holomorphic_project followed by resampling on the same grid.
BoundarySamples holomorphic_project_samples(const BoundarySamples& s);

}  // namespace unwindr
