#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "unwindr/spectral.hpp"

namespace unwindr {

struct WeissOptions {
    /// Relative floor: min |s| must exceed modulus_floor * max |s|.
    double modulus_floor = 1e-6;
    /// Input negative-frequency tolerance; set to a value >= 1 to skip.
    double analytic_tol = kAnalyticTolerance;
    /// Length of the returned outer spectrum; 0 selects M / 8.
    std::size_t spectrum_length = 0;
};

/// Root-free inner-outer factorization on the sample grid.
struct WeissFactorization {
    /// B = s / G; unimodular up to rounding.
    BoundarySamples inner;
    /// G = exp(log|s| + i H log|s|) evaluated on the grid.
    BoundarySamples outer_samples;
    /// Leading coefficients of G.
    SpectralSignal outer;
    /// G energy discarded by truncating to `outer.size()`, relative.
    double outer_tail_fraction = 0.0;
    /// Negative-frequency energy fraction of the input.
    double input_negative_fraction = 0.0;
    double min_modulus = 0.0;
    double max_modulus = 0.0;
};

/// Guido & Mary Weiss construction: g = log|s|, h = g + iHg, G = e^h,
/// B = s / G. Throws NearZeroModulusError below the modulus floor and
/// NonAnalyticInputError for inputs with negative-frequency content.
WeissFactorization weiss_factorize(const BoundarySamples& s, const WeissOptions& opts = {});

/// Factorize s + c.
struct ConstantOffset {
    cplx c;
};
/// Factorize s - S(alpha), S the holomorphic extension of s into the disk.
struct DiskShift {
    cplx alpha;
};
using Stabilizer = std::variant<ConstantOffset, DiskShift>;

struct StabilizedFactorization {
    WeissFactorization factorization;
    /// Constant added to s before factorizing.
    cplx perturbation;
    std::string strategy;
};

/// Applies the stabilizer, then factorizes. Throws StillDegenerateError
/// when the perturbed signal still violates the modulus floor.
StabilizedFactorization stabilized_factorize(const BoundarySamples& s, const Stabilizer& strategy,
                                             const WeissOptions& opts = {});

/// Value at z (|z| < 1) of the holomorphic extension of sampled boundary data.
cplx holomorphic_extension(const BoundarySamples& s, cplx z);

struct DenoiseResult {
    BoundarySamples output;
    /// max | |F| - 1 | after each round.
    std::vector<double> modulus_deviation;
};

/// Multiplicative-noise removal. Round 1 complexifies u; each round then
/// normalizes F to F / |F| and complexifies the real part again, which is
/// the holomorphic projection of the phase signal onto analytic signals.
DenoiseResult denoise(std::span<const double> u, int rounds, double modulus_floor = 1e-6);

}  // namespace unwindr
