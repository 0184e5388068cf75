#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "unwindr/spectral.hpp"

namespace unwindr::corpus {

using Rng = std::mt19937_64;

/// Roots of a random polynomial with no root in the annulus
/// inner_max < |r| < outer_min; outside roots have |r| <= outer_max.
struct RootSpec {
    std::size_t degree = 6;
    double inner_max = 0.8;
    double outer_min = 1.25;
    double outer_max = 2.0;
};

std::vector<cplx> random_roots(Rng& rng, const RootSpec& spec);

/// n roots uniformly in the disk |r| <= radius.
std::vector<cplx> random_disk_points(Rng& rng, std::size_t n, double radius);

/// n roots with radius in [rmin, rmax] and uniform angle.
std::vector<cplx> random_annulus_points(Rng& rng, std::size_t n, double rmin, double rmax);

/// Ascending coefficients of prod (z - r).
SpectralSignal monic_from_roots(const std::vector<cplx>& roots);

/// Random analytic trigonometric polynomial sum_{n<=degree} c_n e^{int},
/// c_n complex Gaussian scaled by 1/(1+n).
SpectralSignal random_trig_polynomial(Rng& rng, std::size_t degree);

/// (z + 0.3 + i/3)(z - 0.2)(z - 1.5 - i/2).
SpectralSignal reference_cubic();

/// Boundary samples of exp(-(t - pi)^2 / width) e^{i carrier t}, before
/// any projection.
BoundarySamples gaussian_chirp_raw(std::size_t m, double carrier, double width = 1.0);

/// Holomorphic projection of gaussian_chirp_raw.
SpectralSignal gaussian_chirp(std::size_t m, double carrier, double width = 1.0);

/// cos(2t) * sum_{n=1}^{50} (x_n cos nt + y_n sin nt) / sqrt(n), x, y ~ N(0,1).
std::vector<double> multiplicative_noise(Rng& rng, std::size_t m);

/// Monotone explicit weight table with gamma_0 = 0.
std::vector<double> random_gamma_table(Rng& rng, std::size_t length);

}  // namespace unwindr::corpus
