#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "unwindr/spectral.hpp"

namespace unwindr {

/// Roots closer than this to the unit circle are rejected.
inline constexpr double kBoundaryBand = 1e-8;

/// Finite Blaschke product z^m prod (conj(a)/|a|) (z - a) / (1 - conj(a) z)
/// over roots a in the open disk. Origin zeros live in `m`, never in the
/// root list.
class BlaschkeProduct {
public:
    BlaschkeProduct() = default;
    BlaschkeProduct(std::size_t origin_multiplicity, std::vector<cplx> roots,
                    double boundary_band = kBoundaryBand);

    std::size_t origin_multiplicity() const noexcept { return m_; }
    std::span<const cplx> roots() const noexcept { return roots_; }
    /// m plus the number of off-origin roots.
    std::size_t degree() const noexcept { return m_ + roots_.size(); }

    cplx evaluate(cplx z) const noexcept;

private:
    std::size_t m_ = 0;
    std::vector<cplx> roots_;
};

BoundarySamples blaschke_eval(const BlaschkeProduct& b, std::size_t m);

/// Instantaneous frequency of the boundary phase,
/// phi'(t) = m + sum (1 - |a|^2) / |e^{it} - a|^2.
std::vector<double> phase_derivative(const BlaschkeProduct& b, std::size_t m);

/// Which unimodular constant the outer factor carries.
enum class OuterNormalization {
    /// G(0) real and positive; matches the root-free (Weiss) construction.
    canonical,
    /// G = c prod_out (z - r) prod_in (1 - conj(a) z), no phase correction.
    root_inversion,
};

struct FactorOptions {
    double boundary_band = kBoundaryBand;
    /// Leading/trailing coefficients below this fraction of max |c| are
    /// treated as zero.
    double trim_tolerance = 1e-14;
    OuterNormalization normalization = OuterNormalization::canonical;
};

/// Root-based inner-outer factorization F = unimodular * B * G.
struct PolynomialFactorization {
    BlaschkeProduct blaschke;
    SpectralSignal outer;
    cplx unimodular{1.0, 0.0};
    std::vector<cplx> inside_roots;   // includes origin zeros
    std::vector<cplx> outside_roots;

    /// unimodular * B on the grid: the inner factor that pairs with `outer`.
    BoundarySamples inner_samples(std::size_t m) const;
    BoundarySamples outer_samples(std::size_t m) const;
};

/// Eigenvalues of the companion matrix, Newton-polished. Coefficients are
/// ascending (c_0 + c_1 z + ...); trailing zeros must be trimmed already.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

/// Ascending coefficients of lead * prod (z - r).
std::vector<cplx> polynomial_from_roots(std::span<const cplx> roots, cplx lead = 1.0);

/// Ascending-coefficient product of two polynomials.
std::vector<cplx> polynomial_multiply(std::span<const cplx> a, std::span<const cplx> b);

PolynomialFactorization factor_polynomial(std::span<const cplx> coeffs, FactorOptions opts = {});

struct RootFlipGain {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = |(z - a) F|_X^2 - |(1 - conj(a) z) F|_X^2, rhs = (1 - |a|^2) |F|_Y^2.
RootFlipGain root_flip_gain(const SpectralSignal& f, cplx alpha, const GammaWeights& g);

}  // namespace unwindr
