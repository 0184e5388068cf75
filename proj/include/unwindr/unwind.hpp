#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "unwindr/spectral.hpp"
#include "unwindr/weiss.hpp"

namespace unwindr {

/// Finest grid a single unwinding step may refine to. A step whose outer
/// tail there still exceeds 1e-12 raises NearBoundaryRootError.
inline constexpr std::size_t kMaxWorkingGrid = std::size_t{1} << 18;

enum class ShiftStrategy { origin, maximize_selector };

struct UnwindConfig {
    std::size_t max_steps = 32;
    /// Stop once |G_n - G_n(alpha_n)|_{L2} falls to this level.
    double residual_tol = 1e-8;
    GammaWeights gamma = GammaWeights::dirichlet();
    ShiftStrategy shift = ShiftStrategy::origin;
    /// Sample grid; 0 selects default_grid_size(F.size()).
    std::size_t grid = 0;
    /// Per-step factorization settings. The analyticity check is off by
    /// default because exp(h) aliases a little into negative bins;
    /// spectrum_length is chosen per step from the working grid.
    WeissOptions weiss{.modulus_floor = 1e-6, .analytic_tol = 1.0, .spectrum_length = 0};

    void validate() const;
};

struct UnwindTerm {
    cplx coefficient;
    /// B_k on the grid.
    BoundarySamples factor;
};

/// Diagnostics recorded after each factorization. Entry i belongs to the
/// factorization that produced G_{i+1}.
struct StepDiagnostics {
    /// |G_{i+1} - G_{i+1}(alpha)|_{L2}, the reconstruction error after i+1 terms.
    double residual_l2 = 0.0;
    /// sup |G_{i+1} - G_{i+1}(alpha)| on the grid.
    double residual_sup = 0.0;
    double norm_x = 0.0;
    double norm_y = 0.0;
    /// min |input| of the factorized signal.
    double min_boundary_modulus = 0.0;
    /// Energy of G_{i+1} above a quarter of the working grid, relative.
    double outer_tail_fraction = 0.0;
    /// Grid the factorization ran on; finer than the expansion grid when
    /// the outer factor needed it.
    std::size_t working_grid = 0;
};

enum class Termination { zero_remainder, residual_tol, max_steps };
std::string_view to_string(Termination t) noexcept;

/// F = a_1 B_1 + a_2 B_1 B_2 + ... + B_1 ... B_n (G_n - a_n).
struct UnwindingExpansion {
    std::vector<UnwindTerm> terms;
    /// G_n, the outer factor of the last factorization, trimmed of
    /// trailing rounding noise.
    SpectralSignal remainder;
    BoundarySamples remainder_samples;
    /// alpha_n used to form a_n = G_n(alpha_n); one per term.
    std::vector<cplx> shifts;
    std::vector<StepDiagnostics> diagnostics;
    double input_norm_x = 0.0;
    double input_l2 = 0.0;
    Termination termination = Termination::max_steps;
    std::size_t grid = 0;

    /// Factorizations after the initial F = B_1 G_1.
    std::size_t steps() const noexcept { return diagnostics.empty() ? 0 : diagnostics.size() - 1; }
};

/// Iterated Blaschke factorization with the Weiss construction at every
/// step.
UnwindingExpansion unwind(const SpectralSignal& f, const UnwindConfig& cfg = {});

/// Point alpha used to split G = G(alpha) + (G - G(alpha)). The selector
/// search maximizes (1 - |z|^2) |G(z)| over 32 radii x 64 angles.
cplx select_shift(const SpectralSignal& g, ShiftStrategy strategy);

/// (1 - |z|^2) |G(z)|.
double selector_value(const SpectralSignal& g, cplx z);

/// Sum of the first k terms a_j B_1 ... B_j on the expansion grid.
BoundarySamples reconstruct(const UnwindingExpansion& e, std::size_t k, std::size_t m);

/// a_k B_1 ... B_k for k = 1..n, the individual series terms.
std::vector<BoundarySamples> term_samples(const UnwindingExpansion& e);

/// B_1 ... B_n (G_n - a_n): what the partial sum of all terms leaves out.
BoundarySamples remainder_term(const UnwindingExpansion& e);

}  // namespace unwindr
