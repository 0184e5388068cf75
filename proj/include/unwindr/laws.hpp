#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unwindr/blaschke.hpp"
#include "unwindr/spectral.hpp"

namespace unwindr {

/// Norm contraction under Blaschke factorization, with the single-root gain.
struct Theorem1Report {
    double norm_f = 0.0;
    double norm_g = 0.0;
    /// |F|_X - |G|_X, never negative in exact arithmetic.
    double norm_drop = 0.0;
    /// |F|_X^2 - |G|_X^2.
    double gain_lhs = 0.0;
    /// (1 - |a|^2) |G / (1 - conj(a) z)|_Y^2, zero when F has no disk root.
    double gain_rhs = 0.0;
    std::optional<cplx> alpha;

    bool holds(double slack = 1e-9) const noexcept {
        return norm_drop >= -slack && gain_lhs - gain_rhs >= -slack;
    }
};

/// `alpha` must be one of the disk roots of F; when omitted, the disk root
/// of smallest modulus is used.
Theorem1Report check_theorem1(const SpectralSignal& f, const GammaWeights& g,
                              std::optional<cplx> alpha = std::nullopt);

/// Power series of G / (1 - conj(a) z), truncated once the geometric tail
/// is below 1e-12 of the kept energy.
SpectralSignal divide_by_flip_factor(const SpectralSignal& g, cplx alpha);

/// Boundary H^1 energy against its Poisson-weighted gain:
/// lhs = int |G'|^2 + int |G|^2 sum P_a, rhs = int |F'|^2.
struct Theorem2Report {
    double energy_f = 0.0;
    double energy_g = 0.0;
    double poisson_term = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;

    double slack() const noexcept { return rhs - lhs; }
    bool holds(double tol = 1e-8) const noexcept { return lhs <= rhs + tol; }
};

/// `grid` 0 chooses a grid that resolves the Poisson kernels of the roots.
Theorem2Report check_theorem2(const SpectralSignal& f, std::size_t grid = 0);

/// Disk-energy identity int_D |F'|^2 = int_D |G'|^2 + (1/2) int |G|^2 sum P_a.
struct CarlesonReport {
    double disk_energy_f = 0.0;
    double disk_energy_g = 0.0;
    double poisson_term = 0.0;

    double defect() const noexcept { return disk_energy_f - disk_energy_g - poisson_term; }
    bool holds(double rel = 1e-6) const noexcept {
        return std::abs(defect()) <= rel * (1.0 + disk_energy_f);
    }
};

CarlesonReport check_carleson(const SpectralSignal& f, std::size_t grid = 0);

/// Trapezoid rule for int_0^{2pi} |G|^2 sum_a (1 - |a|^2) / |e^{it} - a|^2 dt.
/// `roots` may hold zeros; each contributes the constant kernel 1.
double poisson_weighted_energy(const BoundarySamples& g, std::span<const cplx> roots);

/// Grid on which the Poisson kernels of `roots` are resolved to rounding.
std::size_t poisson_grid(std::span<const cplx> roots, std::size_t degree);

struct StabilityReport {
    /// max over the grid of | |G1 - G2| - |F1 - F2| |.
    double max_deviation = 0.0;
    /// max over the grid of |F1| + |F2|.
    double scale = 0.0;
};

/// Builds F_i = prod (z - r_out) prod (z - r_in_i), factors both without
/// unimodular renormalization and compares |G1 - G2| with |F1 - F2|.
StabilityReport check_stability(std::span<const cplx> roots_out, std::span<const cplx> roots_in_1,
                                std::span<const cplx> roots_in_2, std::size_t grid);

/// min over N of sum_{n>=N} |f_n|^2 - sum_{n>=N} |g_n|^2.
double tail_energy_slack(const SpectralSignal& f, const SpectralSignal& g);

/// True iff every tail of G carries no more energy than the same tail of F.
bool check_tail_energy(const SpectralSignal& f, const SpectralSignal& g, double slack = 1e-10);

/// One line of the `verify` table.
struct LawResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    /// Worst observed error or negative slack, in the units of `tolerance`.
    double worst = 0.0;
    double tolerance = 0.0;
};

/// Names accepted by run_law_suite besides "all".
std::vector<std::string_view> law_suite_names();

/// Seeded, deterministic battery over the identities and inequalities.
/// Throws PreconditionError for an unknown suite name.
std::vector<LawResult> run_law_suite(std::string_view suite, std::uint64_t seed);

}  // namespace unwindr
