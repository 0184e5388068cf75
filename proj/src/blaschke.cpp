#include "unwindr/blaschke.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "unwindr/error.hpp"

namespace unwindr {

BlaschkeProduct::BlaschkeProduct(std::size_t origin_multiplicity, std::vector<cplx> roots,
                                 double boundary_band)
    : m_(origin_multiplicity), roots_(std::move(roots)) {
    for (const auto& a : roots_) {
        if (!(std::abs(a) < 1.0 - boundary_band))
            throw NearBoundaryRootError("Blaschke root with |a| = " + std::to_string(std::abs(a)) +
                                        " is within the boundary band");
    }
    // An exact zero belongs to the z^m factor.
    auto zero = std::partition(roots_.begin(), roots_.end(), [](cplx a) { return a != 0.0; });
    m_ += static_cast<std::size_t>(std::distance(zero, roots_.end()));
    roots_.erase(zero, roots_.end());
}

cplx BlaschkeProduct::evaluate(cplx z) const noexcept {
    cplx acc = std::pow(z, static_cast<int>(m_));
    for (const auto& a : roots_) acc *= (std::conj(a) / std::abs(a)) * (z - a) / (1.0 - std::conj(a) * z);
    return acc;
}

BoundarySamples blaschke_eval(const BlaschkeProduct& b, std::size_t m) {
    if (!is_power_of_two(m))
        throw InvalidGridError("grid size " + std::to_string(m) + " is not a power of two");
    std::vector<cplx> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        out[k] = b.evaluate(std::polar(1.0, t));
    }
    return BoundarySamples(std::move(out));
}

std::vector<double> phase_derivative(const BlaschkeProduct& b, std::size_t m) {
    if (!is_power_of_two(m))
        throw InvalidGridError("grid size " + std::to_string(m) + " is not a power of two");
    std::vector<double> out(m, static_cast<double>(b.origin_multiplicity()));
    for (std::size_t k = 0; k < m; ++k) {
        const cplx z = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
        for (const auto& a : b.roots()) out[k] += (1.0 - std::norm(a)) / std::norm(z - a);
    }
    return out;
}

// --- polynomials ------------------------------------------------------------

std::vector<cplx> polynomial_multiply(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<cplx> polynomial_from_roots(std::span<const cplx> roots, cplx lead) {
    std::vector<cplx> out{lead};
    for (const auto& r : roots) {
        const cplx factor[] = {-r, 1.0};
        out = polynomial_multiply(out, factor);
    }
    return out;
}

namespace {

cplx horner(std::span<const cplx> c, cplx z, cplx* derivative = nullptr) {
    cplx p{}, dp{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    if (derivative) *derivative = dp;
    return p;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
    if (coeffs.size() < 2) return {};
    const auto d = static_cast<Eigen::Index>(coeffs.size() - 1);
    const cplx lead = coeffs.back();
    if (lead == 0.0) throw PreconditionError("leading coefficient is zero");

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw PreconditionError("companion eigensolver failed");

    const std::vector<cplx> roots(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::vector<cplx> polished(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        cplx r = roots[i];
        // Clustered eigenvalues approximate a multiple root; polishing them one
        // at a time pulls them apart and loses the backward stability of the
        // eigensolver, so only isolated roots are polished.
        bool isolated = true;
        for (std::size_t j = 0; j < roots.size() && isolated; ++j)
            isolated = j == i || std::abs(roots[j] - r) > 1e-3 * (1.0 + std::abs(r));
        // Newton polish; keep a step only if it reduces the residual.
        for (int iter = 0; isolated && iter < 4; ++iter) {
            cplx dp;
            const cplx p = horner(coeffs, r, &dp);
            if (p == 0.0 || dp == 0.0) break;
            const cplx next = r - p / dp;
            if (std::abs(horner(coeffs, next)) >= std::abs(p)) break;
            r = next;
        }
        polished[i] = r;
    }
    return polished;
}

// --- factorization ----------------------------------------------------------

BoundarySamples PolynomialFactorization::inner_samples(std::size_t m) const {
    return unimodular * blaschke_eval(blaschke, m);
}

BoundarySamples PolynomialFactorization::outer_samples(std::size_t m) const {
    return to_samples(outer, std::max(m, next_power_of_two(outer.size())));
}

PolynomialFactorization factor_polynomial(std::span<const cplx> coeffs, FactorOptions opts) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw PreconditionError("polynomial is identically zero");
    const double cut = opts.trim_tolerance * scale;

    std::size_t hi = coeffs.size();
    while (hi > 0 && std::abs(coeffs[hi - 1]) <= cut) --hi;
    std::size_t lo = 0;
    while (lo < hi && std::abs(coeffs[lo]) <= cut) ++lo;
    const std::span<const cplx> core = coeffs.subspan(lo, hi - lo);

    PolynomialFactorization out;
    const auto roots = polynomial_roots(core);
    std::vector<cplx> disk(lo, cplx{});
    for (const auto& r : roots) {
        const double mag = std::abs(r);
        if (std::abs(mag - 1.0) <= opts.boundary_band)
            throw BoundaryRootError("root at distance " + std::to_string(std::abs(mag - 1.0)) +
                                    " from the unit circle");
        (mag < 1.0 ? disk : out.outside_roots).push_back(r);
    }
    out.inside_roots = disk;
    out.blaschke = BlaschkeProduct(0, disk, opts.boundary_band);

    // G = lead * prod_out (z - r) * prod_in c_a (1 - conj(a) z)
    auto g = polynomial_from_roots(out.outside_roots, core.back());
    cplx phase = 1.0;
    for (const auto& a : disk) {
        if (a == 0.0) continue;
        const cplx factor[] = {1.0, -std::conj(a)};
        g = polynomial_multiply(g, factor);
        phase *= std::abs(a) / std::conj(a);
    }

    switch (opts.normalization) {
        case OuterNormalization::canonical: {
            // Fold the constant into G, then rotate so G(0) > 0.
            for (auto& c : g) c *= phase;
            const cplx u = std::conj(g[0]) / std::abs(g[0]);
            for (auto& c : g) c *= u;
            g[0] = std::abs(g[0]);
            out.unimodular = std::conj(u);
            break;
        }
        case OuterNormalization::root_inversion:
            out.unimodular = phase;
            break;
    }
    out.outer = SpectralSignal(std::move(g));
    return out;
}

RootFlipGain root_flip_gain(const SpectralSignal& f, cplx alpha, const GammaWeights& g) {
    if (!(std::abs(alpha) < 1.0)) throw PreconditionError("root-flip point must lie in the disk");
    const std::size_t n = f.size();
    std::vector<cplx> shifted(n + 1), flipped(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const cplx cur = f[k];
        const cplx prev = k > 0 ? f[k - 1] : cplx{};
        shifted[k] = prev - alpha * cur;
        flipped[k] = cur - std::conj(alpha) * prev;
    }
    const double x_shifted = std::pow(norm_x(SpectralSignal(std::move(shifted)), g), 2);
    const double x_flipped = std::pow(norm_x(SpectralSignal(std::move(flipped)), g), 2);
    return {x_shifted - x_flipped, (1.0 - std::norm(alpha)) * std::pow(norm_y(f, g), 2)};
}

}  // namespace unwindr
