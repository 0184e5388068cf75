#include "unwindr/unwind.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "unwindr/error.hpp"

namespace unwindr {

void UnwindConfig::validate() const {
    if (max_steps < 1) throw PreconditionError("max_steps must be at least 1");
    if (!(residual_tol > 0.0)) throw PreconditionError("residual_tol must be positive");
    if (grid != 0 && !is_power_of_two(grid))
        throw InvalidGridError("grid size " + std::to_string(grid) + " is not a power of two");
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::zero_remainder: return "zero_remainder";
        case Termination::residual_tol: return "residual_tol";
        case Termination::max_steps: return "max_steps";
    }
    return "unknown";
}

double selector_value(const SpectralSignal& g, cplx z) {
    return (1.0 - std::norm(z)) * std::abs(g.evaluate(z));
}

cplx select_shift(const SpectralSignal& g, ShiftStrategy strategy) {
    if (strategy == ShiftStrategy::origin) return 0.0;
    constexpr int kRadii = 32;
    constexpr int kAngles = 64;
    cplx best = 0.0;
    double best_value = selector_value(g, best);
    for (int i = 1; i < kRadii; ++i) {
        const double r = static_cast<double>(i) / kRadii;
        for (int j = 0; j < kAngles; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / kAngles);
            const double v = selector_value(g, z);
            if (v > best_value) {
                best_value = v;
                best = z;
            }
        }
    }
    return best;
}

namespace {

/// Tail energy, relative, below which an outer factor counts as resolved.
constexpr double kResolvedTail = 1e-24;
/// Tail still left at kMaxWorkingGrid above which the step is an error.
constexpr double kUnresolvedTail = 1e-12;

struct Resolved {
    BoundarySamples inner;
    BoundarySamples outer_samples;
    SpectralSignal outer;
    double tail_fraction = 0.0;
    double min_modulus = 0.0;
    std::size_t grid = 0;
};

SpectralSignal trim_noise(const SpectralSignal& g) {
    double peak = 0.0;
    for (const auto& c : g.coeffs()) peak = std::max(peak, std::abs(c));
    return g.resized(g.degree(1e-17 * peak) + 1);
}

BoundarySamples decimate(const BoundarySamples& s, std::size_t m) {
    const std::size_t stride = s.size() / m;
    std::vector<cplx> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = s[k * stride];
    return BoundarySamples(std::move(out));
}

/// Weiss step on the coarsest grid >= m whose outer spectrum leaves at most
/// kResolvedTail of its energy above a quarter of the grid. Roots close to
/// the circle make log|s| sharp and need the finer grids.
Resolved resolved_factorize(const SpectralSignal& s, std::size_t m, WeissOptions opts) {
    std::size_t mw = std::max(m, next_power_of_two(4 * s.size()));
    for (;; mw *= 2) {
        opts.spectrum_length = mw / 4;
        auto fac = weiss_factorize(to_samples(s, mw), opts);
        if (fac.outer_tail_fraction > kResolvedTail && mw < kMaxWorkingGrid) continue;
        if (fac.outer_tail_fraction > kUnresolvedTail) {
            std::ostringstream msg;
            msg << "outer factor keeps tail fraction " << fac.outer_tail_fraction
                << " at working grid " << mw << "; a root lies too close to the unit circle";
            throw NearBoundaryRootError(msg.str());
        }
        Resolved r;
        r.grid = mw;
        r.tail_fraction = fac.outer_tail_fraction;
        r.min_modulus = fac.min_modulus;
        r.outer = trim_noise(fac.outer);
        r.inner = decimate(fac.inner, m);
        r.outer_samples = decimate(fac.outer_samples, m);
        return r;
    }
}

}  // namespace

UnwindingExpansion unwind(const SpectralSignal& f, const UnwindConfig& cfg) {
    cfg.validate();
    const std::size_t m = cfg.grid ? cfg.grid : default_grid_size(f.size());
    if (f.size() > m)
        throw AliasingError("grid size " + std::to_string(m) + " is smaller than spectrum length " +
                            std::to_string(f.size()));
    // Products and exp/log on the grid need headroom above the band of F.
    double tail = 0.0;
    for (std::size_t n = m / 4; n < f.size(); ++n) tail += std::norm(f[n]);
    if (tail > 1e-20 * f.energy())
        throw AliasingError("spectrum energy above M/4 is too large for grid size " +
                            std::to_string(m));

    UnwindingExpansion e;
    e.grid = m;
    e.input_norm_x = norm_x(f, cfg.gamma);
    e.input_l2 = std::sqrt(f.energy());
    if (e.input_l2 == 0.0) throw PreconditionError("cannot unwind the zero signal");
    const double zero_level = 1e-13 * e.input_l2;

    SpectralSignal current = f;
    for (std::size_t step = 0;; ++step) {
        Resolved r;
        try {
            r = resolved_factorize(current, m, cfg.weiss);
        } catch (const Error& err) {
            throw UnwindStepError(err, step);
        }

        const SpectralSignal& outer = r.outer;
        const cplx alpha = select_shift(outer, cfg.shift);
        const cplx a = alpha == 0.0 ? outer[0] : outer.evaluate(alpha);
        SpectralSignal next = outer - SpectralSignal::constant(a);

        StepDiagnostics d;
        d.residual_l2 = std::sqrt(next.energy());
        d.residual_sup = (r.outer_samples + (-a)).max_abs();
        d.norm_x = norm_x(outer, cfg.gamma);
        d.norm_y = norm_y(outer, cfg.gamma);
        d.min_boundary_modulus = r.min_modulus;
        d.outer_tail_fraction = r.tail_fraction;
        d.working_grid = r.grid;
        e.diagnostics.push_back(d);

        e.terms.push_back({a, std::move(r.inner)});
        e.shifts.push_back(alpha);
        e.remainder = outer;
        e.remainder_samples = std::move(r.outer_samples);

        if (d.residual_l2 <= zero_level) {
            e.termination = Termination::zero_remainder;
            break;
        }
        if (d.residual_l2 <= cfg.residual_tol) {
            e.termination = Termination::residual_tol;
            break;
        }
        if (step == cfg.max_steps) {
            e.termination = Termination::max_steps;
            break;
        }
        current = std::move(next);
    }
    return e;
}

std::vector<BoundarySamples> term_samples(const UnwindingExpansion& e) {
    std::vector<BoundarySamples> out;
    out.reserve(e.terms.size());
    BoundarySamples product = BoundarySamples::constant(e.grid, 1.0);
    for (const auto& t : e.terms) {
        product = product * t.factor;
        out.push_back(t.coefficient * product);
    }
    return out;
}

BoundarySamples reconstruct(const UnwindingExpansion& e, std::size_t k, std::size_t m) {
    if (m != e.grid)
        throw LengthMismatchError("expansion lives on a grid of " + std::to_string(e.grid) +
                                  ", not " + std::to_string(m));
    if (k > e.terms.size())
        throw PreconditionError("expansion has only " + std::to_string(e.terms.size()) + " terms");
    BoundarySamples sum = BoundarySamples::constant(m, 0.0);
    BoundarySamples product = BoundarySamples::constant(m, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        product = product * e.terms[j].factor;
        sum = sum + e.terms[j].coefficient * product;
    }
    return sum;
}

BoundarySamples remainder_term(const UnwindingExpansion& e) {
    BoundarySamples product = BoundarySamples::constant(e.grid, 1.0);
    for (const auto& t : e.terms) product = product * t.factor;
    if (e.terms.empty()) return product;
    return product * (e.remainder_samples + (-e.terms.back().coefficient));
}

}  // namespace unwindr
