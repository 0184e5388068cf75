#include "unwindr/weiss.hpp"

#include <cmath>
#include <sstream>

#include "unwindr/analytic.hpp"
#include "unwindr/error.hpp"

namespace unwindr {
namespace {

double negative_fraction(const BoundarySamples& s) {
    const auto bins = two_sided_spectrum(s);
    double total = 0.0, negative = 0.0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const double e = std::norm(bins[k]);
        total += e;
        if (2 * k >= bins.size() && k > 0) negative += e;
    }
    return total > 0.0 ? negative / total : 0.0;
}

struct ModulusRange {
    double min = 0.0;
    double max = 0.0;
    std::size_t argmin = 0;
};

ModulusRange modulus_range(const BoundarySamples& s) {
    ModulusRange r;
    r.min = std::abs(s[0]);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double a = std::abs(s[k]);
        if (a < r.min) {
            r.min = a;
            r.argmin = k;
        }
        r.max = std::max(r.max, a);
    }
    return r;
}

bool below_floor(const ModulusRange& r, double floor) { return !(r.min > floor * r.max); }

}  // namespace

WeissFactorization weiss_factorize(const BoundarySamples& s, const WeissOptions& opts) {
    const std::size_t m = s.size();
    WeissFactorization out;

    const auto range = modulus_range(s);
    out.min_modulus = range.min;
    out.max_modulus = range.max;
    if (below_floor(range, opts.modulus_floor)) {
        std::ostringstream msg;
        msg << "min |s| = " << range.min << " at theta = " << s.theta(range.argmin)
            << " is below " << opts.modulus_floor << " * max |s|; try a constant offset or a "
            << "disk-point shift";
        throw NearZeroModulusError(msg.str(), range.min, s.theta(range.argmin));
    }

    if (opts.analytic_tol < 1.0) {
        out.input_negative_fraction = negative_fraction(s);
        if (out.input_negative_fraction > opts.analytic_tol)
            throw NonAnalyticInputError("input negative-frequency energy fraction " +
                                        std::to_string(out.input_negative_fraction) +
                                        " exceeds tolerance");
    }

    std::vector<double> log_modulus(m);
    for (std::size_t k = 0; k < m; ++k) log_modulus[k] = std::log(std::abs(s[k]));
    const auto h = analytic_signal(log_modulus);

    std::vector<cplx> g(m), b(m);
    for (std::size_t k = 0; k < m; ++k) {
        g[k] = std::exp(h[k]);
        b[k] = s[k] / g[k];
    }
    out.outer_samples = BoundarySamples(std::move(g));
    out.inner = BoundarySamples(std::move(b));

    const std::size_t n = opts.spectrum_length ? opts.spectrum_length : std::max<std::size_t>(m / 8, 1);
    auto conv = to_spectrum(out.outer_samples, std::min(n, m), 1.0);
    out.outer = std::move(conv.signal);
    out.outer_tail_fraction = conv.tail_fraction + conv.negative_fraction;
    return out;
}

cplx holomorphic_extension(const BoundarySamples& s, cplx z) {
    return holomorphic_project(s).evaluate(z);
}

StabilizedFactorization stabilized_factorize(const BoundarySamples& s, const Stabilizer& strategy,
                                             const WeissOptions& opts) {
    StabilizedFactorization out;
    BoundarySamples perturbed;
    if (const auto* c = std::get_if<ConstantOffset>(&strategy)) {
        out.perturbation = c->c;
        out.strategy = "constant";
    } else {
        const auto& shift = std::get<DiskShift>(strategy);
        if (!(std::abs(shift.alpha) < 1.0))
            throw PreconditionError("shift point must lie in the open disk");
        out.perturbation = -holomorphic_extension(s, shift.alpha);
        out.strategy = "shift";
    }
    perturbed = s + out.perturbation;

    const auto range = modulus_range(perturbed);
    if (below_floor(range, opts.modulus_floor)) {
        std::ostringstream msg;
        msg << out.strategy << " stabilizer left min |s| = " << range.min << " at theta = "
            << perturbed.theta(range.argmin);
        throw StillDegenerateError(msg.str(), range.min);
    }
    out.factorization = weiss_factorize(perturbed, opts);
    return out;
}

DenoiseResult denoise(std::span<const double> u, int rounds, double modulus_floor) {
    if (rounds < 1) throw PreconditionError("denoise needs at least one round");
    DenoiseResult out;
    BoundarySamples f = analytic_signal(u);
    std::vector<double> phase_real(f.size());
    for (int r = 0; r < rounds; ++r) {
        const auto range = modulus_range(f);
        if (below_floor(range, modulus_floor))
            throw NearZeroModulusError("complexified signal vanishes at theta = " +
                                           std::to_string(f.theta(range.argmin)),
                                       range.min, f.theta(range.argmin));
        for (std::size_t k = 0; k < f.size(); ++k) phase_real[k] = (f[k] / std::abs(f[k])).real();
        f = analytic_signal(phase_real);
        double dev = 0.0;
        for (const auto& v : f.values()) dev = std::max(dev, std::abs(std::abs(v) - 1.0));
        out.modulus_deviation.push_back(dev);
    }
    out.output = std::move(f);
    return out;
}

}  // namespace unwindr
