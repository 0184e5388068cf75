#include "unwindr/corpus.hpp"

#include <cmath>

#include "unwindr/analytic.hpp"
#include "unwindr/blaschke.hpp"

namespace unwindr::corpus {
namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::vector<cplx> random_roots(Rng& rng, const RootSpec& spec) {
    std::vector<cplx> roots;
    roots.reserve(spec.degree);
    while (roots.size() < spec.degree) {
        const bool inside = uniform(rng, 0.0, 1.0) < 0.5;
        const double r = inside ? uniform(rng, 0.0, spec.inner_max)
                                : uniform(rng, spec.outer_min, spec.outer_max);
        roots.push_back(std::polar(r, uniform(rng, 0.0, kTwoPi)));
    }
    return roots;
}

std::vector<cplx> random_disk_points(Rng& rng, std::size_t n, double radius) {
    std::vector<cplx> out(n);
    for (auto& z : out) z = std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, kTwoPi));
    return out;
}

std::vector<cplx> random_annulus_points(Rng& rng, std::size_t n, double rmin, double rmax) {
    std::vector<cplx> out(n);
    for (auto& z : out) z = std::polar(uniform(rng, rmin, rmax), uniform(rng, 0.0, kTwoPi));
    return out;
}

SpectralSignal monic_from_roots(const std::vector<cplx>& roots) {
    return SpectralSignal(polynomial_from_roots(roots));
}

SpectralSignal random_trig_polynomial(Rng& rng, std::size_t degree) {
    std::normal_distribution<double> normal;
    std::vector<cplx> c(degree + 1);
    for (std::size_t n = 0; n <= degree; ++n)
        c[n] = cplx(normal(rng), normal(rng)) / static_cast<double>(1 + n);
    return SpectralSignal(std::move(c));
}

SpectralSignal reference_cubic() {
    const std::vector<cplx> roots{cplx(-0.3, -1.0 / 3.0), cplx(0.2, 0.0), cplx(1.5, 0.5)};
    return monic_from_roots(roots);
}

BoundarySamples gaussian_chirp_raw(std::size_t m, double carrier, double width) {
    std::vector<cplx> v(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        const double d = t - std::numbers::pi;
        v[k] = std::exp(-d * d / width) * std::polar(1.0, carrier * t);
    }
    return BoundarySamples(std::move(v));
}

SpectralSignal gaussian_chirp(std::size_t m, double carrier, double width) {
    return holomorphic_project(gaussian_chirp_raw(m, carrier, width));
}

std::vector<double> multiplicative_noise(Rng& rng, std::size_t m) {
    std::normal_distribution<double> normal;
    std::vector<double> x(50), y(50);
    for (std::size_t n = 0; n < 50; ++n) {
        x[n] = normal(rng);
        y[n] = normal(rng);
    }
    std::vector<double> u(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        double noise = 0.0;
        for (std::size_t n = 1; n <= 50; ++n) {
            const double nt = static_cast<double>(n) * t;
            noise += (x[n - 1] * std::cos(nt) + y[n - 1] * std::sin(nt)) / std::sqrt(static_cast<double>(n));
        }
        u[k] = std::cos(2.0 * t) * noise;
    }
    return u;
}

std::vector<double> random_gamma_table(Rng& rng, std::size_t length) {
    std::vector<double> g(std::max<std::size_t>(length, 1));
    for (std::size_t n = 1; n < g.size(); ++n) g[n] = g[n - 1] + uniform(rng, 0.0, 3.0);
    return g;
}

}  // namespace unwindr::corpus
