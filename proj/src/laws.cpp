#include "unwindr/laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "unwindr/analytic.hpp"
#include "unwindr/corpus.hpp"
#include "unwindr/error.hpp"
#include "unwindr/unwind.hpp"
#include "unwindr/weiss.hpp"

namespace unwindr {
namespace {

double boundary_h1_energy(const SpectralSignal& f) {
    double acc = 0.0;
    for (std::size_t n = 1; n < f.size(); ++n) {
        const auto k = static_cast<double>(n);
        acc += k * k * std::norm(f[n]);
    }
    return kTwoPi * acc;
}

PolynomialFactorization factor(const SpectralSignal& f,
                               OuterNormalization norm = OuterNormalization::canonical) {
    FactorOptions opts;
    opts.normalization = norm;
    return factor_polynomial(f.coeffs(), opts);
}

}  // namespace

SpectralSignal divide_by_flip_factor(const SpectralSignal& g, cplx alpha) {
    if (!(std::abs(alpha) < 1.0)) throw PreconditionError("flip point must lie in the disk");
    const cplx ca = std::conj(alpha);
    const double r2 = std::norm(alpha);
    std::vector<cplx> q;
    q.reserve(g.size() + 64);
    cplx prev{};
    double energy = 0.0;
    constexpr std::size_t kMaxExtra = 1 << 16;
    for (std::size_t n = 0;; ++n) {
        prev = g[n] + ca * prev;
        q.push_back(prev);
        energy += std::norm(prev);
        if (n + 1 < g.size()) continue;
        // Beyond the support of g the series is geometric with ratio conj(a).
        const double tail = r2 < 1.0 ? std::norm(prev) * r2 / (1.0 - r2) : 0.0;
        if (tail <= 1e-12 * energy || energy == 0.0) break;
        if (n > g.size() + kMaxExtra)
            throw TruncationError("geometric-series division did not converge");
    }
    return SpectralSignal(std::move(q));
}

Theorem1Report check_theorem1(const SpectralSignal& f, const GammaWeights& g,
                              std::optional<cplx> alpha) {
    const auto fac = factor(f);
    Theorem1Report r;
    r.norm_f = norm_x(f, g);
    r.norm_g = norm_x(fac.outer, g);
    r.norm_drop = r.norm_f - r.norm_g;
    r.gain_lhs = r.norm_f * r.norm_f - r.norm_g * r.norm_g;

    if (alpha) {
        auto nearest = std::min_element(fac.inside_roots.begin(), fac.inside_roots.end(),
                                        [&](cplx a, cplx b) { return std::abs(a - *alpha) < std::abs(b - *alpha); });
        if (nearest == fac.inside_roots.end() || std::abs(*nearest - *alpha) > 1e-6 * (1.0 + std::abs(*alpha)))
            throw PreconditionError("supplied point is not a disk root of F");
        r.alpha = *alpha;
    } else if (!fac.inside_roots.empty()) {
        r.alpha = *std::min_element(fac.inside_roots.begin(), fac.inside_roots.end(),
                                    [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    }
    if (r.alpha) {
        const double y = norm_y(divide_by_flip_factor(fac.outer, *r.alpha), g);
        r.gain_rhs = (1.0 - std::norm(*r.alpha)) * y * y;
    }
    return r;
}

double poisson_weighted_energy(const BoundarySamples& g, std::span<const cplx> roots) {
    const std::size_t m = g.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const cplx z = std::polar(1.0, g.theta(k));
        double kernel = 0.0;
        for (const auto& a : roots) kernel += (1.0 - std::norm(a)) / std::norm(z - a);
        acc += std::norm(g[k]) * kernel;
    }
    return acc * kTwoPi / static_cast<double>(m);
}

std::size_t poisson_grid(std::span<const cplx> roots, std::size_t degree) {
    double rmax = 0.0;
    for (const auto& a : roots) rmax = std::max(rmax, std::abs(a));
    // Kernel coefficients decay like |a|^n; 40 / (1 - |a|) modes reach rounding.
    const double modes = 40.0 / std::max(1.0 - rmax, 1e-6);
    const auto need = static_cast<std::size_t>(std::min(modes, double(1 << 18)));
    return next_power_of_two(std::max({std::size_t{1024}, 16 * degree, need}));
}

Theorem2Report check_theorem2(const SpectralSignal& f, std::size_t grid) {
    const auto fac = factor(f);
    const std::size_t m = grid ? grid : poisson_grid(fac.inside_roots, f.size());
    Theorem2Report r;
    r.energy_f = boundary_h1_energy(f);
    r.energy_g = boundary_h1_energy(fac.outer);
    r.poisson_term = poisson_weighted_energy(fac.outer_samples(m), fac.inside_roots);
    r.lhs = r.energy_g + r.poisson_term;
    r.rhs = r.energy_f;
    return r;
}

CarlesonReport check_carleson(const SpectralSignal& f, std::size_t grid) {
    const auto fac = factor(f);
    const std::size_t m = grid ? grid : poisson_grid(fac.inside_roots, f.size());
    CarlesonReport r;
    r.disk_energy_f = dirichlet_energy(f);
    r.disk_energy_g = dirichlet_energy(fac.outer);
    r.poisson_term = 0.5 * poisson_weighted_energy(fac.outer_samples(m), fac.inside_roots);
    return r;
}

StabilityReport check_stability(std::span<const cplx> roots_out, std::span<const cplx> roots_in_1,
                                std::span<const cplx> roots_in_2, std::size_t grid) {
    if (roots_in_1.size() != roots_in_2.size())
        throw CountMismatchError("inside root counts differ: " + std::to_string(roots_in_1.size()) +
                                 " vs " + std::to_string(roots_in_2.size()));
    for (const auto& r : roots_out)
        if (!(std::abs(r) > 1.0)) throw PreconditionError("outside roots must satisfy |r| > 1");
    for (auto set : {roots_in_1, roots_in_2})
        for (const auto& r : set)
            if (!(std::abs(r) < 1.0)) throw PreconditionError("inside roots must satisfy |r| < 1");

    auto build = [&](std::span<const cplx> inside) {
        std::vector<cplx> all(roots_out.begin(), roots_out.end());
        all.insert(all.end(), inside.begin(), inside.end());
        return SpectralSignal(polynomial_from_roots(all));
    };
    const auto f1 = build(roots_in_1);
    const auto f2 = build(roots_in_2);
    const auto g1 = factor(f1, OuterNormalization::root_inversion).outer;
    const auto g2 = factor(f2, OuterNormalization::root_inversion).outer;

    const auto sf1 = to_samples(f1, grid), sf2 = to_samples(f2, grid);
    const auto sg1 = to_samples(g1, grid), sg2 = to_samples(g2, grid);
    StabilityReport r;
    for (std::size_t k = 0; k < grid; ++k) {
        r.max_deviation = std::max(r.max_deviation,
                                   std::abs(std::abs(sg1[k] - sg2[k]) - std::abs(sf1[k] - sf2[k])));
        r.scale = std::max(r.scale, std::abs(sf1[k]) + std::abs(sf2[k]));
    }
    return r;
}

double tail_energy_slack(const SpectralSignal& f, const SpectralSignal& g) {
    const std::size_t n = std::max(f.size(), g.size());
    double tf = 0.0, tg = 0.0, worst = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        tf += std::norm(f[k]);
        tg += std::norm(g[k]);
        worst = std::min(worst, tf - tg);
    }
    return worst;
}

bool check_tail_energy(const SpectralSignal& f, const SpectralSignal& g, double slack) {
    return tail_energy_slack(f, g) >= -slack;
}

// --- verify battery ---------------------------------------------------------

namespace {

struct Accumulator {
    LawResult result;
    void observe(double error) {
        ++result.cases;
        result.worst = std::max(result.worst, error);
        if (!(error <= result.tolerance)) result.passed = false;
    }
};

Accumulator make(std::string name, double tolerance) {
    Accumulator a;
    a.result.name = std::move(name);
    a.result.tolerance = tolerance;
    return a;
}

double max_diff(const BoundarySamples& a, const BoundarySamples& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

LawResult law_oracle(corpus::Rng& rng) {
    auto acc = make("weiss_matches_root_oracle", 1e-8);
    for (int i = 0; i < 20; ++i) {
        const auto degree = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        const auto f = corpus::monic_from_roots(corpus::random_roots(rng, {.degree = degree}));
        const auto s = to_samples(f, 1024);
        const auto w = weiss_factorize(s);
        const auto p = factor_polynomial(f.coeffs());
        const double scale = std::max(1.0, s.max_abs());
        acc.observe(std::max(max_diff(w.inner, p.inner_samples(1024)),
                             max_diff(w.outer_samples, p.outer_samples(1024)) / scale));
    }
    return acc.result;
}

LawResult law_exactness(corpus::Rng& rng) {
    auto acc = make("polynomial_exactness", 1e-7);
    auto run = [&](const SpectralSignal& f, std::size_t degree) {
        UnwindConfig cfg;
        cfg.grid = 1024;
        cfg.max_steps = std::max<std::size_t>(degree, 1);
        const auto e = unwind(f, cfg);
        acc.observe(e.diagnostics.back().residual_l2);
    };
    run(corpus::reference_cubic(), 3);
    for (int i = 0; i < 10; ++i) {
        const auto degree = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        run(corpus::monic_from_roots(corpus::random_roots(rng, {.degree = degree})), degree);
    }
    return acc.result;
}

std::vector<LawResult> law_monotonicity(corpus::Rng& rng) {
    auto mono = make("norm_monotonicity", 1e-9);
    auto tele = make("telescoping_bound", 1e-8);
    const std::array weights{GammaWeights::dirichlet(), GammaWeights::h1(), GammaWeights::sobolev(0.25),
                             GammaWeights::explicit_values(corpus::random_gamma_table(rng, 64))};
    for (int i = 0; i < 10; ++i) {
        const auto f = corpus::random_trig_polynomial(rng, 6);
        for (const auto& g : weights) {
            UnwindConfig cfg;
            cfg.grid = 1024;
            cfg.gamma = g;
            const auto e = unwind(f, cfg);
            double prev = e.input_norm_x, rise = 0.0, telescoped = 0.0;
            for (std::size_t k = 0; k < e.diagnostics.size(); ++k) {
                rise = std::max(rise, e.diagnostics[k].norm_x - prev);
                prev = e.diagnostics[k].norm_x;
                if (k >= 1) telescoped += std::pow(e.diagnostics[k].norm_y, 2);
            }
            mono.observe(rise);
            tele.observe(std::max(0.0, telescoped - e.input_norm_x * e.input_norm_x));
        }
    }
    return {mono.result, tele.result};
}

LawResult law_theorem1(corpus::Rng& rng) {
    auto acc = make("contraction_with_gain", 1e-9);
    for (int i = 0; i < 20; ++i) {
        const auto f = corpus::monic_from_roots(corpus::random_roots(rng, {.degree = 6}));
        for (const auto& g : {GammaWeights::dirichlet(), GammaWeights::h1()}) {
            const auto r = check_theorem1(f, g);
            acc.observe(std::max(-r.norm_drop, r.gain_rhs - r.gain_lhs) / (1.0 + r.gain_lhs));
        }
    }
    return acc.result;
}

LawResult law_root_flip(corpus::Rng& rng) {
    auto acc = make("root_flip_identity", 1e-10);
    for (int i = 0; i < 100; ++i) {
        const auto f = corpus::random_trig_polynomial(rng, 12);
        const auto alpha = corpus::random_disk_points(rng, 1, 0.95).front();
        const auto g = GammaWeights::explicit_values(corpus::random_gamma_table(rng, 16));
        const auto r = root_flip_gain(f, alpha, g);
        acc.observe(std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs)));
    }
    return acc.result;
}

std::vector<cplx> disk_rich_roots(corpus::Rng& rng) {
    const auto inside = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto outside = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    auto roots = corpus::random_disk_points(rng, inside, 0.8);
    const auto out = corpus::random_annulus_points(rng, outside, 1.25, 2.0);
    roots.insert(roots.end(), out.begin(), out.end());
    return roots;
}

LawResult law_carleson(corpus::Rng& rng) {
    auto acc = make("carleson_identity", 1e-6);
    for (int i = 0; i < 20; ++i) {
        const auto r = check_carleson(corpus::monic_from_roots(disk_rich_roots(rng)));
        acc.observe(std::abs(r.defect()) / (1.0 + r.disk_energy_f));
    }
    return acc.result;
}

LawResult law_theorem2(corpus::Rng& rng) {
    auto acc = make("h1_decrease_poisson_gain", 1e-8);
    for (int i = 0; i < 20; ++i) {
        const auto r = check_theorem2(corpus::monic_from_roots(disk_rich_roots(rng)));
        acc.observe(std::max(0.0, -r.slack()));
    }
    return acc.result;
}

LawResult law_stability(corpus::Rng& rng) {
    auto acc = make("pointwise_stability", 1e-10);
    for (int i = 0; i < 20; ++i) {
        const auto inside = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const auto outside = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const auto out = corpus::random_annulus_points(rng, outside, 1.25, 2.0);
        const auto in1 = corpus::random_disk_points(rng, inside, 0.8);
        auto in2 = in1;
        for (auto& z : in2) z += corpus::random_disk_points(rng, 1, 0.05).front();
        const auto r = check_stability(out, in1, in2, 1024);
        acc.observe(r.max_deviation / r.scale);
    }
    return acc.result;
}

LawResult law_orthogonality() {
    auto acc = make("term_orthogonality", 1e-8);
    UnwindConfig cfg;
    cfg.max_steps = 10;
    const auto e = unwind(corpus::gaussian_chirp(1024, 10.0), cfg);
    auto terms = term_samples(e);
    terms.push_back(remainder_term(e));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const double norms = std::sqrt(std::abs(inner_product(terms[i], terms[i]) * inner_product(terms[j], terms[j])));
            acc.observe(std::abs(inner_product(terms[i], terms[j])) / norms);
        }
    }
    return acc.result;
}

LawResult law_area(corpus::Rng& rng) {
    auto acc = make("area_theorem", 1e-8);
    for (int i = 0; i < 20; ++i) {
        const auto degree = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        const auto f = corpus::monic_from_roots(corpus::random_roots(rng, {.degree = degree}));
        const double energy = dirichlet_energy(f);
        const double area = winding_area(to_samples(f, std::max<std::size_t>(256, next_power_of_two(16 * degree))));
        acc.observe(std::abs(energy - area) / std::max(energy, 1e-300));
    }
    return acc.result;
}

LawResult law_phase(corpus::Rng& rng) {
    auto acc = make("instantaneous_frequency", 1e-10);
    for (int i = 0; i < 20; ++i) {
        const auto m = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
        const auto n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        const BlaschkeProduct b(m, corpus::random_disk_points(rng, n, 0.9));
        const auto phi = phase_derivative(b, poisson_grid(b.roots(), b.degree()));
        double mean = 0.0;
        bool above_floor = true;
        for (double v : phi) {
            mean += v;
            above_floor = above_floor && v > static_cast<double>(m);
        }
        mean /= static_cast<double>(phi.size());
        // A value at or below m is a hard failure regardless of the mean.
        acc.observe(above_floor ? std::abs(mean - static_cast<double>(b.degree())) : 1.0);
    }
    return acc.result;
}

LawResult law_tail_energy(corpus::Rng& rng) {
    auto acc = make("tail_energy_shift", 1e-10);
    for (int i = 0; i < 20; ++i) {
        const auto f = corpus::monic_from_roots(corpus::random_roots(rng, {.degree = 8}));
        const auto g = factor_polynomial(f.coeffs()).outer;
        acc.observe(std::max(0.0, -tail_energy_slack(f, g)) / (1.0 + f.energy()));
    }
    return acc.result;
}

LawResult law_analytic(corpus::Rng& rng) {
    auto acc = make("analytic_signal", 1e-12);
    constexpr std::size_t m = 256;
    std::vector<double> c(m), s(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = kTwoPi * static_cast<double>(k) / m;
        c[k] = std::cos(t);
        s[k] = std::sin(t);
    }
    const auto fc = analytic_signal(c), fs = analytic_signal(s);
    double err = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const cplx z = std::polar(1.0, kTwoPi * static_cast<double>(k) / m);
        err = std::max({err, std::abs(fc[k] - z), std::abs(fs[k] - cplx(0, -1) * z)});
    }
    acc.observe(err);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        std::vector<double> u(m);
        for (auto& v : u) v = uni(rng);
        const auto hh = hilbert_transform(hilbert_transform(u));
        double mean = 0.0;
        for (double v : u) mean += v / m;
        // Nyquist is outside the range of H; compare on its complement.
        double nyquist = 0.0;
        for (std::size_t k = 0; k < m; ++k) nyquist += u[k] * (k % 2 ? -1.0 : 1.0) / m;
        double e2 = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            e2 = std::max(e2, std::abs(hh[k] + (u[k] - mean - nyquist * (k % 2 ? -1.0 : 1.0))));
        acc.observe(e2);
    }
    return acc.result;
}

using LawFn = std::function<std::vector<LawResult>(corpus::Rng&)>;

template <class Fn>
LawFn single(Fn fn) {
    return [fn](corpus::Rng& rng) { return std::vector<LawResult>{fn(rng)}; };
}

const std::vector<std::pair<std::string_view, LawFn>>& registry() {
    static const std::vector<std::pair<std::string_view, LawFn>> laws{
        {"oracle", single(law_oracle)},
        {"exactness", single(law_exactness)},
        {"monotonicity", law_monotonicity},
        {"theorem1", single(law_theorem1)},
        {"rootflip", single(law_root_flip)},
        {"carleson", single(law_carleson)},
        {"theorem2", single(law_theorem2)},
        {"stability", single(law_stability)},
        {"orthogonality", single([](corpus::Rng&) { return law_orthogonality(); })},
        {"area", single(law_area)},
        {"phase", single(law_phase)},
        {"tail", single(law_tail_energy)},
        {"analytic", single(law_analytic)},
    };
    return laws;
}

// FNV-1a, so per-law seeds do not depend on the standard library.
std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::vector<std::string_view> law_suite_names() {
    std::vector<std::string_view> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<LawResult> run_law_suite(std::string_view suite, std::uint64_t seed) {
    std::vector<LawResult> out;
    bool matched = false;
    for (const auto& [name, fn] : registry()) {
        if (suite != "all" && suite != name) continue;
        matched = true;
        // Each law gets its own stream so results do not depend on which
        // other laws were selected.
        corpus::Rng rng(seed ^ stable_hash(name));
        for (auto& r : fn(rng)) out.push_back(std::move(r));
    }
    if (!matched) throw PreconditionError("unknown law suite '" + std::string(suite) + "'");
    return out;
}

}  // namespace unwindr
