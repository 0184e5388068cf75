#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unwindr/blaschke.hpp"
#include "unwindr/corpus.hpp"
#include "unwindr/error.hpp"
#include "unwindr/laws.hpp"

using namespace unwindr;
using doctest::Approx;

TEST_CASE("theorem 1 with a zero at the origin: the gain is the L2 energy of G") {
    // F = z H with H = 2 + z/2 outer.
    const SpectralSignal f({0.0, 2.0, 0.5});
    const auto r = check_theorem1(f, GammaWeights::dirichlet(), cplx{0.0});
    CHECK(r.gain_rhs == Approx(4.25).epsilon(1e-12));
    CHECK(r.gain_lhs == Approx(r.gain_rhs).epsilon(1e-12));
    CHECK(r.holds());
}

TEST_CASE("theorem 1 on the cubic with H1 weights") {
    const auto r = check_theorem1(corpus::reference_cubic(), GammaWeights::h1());
    CHECK(r.norm_drop >= -1e-9);
    CHECK(r.gain_lhs - r.gain_rhs >= -1e-9);
}

TEST_CASE("theorem 1 without disk roots") {
    const auto r = check_theorem1(SpectralSignal({-2.0, 1.0}), GammaWeights::dirichlet());
    CHECK(std::abs(r.norm_drop) < 1e-12);
    CHECK(!r.alpha.has_value());
    CHECK_THROWS_AS(check_theorem1(corpus::reference_cubic(), GammaWeights::h1(), cplx{0.5}), PreconditionError);
}

TEST_CASE("division by the flip factor inverts multiplication") {
    const SpectralSignal g({1.0, -0.5, 0.25});
    const cplx a{0.3, 0.4};
    const auto q = divide_by_flip_factor(g, a);
    // (1 - conj(a) z) q == g, coefficientwise.
    for (std::size_t n = 0; n < q.size(); ++n) {
        const cplx back = q[n] - (n ? std::conj(a) * q[n - 1] : 0.0);
        CHECK(std::abs(back - g[n]) < 1e-12);
    }
}

TEST_CASE("theorem 2 equality for F = z") {
    const auto r = check_theorem2(SpectralSignal::monomial(1));
    CHECK(r.rhs == Approx(2.0 * oracle::pi).epsilon(1e-12));
    CHECK(std::abs(r.lhs - r.rhs) < 1e-12);
    CHECK(std::abs(r.energy_g) < 1e-12);
}

TEST_CASE("theorem 2 for z - 1/2 against quadrature") {
    const auto r = check_theorem2(SpectralSignal({-0.5, 1.0}));
    // G = 1 - z/2: int |G'|^2 = 2 pi / 4; |G|^2 P = 1 - 1/4 on the circle.
    CHECK(r.energy_g == Approx(oracle::pi / 2.0).epsilon(1e-12));
    CHECK(r.poisson_term == Approx(2.0 * oracle::pi * 0.75).epsilon(1e-10));
    CHECK(r.holds());
    CHECK(r.slack() >= -1e-12);
}

TEST_CASE("theorem 2 on the cubic") {
    CHECK(check_theorem2(corpus::reference_cubic()).holds(1e-8));
}

TEST_CASE("carleson closed forms") {
    for (const cplx a : {cplx{0.5}, cplx{0.1, -0.7}, cplx{-0.9, 0.05}}) {
        const auto r = check_carleson(SpectralSignal({-a, 1.0}));
        CHECK(r.disk_energy_f == Approx(oracle::pi).epsilon(1e-12));
        CHECK(r.disk_energy_g == Approx(oracle::pi * std::norm(a)).epsilon(1e-12));
        CHECK(r.poisson_term == Approx(oracle::pi * (1.0 - std::norm(a))).epsilon(1e-12));
    }
    const auto z = check_carleson(SpectralSignal::monomial(1));
    CHECK(std::abs(z.disk_energy_g) < 1e-14);
    CHECK(z.poisson_term == Approx(oracle::pi).epsilon(1e-12));
}

TEST_CASE("carleson with three disk roots") {
    std::mt19937_64 rng(17);
    auto roots = corpus::random_disk_points(rng, 3, 0.8);
    for (auto r : corpus::random_annulus_points(rng, 3, 1.25, 2.0)) roots.push_back(r);
    CHECK(check_carleson(corpus::monic_from_roots(roots)).holds(1e-6));
}

TEST_CASE("stability closed forms") {
    const std::vector<cplx> out{2.0};
    const std::vector<cplx> in{0.3};
    CHECK(check_stability(out, in, in, 512).max_deviation == 0.0);
    const std::vector<cplx> in2{0.31};
    CHECK(check_stability(out, in, in2, 512).max_deviation <= 1e-12);
    CHECK_THROWS_AS(check_stability(out, in, std::vector<cplx>{0.3, 0.2}, 512), CountMismatchError);
}

TEST_CASE("stability with three perturbed inside roots") {
    std::mt19937_64 rng(23);
    const auto in1 = corpus::random_disk_points(rng, 3, 0.8);
    auto in2 = in1;
    for (auto& r : in2) r += 0.02 * corpus::random_disk_points(rng, 1, 1.0).front();
    const auto out = corpus::random_annulus_points(rng, 2, 1.25, 2.0);
    const auto r = check_stability(out, in1, in2, 1024);
    CHECK(r.max_deviation <= 1e-10 * r.scale);
}

TEST_CASE("tail energy") {
    const SpectralSignal f({-0.5, 1.0});
    const SpectralSignal g({1.0, -0.5});
    CHECK(check_tail_energy(f, g));
    CHECK(tail_energy_slack(f, g) == Approx(0.0).epsilon(1e-15));
    CHECK(check_tail_energy(f, f));
    CHECK(!check_tail_energy(g, SpectralSignal({0.0, 2.0})));
}

TEST_CASE("the law suite passes and is deterministic") {
    const auto a = run_law_suite("all", 7);
    const auto b = run_law_suite("all", 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK_MESSAGE(a[i].passed, a[i].name);
        CHECK(a[i].worst == b[i].worst);
    }
    CHECK(run_law_suite("carleson", 1).size() == 1);
    CHECK_THROWS_AS(run_law_suite("nonsense", 1), PreconditionError);
}
